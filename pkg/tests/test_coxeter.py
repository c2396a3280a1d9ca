import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rahecke.coxeter import CoxeterDiagram, DiagramError, parse_diagram
from rahecke.enumeration import ball


@pytest.fixture(scope="module")
def diagram_a():
    return CoxeterDiagram(["a", "b", "c"], [["a", "b"]])


@pytest.fixture(scope="module")
def dinfty():
    return CoxeterDiagram(["a", "b"])


@pytest.fixture(scope="module")
def path3():
    # a < b < c with ab and bc commuting; exhibits the nonlocal ShortLex moves
    return CoxeterDiagram(["a", "b", "c"], [["a", "b"], ["b", "c"]])


def test_parse_diagram_roundtrip():
    d = parse_diagram('{"generators": ["a", "b", "c"], "commuting": [["a", "b"]]}')
    assert d.generators == ("a", "b", "c")
    assert d.commutes("a", "b") and d.commutes("b", "a")
    assert not d.commutes("a", "c")


def test_parse_diagram_errors():
    with pytest.raises(DiagramError):
        parse_diagram({"generators": ["a", "a"]})
    with pytest.raises(DiagramError):
        parse_diagram({"generators": ["a"], "commuting": [["a", "a"]]})
    with pytest.raises(DiagramError):
        parse_diagram({"generators": ["a", "b"], "commuting": [["a", "x"]]})
    with pytest.raises(DiagramError):
        parse_diagram({"generators": []})
    with pytest.raises(DiagramError):
        parse_diagram("not json")


def test_normal_form_examples(diagram_a):
    d = diagram_a
    assert d.normal_form("aa") == ()
    assert d.normal_form("ba") == ("a", "b")
    assert d.normal_form("bacb") == ("a", "b", "c", "b")


def test_normal_form_nonlocal_move(path3):
    # c commutes with b but not a; b commutes with both: the canonical word
    # of cab requires moving b across two positions.
    assert path3.normal_form("cab") == ("b", "c", "a")


def test_multiply_examples(diagram_a):
    d = diagram_a
    assert d.multiply("a", "ab") == ("b",)
    assert d.multiply("c", "ab") == ("c", "a", "b")
    assert d.multiply("ab", "") == ("a", "b")


def test_starts_with(diagram_a):
    d = diagram_a
    assert d.starts_with("", "ab")
    assert d.starts_with("b", "ab")
    assert not d.starts_with("c", "ab")
    assert d.starts_with("ab", "ab")


def test_join_meet_examples(diagram_a):
    d = diagram_a
    assert d.join("a", "b") == ("a", "b")
    assert d.join("a", "c") is None
    assert d.meet("ab", "ab") == ("a", "b")
    assert d.join("ab", "ab") == ("a", "b")
    assert d.meet("ab", "ac") == ("a",)


def test_centralizes(diagram_a):
    d = diagram_a
    assert d.centralizes("a", "a")
    assert d.centralizes("a", "b")
    assert not d.centralizes("a", "c")


def test_irreducible_components(diagram_a):
    assert diagram_a.is_irreducible()
    assert CoxeterDiagram(["a"]).is_irreducible()
    square = CoxeterDiagram(["a", "b", "c", "d"],
                            [["a", "b"], ["a", "c"], ["a", "d"],
                             ["b", "c"], ["b", "d"], ["c", "d"]])
    assert not square.is_irreducible()
    comps = square.components()
    assert sorted(c.generators for c in comps) == [("a",), ("b",), ("c",), ("d",)]


def test_components_exhaustive_small():
    # against a brute-force connectivity check on all diagrams with 4 generators
    from itertools import combinations
    names = ["a", "b", "c", "d"]
    pairs = list(combinations(names, 2))
    for mask in range(1 << len(pairs)):
        commuting = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        d = CoxeterDiagram(names, commuting)
        infty = set(pairs) - set(commuting)
        # brute force union-find over infinity edges
        parent = {x: x for x in names}

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for (s, t) in infty:
            parent[find(s)] = find(t)
        classes = {tuple(sorted(y for y in names if find(y) == find(x))) for x in names}
        got = {tuple(sorted(c.generators)) for c in d.components()}
        assert got == classes


def test_covering_closed_path(diagram_a, dinfty):
    assert diagram_a.covering_closed_path() == ("a", "c", "b", "c")
    assert dinfty.covering_closed_path() == ("a", "b")
    assert CoxeterDiagram(["a", "b"], [["a", "b"]]).covering_closed_path() is None
    assert CoxeterDiagram(["a"]).covering_closed_path() is None


def test_covering_path_properties():
    pent = CoxeterDiagram(list("abcde"),
                          [["a", "b"], ["b", "c"], ["c", "d"], ["d", "e"], ["e", "a"]])
    for d in (pent, CoxeterDiagram(["a", "b", "c"], [["a", "b"]])):
        g = d.covering_closed_path()
        assert set(g) == set(d.generators)
        for x, y in zip(g, g[1:]):
            assert not d.commutes(x, y) and x != y
        assert not d.commutes(g[0], g[-1]) and g[0] != g[-1]
        # power growth |g^n| = n |g|
        for n in range(1, 5):
            assert len(d.normal_form(g * n)) == n * len(g)


def test_element_serialization(diagram_a):
    d = diagram_a
    assert d.format_element(()) == "e"
    assert d.parse_element("e") == ()
    assert d.parse_element("1") == ()
    assert d.format_element(("a", "b")) == "ab"
    assert d.parse_element("bacb") == ("a", "b", "c", "b")
    withe = CoxeterDiagram(["d", "e"])
    assert withe.format_element(()) == "1"
    assert withe.parse_element("e") == ("e",)
    multi = CoxeterDiagram(["s1", "s2"])
    assert multi.format_element(("s1", "s2")) == "s1.s2"
    assert multi.parse_element("s1.s2.s1") == ("s1", "s2", "s1")


@st.composite
def word_and_diagram(draw):
    which = draw(st.integers(0, 2))
    if which == 0:
        d = CoxeterDiagram(["a", "b", "c"], [["a", "b"]])
    elif which == 1:
        d = CoxeterDiagram(["a", "b", "c"], [["a", "b"], ["b", "c"]])
    else:
        d = CoxeterDiagram(list("abcd"), [["a", "c"], ["b", "d"]])
    word = draw(st.lists(st.sampled_from(d.generators), max_size=12))
    return d, tuple(word)


@given(word_and_diagram())
@settings(max_examples=150, deadline=None)
def test_normal_form_idempotent_and_invariant(data):
    d, word = data
    nf = d.normal_form(word)
    assert d.normal_form(nf) == nf
    # invariance under an allowed adjacent swap
    lst = list(word)
    for i in range(len(lst) - 1):
        if d.commutes(lst[i], lst[i + 1]):
            swapped = lst[:i] + [lst[i + 1], lst[i]] + lst[i + 2:]
            assert d.normal_form(swapped) == nf
            break


@given(word_and_diagram(), word_and_diagram())
@settings(max_examples=100, deadline=None)
def test_length_inequality(data1, data2):
    d, v = data1
    _, w = data2
    w = tuple(x for x in w if x in d.generators)
    v, w = d.normal_form(v), d.normal_form(w)
    prod = d.multiply(d.inverse(v), w)
    assert len(prod) >= len(w) - len(v)
    assert (len(prod) == len(w) - len(v)) == d.starts_with(v, w)


def test_left_order_cancellation_theorem(diagram_a):
    """s <= v and s <= w imply (v <= w iff s v <= s w), over a radius-7 ball."""
    d = diagram_a
    b = ball(d, 7)
    elems = [b.words[v] for v in range(len(b))]
    for s in d.generators:
        below = [w for w in elems if d.starts_with((s,), w)]
        for v in below:
            sv = d.multiply((s,), v)
            for w in below:
                sw = d.multiply((s,), w)
                assert d.starts_with(v, w) == d.starts_with(sv, sw)


@pytest.mark.parametrize("gens,commuting,rad", [
    (["a", "b", "c"], [["a", "b"]], 6),
    (["a", "b", "c"], [["a", "b"], ["b", "c"]], 5),
    (["a", "b"], [], 6),
    (list("abcd"), [["a", "c"], ["b", "d"], ["a", "d"]], 4),
])
def test_join_against_brute_force(gens, commuting, rad):
    """join() against exhaustive upper-bound scans: any common upper bound of
    v, w (lengths <= rad) has length <= |v| + |w|, so a ball of radius 2*rad
    contains the full candidate set."""
    import numpy as np
    d = CoxeterDiagram(gens, commuting)
    small = ball(d, rad)
    pool = ball(d, 2 * rad)
    elems = [small.words[v] for v in range(len(small))]
    masks = {w: pool.prefix_mask(w) for w in elems}
    for v in elems:
        for w in elems:
            got = d.join(v, w)
            common = masks[v] & masks[w]
            if got is None:
                assert not common.any(), (v, w)
            else:
                # ball order is (length, ShortLex): the first common upper
                # bound is the length-lex least one
                first = int(np.argmax(common))
                assert common[first] and pool.words[first] == got
                # least: every upper bound of {v, w} lies above the join
                above = pool.prefix_mask(got)
                assert not (common & ~above).any()


def test_meet_is_greatest_lower_bound(diagram_a):
    d = diagram_a
    b = ball(d, 4)
    elems = [b.words[v] for v in range(len(b))]
    for v in elems:
        for w in elems:
            m = d.meet(v, w)
            assert d.starts_with(m, v) and d.starts_with(m, w)
            for x in elems:
                if d.starts_with(x, v) and d.starts_with(x, w):
                    assert d.starts_with(x, m)
