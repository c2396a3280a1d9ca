from fractions import Fraction

import numpy as np
import pytest

from rahecke.coxeter import CoxeterDiagram
from rahecke.enumeration import ball
from rahecke.hecke import (HeckeElement, MultiParameter,
                           central_projection_partial, char_value,
                           cliq_decomposition, flip_parameters,
                           parse_element_literal, rational_sqrt)


@pytest.fixture(scope="module")
def diagram_a():
    return CoxeterDiagram(["a", "b", "c"], [["a", "b"]])


@pytest.fixture(scope="module")
def params_quarter(diagram_a):
    return MultiParameter.exact_squares(diagram_a, {s: Fraction(1, 4) for s in "abc"})


def rand_element(params, b, rng, terms=3):
    out = HeckeElement.zero(params)
    for _ in range(terms):
        v = int(rng.integers(0, len(b)))
        out = out + Fraction(int(rng.integers(-5, 6)) or 1, int(rng.integers(1, 4))) \
            * HeckeElement.basis(params, b.words[v])
    return out


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(0)) == 0


def test_exact_mode_requires_squares(diagram_a):
    with pytest.raises(ValueError):
        MultiParameter.exact_squares(diagram_a, {s: Fraction(1, 2) for s in "abc"})
    p = MultiParameter.exact_squares(diagram_a, {s: Fraction(1, 4) for s in "abc"})
    assert p.p("a") == Fraction(-3, 2)
    f = MultiParameter.floating(diagram_a, {s: 0.5 for s in "abc"})
    assert not f.exact


def test_quadratic_relation(params_quarter):
    for s in "abc":
        ts = HeckeElement.basis(params_quarter, (s,))
        assert ts * ts == HeckeElement.one(params_quarter) + params_quarter.p(s) * ts


def test_product_examples(params_quarter, diagram_a):
    ta = HeckeElement.basis(params_quarter, "a")
    tab = HeckeElement.basis(params_quarter, "ab")
    tb = HeckeElement.basis(params_quarter, "b")
    assert tab * ta == tb + params_quarter.p("a") * tab
    assert HeckeElement.one(params_quarter) * tab == tab
    # product over a reduced word rebuilds the basis symbol
    tc = HeckeElement.basis(params_quarter, "c")
    assert ta * (tb * tc) == HeckeElement.basis(params_quarter, "abc")


def test_parameter_mismatch(diagram_a, params_quarter):
    other = MultiParameter.exact_squares(diagram_a, {s: Fraction(1, 9) for s in "abc"})
    with pytest.raises(ValueError):
        HeckeElement.basis(params_quarter, "a") * HeckeElement.basis(other, "a")


def test_adjoint(params_quarter, diagram_a):
    tab = HeckeElement.basis(params_quarter, "ab")
    assert tab.adjoint() == tab  # ab commuting: (ab)^-1 = ba = ab
    tac = HeckeElement.basis(params_quarter, "ac")
    assert tac.adjoint() == HeckeElement.basis(params_quarter, "ca")
    rng = np.random.default_rng(3)
    b = ball(diagram_a, 4)
    x = rand_element(params_quarter, b, rng)
    y = rand_element(params_quarter, b, rng)
    assert (x * y).adjoint() == y.adjoint() * x.adjoint()
    assert x.adjoint().adjoint() == x


def test_trace_and_inner(params_quarter, diagram_a):
    ta = HeckeElement.basis(params_quarter, "a")
    assert ta.trace() == 0
    assert HeckeElement.one(params_quarter).trace() == 1
    b = ball(diagram_a, 3)
    words = [b.words[v] for v in range(len(b))]
    for v in words[:6]:
        for w in words[:6]:
            val = HeckeElement.basis(params_quarter, v).inner(
                HeckeElement.basis(params_quarter, w))
            assert val == (1 if v == w else 0)


def test_trace_is_tracial_and_faithful(params_quarter, diagram_a):
    rng = np.random.default_rng(11)
    b = ball(diagram_a, 5)
    for _ in range(40):
        x = rand_element(params_quarter, b, rng)
        y = rand_element(params_quarter, b, rng)
        assert (x * y).trace() == (y * x).trace()
        if x.coeffs:
            assert x.inner(x) > 0
        assert x.inner(x) == x.norm2_sq()


def test_flip_parameters(params_quarter, diagram_a):
    eps = (-1, 1, -1)
    flipped = params_quarter.flipped(eps)
    assert flipped.q["a"] == 4 and flipped.q["b"] == Fraction(1, 4)
    # relation is preserved under the sign flip
    ta = HeckeElement.basis(params_quarter, "a")
    fa = flip_parameters(ta, eps)
    assert fa.coeffs == {("a",): -1}
    # the image satisfies the original relation: flip(T_a)^2 = 1 + p_a(q) flip(T_a),
    # which works out because p_a(1/q) = -p_a(q)
    assert fa * fa == HeckeElement.one(fa.params) + params_quarter.p("a") * fa
    assert flipped.p("a") == -params_quarter.p("a")
    rng = np.random.default_rng(5)
    b = ball(diagram_a, 4)
    for _ in range(25):
        x = rand_element(params_quarter, b, rng)
        y = rand_element(params_quarter, b, rng)
        assert flip_parameters(x * y, eps) == flip_parameters(x, eps) * flip_parameters(y, eps)
    # involution via the opposite flip
    x = rand_element(params_quarter, b, rng)
    assert flip_parameters(flip_parameters(x, eps), eps) == x


def test_char_values(params_quarter, diagram_a):
    ta = HeckeElement.basis(params_quarter, "a")
    assert char_value(params_quarter, (1, 1, 1), ta) == Fraction(1, 2)
    assert char_value(params_quarter, (-1, 1, 1), ta) == -2
    assert char_value(params_quarter, (1, 1, 1), HeckeElement.one(params_quarter)) == 1
    rng = np.random.default_rng(7)
    b = ball(diagram_a, 4)
    from rahecke.growth import all_sign_patterns
    for eps in all_sign_patterns(3):
        for _ in range(8):
            x = rand_element(params_quarter, b, rng)
            y = rand_element(params_quarter, b, rng)
            assert char_value(params_quarter, eps, x * y) == \
                char_value(params_quarter, eps, x) * char_value(params_quarter, eps, y)
        # chi_{q_eps} = chi_{q', +} after the flip
        x = rand_element(params_quarter, b, rng)
        fx = flip_parameters(x, eps)
        assert char_value(params_quarter, eps, x) == \
            char_value(fx.params, (1, 1, 1), fx)
    # the hand identity eps q^{eps/2} - (eps q^{eps/2})^{-1} = p_s
    for eps_s in (1, -1):
        lam = params_quarter.char_gen("a", eps_s)
        assert lam - 1 / lam == params_quarter.p("a")


def test_central_projection(params_quarter):
    free3 = CoxeterDiagram(["a", "b", "c"])
    params = MultiParameter.exact_squares(free3, {s: Fraction(1, 4) for s in "abc"})
    e0 = central_projection_partial(params, (1, 1, 1), 0)
    assert e0.coeffs == {(): Fraction(2, 5)}
    for i in (0, 3, 7):
        ei = central_projection_partial(params, (1, 1, 1), i)
        assert ei.trace() == Fraction(2, 5)
    with pytest.raises(ValueError):
        central_projection_partial(params, (-1, -1, -1), 2)
    # partial sums differ exactly by the tail l2 mass
    e3 = central_projection_partial(params, (1, 1, 1), 3)
    e6 = central_projection_partial(params, (1, 1, 1), 6)
    diff_sq = (e6 - e3).norm2_sq()
    w = Fraction(5, 2)
    expect = sum(Fraction(3 * 2 ** (l - 1), 4 ** l) for l in range(4, 7)) / w ** 2
    assert diff_sq == expect


def test_central_projection_cauchy_bound():
    """||E^(j) - E^(i)||_2 <= (1/W) sum_{i<l<=j} sqrt(a_l(|q_eps|)), and the
    right side tends to zero."""
    import math
    free3 = CoxeterDiagram(["a", "b", "c"])
    params = MultiParameter.exact_squares(free3, {s: Fraction(1, 4) for s in "abc"})
    w = Fraction(5, 2)
    pairs = [(2, 5), (3, 9), (6, 10)]
    for i, j in pairs:
        ei = central_projection_partial(params, (1, 1, 1), i)
        ej = central_projection_partial(params, (1, 1, 1), j)
        lhs = math.sqrt(float((ej - ei).norm2_sq()))
        rhs = sum(
            math.sqrt(3 * 2 ** (l - 1) * 0.25 ** l) for l in range(i + 1, j + 1)
        ) / float(w)
        assert lhs <= rhs + 1e-12
    tail = [sum(math.sqrt(3 * 2 ** (l - 1) * 0.25 ** l)
                for l in range(i + 1, i + 200)) for i in (5, 15, 30)]
    assert tail[0] > tail[1] > tail[2]
    assert tail[2] < 1e-3


def test_cliq_decomposition(params_quarter, diagram_a):
    d = diagram_a
    assert cliq_decomposition(params_quarter, "") == [((), (), (), 1)]
    items = cliq_decomposition(params_quarter, "a")
    assert ((), (), ("a",), Fraction(1)) in items
    assert ((), ("a",), (), Fraction(-3, 2)) in items
    assert len(items) == 2
    items = cliq_decomposition(params_quarter, "ab")
    gammas = sorted(g for (_, g, _, _) in items)
    assert gammas == [(), ("a",), ("a", "b"), ("b",)]
    # every term recombines to w with additive lengths
    for wp, gamma, wpp, _ in cliq_decomposition(params_quarter, "abcb"):
        prod: tuple = wp
        for s in gamma:
            prod = d.multiply(prod, (s,))
        prod = d.multiply(prod, wpp)
        assert prod == d.normal_form("abcb")
        assert len(wp) + len(gamma) + len(wpp) == 4


def test_parse_element_literal(params_quarter):
    x = parse_element_literal(params_quarter, "1*T(e) - 3/2*T(a)")
    ta = HeckeElement.basis(params_quarter, "a")
    assert x == ta * ta
    y = parse_element_literal(params_quarter, "-T(ab) + 2*T(c) - 1/3*T(e)")
    assert y.coeffs[("a", "b")] == -1
    assert y.coeffs[("c",)] == 2
    assert y.coeffs[()] == Fraction(-1, 3)
    with pytest.raises(ValueError):
        parse_element_literal(params_quarter, "2*S(a)")


def test_associativity_big_sample(params_quarter, diagram_a):
    rng = np.random.default_rng(123)
    b = ball(diagram_a, 5)
    for _ in range(60):
        x = rand_element(params_quarter, b, rng)
        y = rand_element(params_quarter, b, rng)
        z = rand_element(params_quarter, b, rng)
        assert (x * y) * z == x * (y * z)
