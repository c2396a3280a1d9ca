"""Ball and sphere enumeration, weighted sphere sums, and counting oracles.

Elements are generated directly in canonical form by the ShortLex automaton:
after a canonical word w, the letter t may be appended exactly when t is not
blocked, and the blocked set updates by

    B(wt) = {t}  |  {s < t : s commutes with t}  |  {s in B(w) : s commutes with t}.

The first part forbids the cancellation tt, the second forbids a word that a
single swap would make lexicographically smaller, and the third propagates
older obstructions through a commuting letter.  The automaton doubles as an
exact transfer-matrix oracle for sphere counts and weighted sphere sums.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .coxeter import CoxeterDiagram, Word

DEFAULT_ELEMENT_CAP = 2_000_000


class BallCapExceeded(RuntimeError):
    """Ball construction would exceed the configured element cap."""


class Ball:
    """All elements of word length <= radius, sorted by (length, ShortLex).

    Carries index tables for one-letter multiplication on both sides:
    ``rmul[v, i]`` is the index of ``v * s_i`` and ``lmul[i][v]`` the index of
    ``s_i * v``; entries are -1 when the product leaves the ball.
    """

    def __init__(self, diagram: CoxeterDiagram, radius: int, cap: int = DEFAULT_ELEMENT_CAP):
        if radius < 0:
            raise ValueError("radius must be >= 0")
        self.diagram = diagram
        self.radius = radius
        gens = diagram.generators
        k = len(gens)
        gidx = {s: i for i, s in enumerate(gens)}

        words: list[Word] = [()]
        parent = [0]
        plast = [-1]
        blocked: list[frozenset[str]] = [frozenset()]
        index: dict[Word, int] = {(): 0}
        sphere_start = [0, 1]

        commutes = diagram.commutes
        frontier = [0]
        for _ in range(radius):
            nxt: list[int] = []
            for u in frontier:
                wu = words[u]
                bu = blocked[u]
                for t in gens:
                    if t in bu:
                        continue
                    child = wu + (t,)
                    if len(words) >= cap:
                        raise BallCapExceeded(
                            f"ball of radius {radius} exceeds cap {cap}"
                        )
                    index[child] = len(words)
                    nxt.append(len(words))
                    words.append(child)
                    parent.append(u)
                    plast.append(gidx[t])
                    blocked.append(
                        frozenset(
                            {t}
                            | {s for s in gens if gidx[s] < gidx[t] and commutes(s, t)}
                            | {s for s in bu if commutes(s, t)}
                        )
                    )
            frontier = nxt
            sphere_start.append(len(words))
            if not frontier:
                break
        while len(sphere_start) < radius + 2:
            sphere_start.append(len(words))

        n = len(words)
        self.words = words
        self.index = index
        self.parent = np.asarray(parent, dtype=np.int64)
        self.plast = np.asarray(plast, dtype=np.int64)
        self.length = np.fromiter((len(w) for w in words), dtype=np.int64, count=n)
        self.sphere_start = sphere_start  # sphere l = [start[l], start[l+1])

        # Right multiplication table.  Pass 1: tree edges u -> u*t and their
        # inverses.  Pass 2: right descents, by removing the matching letter
        # (the removal of a right descent from a canonical word stays
        # canonical), which also fills the longer non-canonical products from
        # the shorter side.
        rmul = np.full((n, k), -1, dtype=np.int64)
        for v in range(1, n):
            u, ti = parent[v], plast[v]
            rmul[u, ti] = v
            rmul[v, ti] = u
        noncomm = {s: diagram._noncomm[s] for s in gens}
        for v in range(1, n):
            wv = words[v]
            shield: set[str] = set()
            for pos in range(len(wv) - 1, -1, -1):
                x = wv[pos]
                if x not in shield:
                    ti = gidx[x]
                    if rmul[v, ti] < 0:
                        shorter = index[wv[:pos] + wv[pos + 1:]]
                        rmul[v, ti] = shorter
                        if self.length[shorter] < radius:
                            rmul[shorter, ti] = v
                shield |= noncomm[x]
        self.rmul = rmul

        # Left multiplication via s*(u t) = (s*u) t along the generation tree.
        lmul = np.full((k, n), -1, dtype=np.int64)
        if radius >= 1:
            for i, s in enumerate(gens):
                lmul[i, 0] = index[(s,)]
                for v in range(1, n):
                    su = lmul[i, parent[v]]
                    if su >= 0:
                        lmul[i, v] = rmul[su, plast[v]]
        self.lmul = lmul
        self.ldesc = np.zeros((k, n), dtype=bool)
        for i in range(k):
            valid = lmul[i] >= 0
            self.ldesc[i, valid] = self.length[lmul[i, valid]] < self.length[valid]

    # -- basic queries -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.words)

    def sphere(self, l: int) -> range:
        if l < 0 or l > self.radius:
            raise ValueError(f"sphere {l} not enumerated (radius {self.radius})")
        return range(self.sphere_start[l], self.sphere_start[l + 1])

    def sphere_sizes(self) -> list[int]:
        return [self.sphere_start[l + 1] - self.sphere_start[l] for l in range(self.radius + 1)]

    def index_of(self, word: Sequence[str]) -> int:
        return self.index[self.diagram.normal_form(word)]

    def starts_with_index(self, prefix: Word, v: int) -> bool:
        """Whether prefix <= (element at index v), via the index tables."""
        cur = v
        for i, t in enumerate(prefix):
            ti = self.diagram.gen_index(t)
            if not self.ldesc[ti, cur]:
                return False
            cur = self.lmul[ti, cur]
        return True

    def prefix_mask(self, prefix: Word) -> np.ndarray:
        """Boolean array over the ball: prefix <= v, stripping one letter of
        the prefix at a time across all elements at once."""
        n = len(self.words)
        alive = np.ones(n, dtype=bool)
        cur = np.arange(n, dtype=np.int64)
        for t in prefix:
            ti = self.diagram.gen_index(t)
            alive &= self.ldesc[ti][cur]
            cur = np.where(alive, self.lmul[ti][cur], 0)
        return alive

    def element_weights(self, q: Mapping[str, Fraction]) -> list:
        """q_w for every ball element, in ball order."""
        gens = self.diagram.generators
        qs = [q[s] for s in gens]
        out = [Fraction(1) if all(isinstance(x, Fraction) for x in qs) else 1.0]
        for v in range(1, len(self.words)):
            out.append(out[self.parent[v]] * qs[self.plast[v]])
        return out


_BALL_CACHE: dict[tuple, Ball] = {}


def ball(diagram: CoxeterDiagram, radius: int, cap: int = DEFAULT_ELEMENT_CAP) -> Ball:
    """Memoized ball construction."""
    key = (diagram.key(), radius)
    b = _BALL_CACHE.get(key)
    if b is None or (cap != DEFAULT_ELEMENT_CAP):
        b = Ball(diagram, radius, cap=cap)
        _BALL_CACHE[key] = b
    return b


def sphere_weight(diagram: CoxeterDiagram, q: Mapping[str, Fraction], l: int,
                  b: Ball | None = None):
    """a_l(q) = sum of q_w over the sphere of radius l."""
    if b is None or b.radius < l:
        b = ball(diagram, l)
    weights = b.element_weights(q)
    total = sum(weights[v] for v in b.sphere(l))
    return total if l > 0 else weights[0]


def restricted_sphere_weight(diagram: CoxeterDiagram, q: Mapping[str, Fraction],
                             l: int, g: Sequence[str], b: Ball | None = None):
    """Sum of q_w over {|w| = l : g <= w^-1}."""
    gw = diagram.normal_form(g)
    if b is None or b.radius < l:
        b = ball(diagram, l)
    weights = b.element_weights(q)
    total = Fraction(0)
    hit = False
    for v in b.sphere(l):
        inv = b.index[diagram.inverse(b.words[v])]
        if b.starts_with_index(gw, inv):
            total += weights[v]
            hit = True
    return total if hit else total * 0


def restricted_sphere_series(diagram: CoxeterDiagram, q: Mapping[str, Fraction],
                             g: Sequence[str], lmax: int) -> list:
    """[S_0, ..., S_lmax] with S_l = sum of q_w over {|w| = l : g <= w^-1},
    via an exact transfer recursion (no enumeration).

    Elements x with g <= x biject with pairs (g, u), x = g * u of additive
    length; additivity holds iff appending the canonical word of u to g never
    cancels, which the letter-removability set R tracks alongside the
    canonical-word automaton state:  R(w t) = {t} | {s in R(w) : s commutes
    with t}.  Since q_w = q_{w^-1}, the restricted sum at l is q_g times the
    weighted count of valid u of length l - |g|.
    """
    gword = diagram.normal_form(g)
    gidx = diagram._gidx
    gens = diagram.generators
    commutes = diagram.commutes
    zero = Fraction(0)
    out = [zero] * (lmax + 1)
    if len(gword) > lmax:
        return out
    r_state: frozenset[str] = frozenset()
    for t in gword:
        r_state = frozenset({t} | {s for s in r_state if commutes(s, t)})
    q_g = Fraction(1)
    for t in gword:
        q_g *= q[t]
    # weighted states: (B, R) -> accumulated weight
    states: dict[tuple[frozenset, frozenset], Fraction] = {
        (frozenset(), r_state): Fraction(1)
    }
    out[len(gword)] = q_g
    for l in range(len(gword) + 1, lmax + 1):
        new: dict[tuple[frozenset, frozenset], Fraction] = {}
        for (b, r), weight in states.items():
            for t in gens:
                if t in b or t in r:
                    continue
                nb = frozenset(
                    {t}
                    | {s for s in gens if gidx[s] < gidx[t] and commutes(s, t)}
                    | {s for s in b if commutes(s, t)}
                )
                nr = frozenset({t} | {s for s in r if commutes(s, t)})
                key = (nb, nr)
                new[key] = new.get(key, zero) + weight * q[t]
        states = new
        out[l] = q_g * sum(states.values(), zero)
    return out


def prefixes(diagram: CoxeterDiagram, w: Sequence[str],
             _memo: dict | None = None) -> frozenset[Word]:
    """All v with v <= w in the weak right order."""
    word = diagram.normal_form(w)
    memo = _memo if _memo is not None else {}

    def rec(u: Word) -> frozenset[Word]:
        got = memo.get(u)
        if got is not None:
            return got
        acc: set[Word] = {()}
        for t in diagram.left_descents(u):
            for p in rec(diagram.left_strip(t, u)):
                acc.add(diagram.normal_form((t,) + p))
        memo[u] = frozenset(acc)
        return memo[u]

    return rec(word)


def kappa(diagram: CoxeterDiagram, w: Sequence[str], l: int) -> int:
    """kappa_w(l) = #{v <= w with |v| = l}."""
    return sum(1 for p in prefixes(diagram, w) if len(p) == l)


def kappa_profile(diagram: CoxeterDiagram, w: Sequence[str]) -> list[int]:
    word = diagram.normal_form(w)
    counts = [0] * (len(word) + 1)
    for p in prefixes(diagram, word):
        counts[len(p)] += 1
    return counts


class NormalFormAutomaton:
    """Transfer-matrix view of the canonical-word language.

    States are blocked sets; following the automaton with per-generator
    weights computes exact weighted sphere sums without enumerating elements.
    """

    def __init__(self, diagram: CoxeterDiagram):
        self.diagram = diagram
        gens = diagram.generators
        gidx = diagram._gidx
        commutes = diagram.commutes
        states: list[frozenset[str]] = [frozenset()]
        pos: dict[frozenset[str], int] = {frozenset(): 0}
        trans: list[list[tuple[int, int]]] = []  # state -> [(gen index, next state)]
        queue = [frozenset()]
        while queue:
            b = queue.pop()
            row: list[tuple[int, int]] = []
            for t in gens:
                if t in b:
                    continue
                nb = frozenset(
                    {t}
                    | {s for s in gens if gidx[s] < gidx[t] and commutes(s, t)}
                    | {s for s in b if commutes(s, t)}
                )
                j = pos.get(nb)
                if j is None:
                    j = len(states)
                    pos[nb] = j
                    states.append(nb)
                    queue.append(nb)
                row.append((gidx[t], j))
            while len(trans) < len(states):
                trans.append([])
            trans[pos[b]] = row
        # discovery order interleaves; rebuild rows for every state
        self.states = states
        self.transitions = [
            [
                (gidx[t], pos[frozenset(
                    {t}
                    | {s for s in gens if gidx[s] < gidx[t] and commutes(s, t)}
                    | {s for s in b if commutes(s, t)}
                )])
                for t in gens if t not in b
            ]
            for b in states
        ]

    def sphere_series(self, weights: Sequence, lmax: int) -> list:
        """[S_0, ..., S_lmax] with S_l = sum over canonical words of length l
        of the product of per-letter weights."""
        zero = weights[0] * 0
        vec = [zero] * len(self.states)
        vec[0] = weights[0] * 0 + (Fraction(1) if isinstance(weights[0], Fraction) else 1)
        out = [vec[0]]
        for _ in range(lmax):
            new = [zero] * len(self.states)
            for st, amount in enumerate(vec):
                if amount == 0:
                    continue
                for ti, nxt in self.transitions[st]:
                    new[nxt] += amount * weights[ti]
            vec = new
            out.append(sum(vec, zero))
        return out

    def sphere_counts(self, lmax: int) -> list[int]:
        return [int(x) for x in self.sphere_series([Fraction(1)] * self.diagram.rank, lmax)]


def connected_diagram_corpus(max_rank: int = 5) -> list[CoxeterDiagram]:
    """All irreducible right-angled diagrams with at most ``max_rank``
    generators, one per isomorphism class of the underlying infinity graph."""
    out: list[CoxeterDiagram] = []
    from itertools import combinations, permutations

    for n in range(1, max_rank + 1):
        names = [chr(ord("a") + i) for i in range(n)]
        vpairs = list(combinations(range(n), 2))
        seen: set[frozenset] = set()
        for mask in range(1 << len(vpairs)):
            edges = {vpairs[i] for i in range(len(vpairs)) if mask >> i & 1}
            # edges = infinity graph; connectivity check
            adj = {i: set() for i in range(n)}
            for (i, j) in edges:
                adj[i].add(j)
                adj[j].add(i)
            seen_v = {0}
            stack = [0]
            while stack:
                u = stack.pop()
                for x in adj[u]:
                    if x not in seen_v:
                        seen_v.add(x)
                        stack.append(x)
            if len(seen_v) != n:
                continue
            canon = min(
                tuple(sorted(tuple(sorted((p[i], p[j]))) for (i, j) in edges))
                for p in permutations(range(n))
            )
            if canon in seen:
                continue
            seen.add(canon)
            commuting = [
                (names[i], names[j]) for (i, j) in vpairs if (i, j) not in edges
            ]
            out.append(CoxeterDiagram(names, commuting))
    return out
