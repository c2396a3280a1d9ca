"""Dense univariate polynomials over the rationals, with Sturm-based
real-root counting and exact bisection.

Polynomials are lists of Fractions, lowest degree first, with no trailing
zeros (the zero polynomial is the empty list).
"""

from __future__ import annotations

from fractions import Fraction

Poly = list[Fraction]


def trim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def from_coeffs(cs) -> Poly:
    return trim([Fraction(c) for c in cs])


def degree(p: Poly) -> int:
    return len(p) - 1


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return trim([
        (p[i] if i < len(p) else Fraction(0)) + (q[i] if i < len(q) else Fraction(0))
        for i in range(n)
    ])


def neg(p: Poly) -> Poly:
    return [-c for c in p]


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p: Poly, c: Fraction) -> Poly:
    return trim([a * c for a in p])


def evaluate(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return trim([c * i for i, c in enumerate(p)][1:])


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq = len(q) - 1
    lead = q[-1]
    while len(rem) - 1 >= dq and rem:
        c = rem[-1] / lead
        k = len(rem) - 1 - dq
        quo[k] = c
        for i in range(len(q)):
            rem[k + i] -= c * q[i]
        trim(rem)
        if not rem:
            break
    return trim(quo), rem


def gcd_poly(p: Poly, q: Poly) -> Poly:
    a, b = list(p), list(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if a:
        a = scale(a, Fraction(1) / a[-1])  # monic
    return a


def exact_div(p: Poly, q: Poly) -> Poly:
    quo, rem = divmod_poly(p, q)
    if rem:
        raise ValueError("division is not exact")
    return quo


def squarefree_part(p: Poly) -> Poly:
    if degree(p) < 1:
        return list(p)
    g = gcd_poly(p, derivative(p))
    if degree(g) < 1:
        return list(p)
    return exact_div(p, g)


def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm chain of a squarefree polynomial."""
    chain = [list(p), derivative(p)]
    while chain[-1]:
        rem = divmod_poly(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(neg(rem))
    return [c for c in chain if c]


def sign_variations(chain: list[Poly], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = evaluate(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(chain: list[Poly], a: Fraction, b: Fraction) -> int:
    """Number of distinct real roots in (a, b] for a squarefree chain."""
    return sign_variations(chain, a) - sign_variations(chain, b)


def cauchy_bound(p: Poly) -> Fraction:
    """All real roots of p lie in (-B, B)."""
    lead = abs(p[-1])
    return Fraction(1) + max(abs(c) for c in p) / lead


def smallest_positive_root(p: Poly, width: Fraction = Fraction(1, 2 ** 64)
                           ) -> tuple[Fraction, Fraction] | None:
    """Isolating interval for the smallest positive real root of p.

    Returns dyadic (lo, hi] with lo < root <= hi, hi - lo <= width and
    exactly one root of p inside, or (r, r) when the root is hit exactly,
    or None when p has no positive real root.  Requires p(0) != 0.
    """
    f = squarefree_part(p)
    if degree(f) < 1:
        return None
    if evaluate(f, Fraction(0)) == 0:
        raise ValueError("polynomial vanishes at 0")
    chain = sturm_chain(f)
    bound = cauchy_bound(f)
    hi = Fraction(1)
    while hi < bound:
        hi *= 2
    if count_roots(chain, Fraction(0), hi) == 0:
        return None
    lo = Fraction(0)
    while (hi - lo) > width or count_roots(chain, lo, hi) != 1 or lo == 0:
        mid = (lo + hi) / 2
        if evaluate(f, mid) == 0:
            # mid is a rational root; it is the smallest in (lo, hi] unless
            # the deflated polynomial still has one strictly below it.
            f = exact_div(f, [-mid, Fraction(1)])
            chain = sturm_chain(f)
            if count_roots(chain, lo, mid) == 0:
                return (mid, mid)
            hi = mid
        elif count_roots(chain, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return (lo, hi)


def power_series_inverse(p: Poly, nterms: int) -> list[Fraction]:
    """First ``nterms`` coefficients of 1/p as a power series; p(0) != 0."""
    if not p or p[0] == 0:
        raise ValueError("series inverse requires a unit constant term")
    inv0 = Fraction(1) / p[0]
    out = [inv0]
    for n in range(1, nterms):
        acc = Fraction(0)
        for k in range(1, min(n, len(p) - 1) + 1):
            acc += p[k] * out[n - k]
        out.append(-inv0 * acc)
    return out
