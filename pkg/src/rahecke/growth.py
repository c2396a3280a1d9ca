"""Growth series of right-angled Coxeter groups and the simplicity verdict.

The reciprocal of the full growth series is the clique sum

    D(q) = sum over cliques G of the commuting graph of prod_{s in G} (-q_s / (1 + q_s)),

with the empty clique contributing 1.  Along the ray t -> t*q the series
W(t*q) is a rational function of t whose reduced numerator N has N(0) = 1;
the growth exponent rho(q) is the reciprocal of the smallest positive root
t0 of N (and 0 when N has no positive root, i.e. W is finite).  Since the
series has nonnegative coefficients, its radius of convergence is t0, so

    q inside the convergence region  <=>  rho(q) < 1  <=>  N has no root in (0, 1].

All decisions are made by exact sign evaluations and Sturm counts; boundary
cases (rho = 1) are the exact condition N(1) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Mapping, Sequence

from . import polys
from .coxeter import CoxeterDiagram

SignPattern = tuple[int, ...]

BISECTION_WIDTH = Fraction(1, 2 ** 64)


def _check_positive_rational(diagram: CoxeterDiagram, q: Mapping[str, Fraction]) -> dict[str, Fraction]:
    out = {}
    for s in diagram.generators:
        if s not in q:
            raise ValueError(f"missing parameter for generator {s!r}")
        val = Fraction(q[s])
        if val <= 0:
            raise ValueError(f"parameter q[{s!r}] = {val} must be positive")
        out[s] = val
    return out


def cliques(diagram: CoxeterDiagram) -> list[tuple[str, ...]]:
    """All cliques of the commuting graph, the empty clique included."""
    gens = diagram.generators
    out: list[tuple[str, ...]] = []

    def extend(base: tuple[str, ...], candidates: Sequence[str]) -> None:
        out.append(base)
        for i, s in enumerate(candidates):
            extend(base + (s,), [t for t in candidates[i + 1:] if diagram.commutes(s, t)])

    extend((), gens)
    return out


def growth_reciprocal(diagram: CoxeterDiagram, q: Mapping[str, Fraction]) -> Fraction:
    """D(q) = 1/W(q), exactly."""
    qq = _check_positive_rational(diagram, q)
    total = Fraction(0)
    for clique in cliques(diagram):
        term = Fraction(1)
        for s in clique:
            term *= -qq[s] / (1 + qq[s])
        total += term
    return total


def growth_value(diagram: CoxeterDiagram, q: Mapping[str, Fraction]) -> Fraction:
    """W(q) as an exact rational; requires q strictly inside the region."""
    if region_membership(diagram, q) != "Interior":
        raise ValueError("growth series does not converge at this parameter")
    return 1 / growth_reciprocal(diagram, q)


def ray_numerator(diagram: CoxeterDiagram, q: Mapping[str, Fraction]) -> polys.Poly:
    """Reduced numerator N(t) of D(t*q), normalized so that N(0) = 1."""
    qq = _check_positive_rational(diagram, q)
    num: polys.Poly = []
    for clique in cliques(diagram):
        term = polys.from_coeffs([1])
        for s in diagram.generators:
            if s in clique:
                term = polys.mul(term, polys.from_coeffs([0, -qq[s]]))
            else:
                term = polys.mul(term, polys.from_coeffs([1, qq[s]]))
        num = polys.add(num, term)
    den = polys.from_coeffs([1])
    for s in diagram.generators:
        den = polys.mul(den, polys.from_coeffs([1, qq[s]]))
    g = polys.gcd_poly(num, den)
    if polys.degree(g) >= 1:
        num = polys.exact_div(num, g)
    c0 = num[0]
    if c0 == 0:
        raise RuntimeError("cleared numerator vanishes at 0; invalid input")
    return polys.scale(num, Fraction(1) / c0)


@dataclass(frozen=True)
class GrowthReport:
    """Exact growth data of (diagram, q) along the ray t -> t*q."""

    diagram: CoxeterDiagram
    q: dict
    reciprocal_value: Fraction
    cleared_polynomial: list
    t0: tuple[Fraction, Fraction] | None   # None means +infinity (finite group)
    rho: tuple[Fraction, Fraction]

    def rho_float(self) -> float:
        return float((self.rho[0] + self.rho[1]) / 2)


def pole_and_rho(diagram: CoxeterDiagram, q: Mapping[str, Fraction],
                 width: Fraction = BISECTION_WIDTH) -> GrowthReport:
    """Isolate the smallest positive pole t0 of t -> W(t*q) and rho = 1/t0."""
    qq = _check_positive_rational(diagram, q)
    num = ray_numerator(diagram, qq)
    bracket = polys.smallest_positive_root(num, width=width)
    if bracket is None:
        rho = (Fraction(0), Fraction(0))
    else:
        lo, hi = bracket
        rho = (1 / hi, 1 / lo)
    return GrowthReport(
        diagram=diagram,
        q=dict(qq),
        reciprocal_value=growth_reciprocal(diagram, qq),
        cleared_polynomial=list(num),
        t0=bracket,
        rho=rho,
    )


def region_membership(diagram: CoxeterDiagram, q: Mapping[str, Fraction]) -> str:
    """Position of q relative to the positive part of the convergence region:
    'Interior' (rho < 1), 'Boundary' (rho = 1) or 'Exterior' (rho > 1)."""
    qq = _check_positive_rational(diagram, q)
    num = ray_numerator(diagram, qq)
    f = polys.squarefree_part(num)
    one = Fraction(1)
    if polys.evaluate(f, one) == 0:
        return "Boundary"
    if polys.degree(f) < 1:
        return "Interior"
    chain = polys.sturm_chain(f)
    inside = polys.count_roots(chain, Fraction(0), one)
    return "Exterior" if inside >= 1 else "Interior"


def all_sign_patterns(rank: int) -> list[SignPattern]:
    return [pat for pat in iproduct((1, -1), repeat=rank)]


def flipped_parameter(diagram: CoxeterDiagram, q: Mapping[str, Fraction],
                      eps: SignPattern) -> dict[str, Fraction]:
    """|q_eps| = (q_s ** eps_s), coordinatewise."""
    out = {}
    for s, e in zip(diagram.generators, eps):
        qs = Fraction(q[s])
        out[s] = qs if e == 1 else 1 / qs
    return out


@dataclass(frozen=True)
class Verdict:
    """Simplicity verdict of the Hecke C*-algebra at a parameter."""

    status: str  # 'Simple' | 'NotSimple' | 'NotApplicable'
    witnesses: tuple[SignPattern, ...] = ()
    boundary_flags: tuple[SignPattern, ...] = ()
    reason: str | None = None
    per_flip: dict = field(default_factory=dict, compare=False)


def classify_simplicity(diagram: CoxeterDiagram, q: Mapping[str, Fraction]) -> Verdict:
    """Decide simplicity: not simple exactly when some sign flip of q has
    growth exponent at most 1.  Finite rank, irreducible diagrams only; the
    infinite-rank case is always simple and is not computed here."""
    if not diagram.is_irreducible():
        return Verdict(status="NotApplicable", reason="diagram is reducible")
    qq = _check_positive_rational(diagram, q)
    witnesses: list[SignPattern] = []
    boundary: list[SignPattern] = []
    per_flip: dict[SignPattern, dict] = {}
    for eps in all_sign_patterns(diagram.rank):
        qe = flipped_parameter(diagram, qq, eps)
        membership = region_membership(diagram, qe)
        report = pole_and_rho(diagram, qe)
        per_flip[eps] = {
            "membership": membership,
            "t0": report.t0,
            "rho": report.rho,
        }
        if membership in ("Interior", "Boundary"):
            witnesses.append(eps)
        if membership == "Boundary":
            boundary.append(eps)
    status = "NotSimple" if witnesses else "Simple"
    return Verdict(
        status=status,
        witnesses=tuple(witnesses),
        boundary_flags=tuple(boundary),
        per_flip=per_flip,
    )


def character_list(diagram: CoxeterDiagram, q: Mapping[str, Fraction]) -> list[SignPattern]:
    """Sign patterns eps whose character is bounded, i.e. rho(|q_eps|) <= 1.
    Empty exactly when the verdict is Simple."""
    verdict = classify_simplicity(diagram, q)
    if verdict.status == "NotApplicable":
        raise ValueError(verdict.reason or "not applicable")
    return list(verdict.witnesses)


def series_coefficients(diagram: CoxeterDiagram, q: Mapping[str, Fraction],
                        nterms: int) -> list[Fraction]:
    """Taylor coefficients of t -> W(t*q) = 1/D(t*q): the weighted sphere sums
    a_l(q), computed from the rational form.  Oracle counterpart of
    enumeration.sphere_weight."""
    qq = _check_positive_rational(diagram, q)
    num: polys.Poly = []
    for clique in cliques(diagram):
        term = polys.from_coeffs([1])
        for s in diagram.generators:
            if s in clique:
                term = polys.mul(term, polys.from_coeffs([0, -qq[s]]))
            else:
                term = polys.mul(term, polys.from_coeffs([1, qq[s]]))
        num = polys.add(num, term)
    den = polys.from_coeffs([1])
    for s in diagram.generators:
        den = polys.mul(den, polys.from_coeffs([1, qq[s]]))
    # W(t q) = den / num as a power series.
    inv = polys.power_series_inverse(num, nterms)
    out = []
    for n in range(nterms):
        acc = Fraction(0)
        for k in range(min(n, len(den) - 1) + 1):
            acc += den[k] * inv[n - k]
        out.append(acc)
    return out
