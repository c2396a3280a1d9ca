"""Exact arithmetic in the multi-parameter Hecke algebra of a right-angled
Coxeter system.

Basis symbols T_w are indexed by canonical words.  Products follow the
one-letter rule

    T_s T_w = T_{sw}                 if s is not below w,
    T_s T_w = T_{sw} + p_s T_w       if s <= w,      p_s = (q_s - 1) / sqrt(q_s),

extended letter by letter over the left factor and bilinearly.  In exact mode
every q_s must be the square of a rational, so p_s, character values, and the
coefficients of the central-projection partial sums all stay rational.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import enumeration, growth
from .coxeter import CoxeterDiagram, Word


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    x = Fraction(x)
    if x < 0:
        return None
    rn = math.isqrt(x.numerator)
    rd = math.isqrt(x.denominator)
    if rn * rn == x.numerator and rd * rd == x.denominator:
        return Fraction(rn, rd)
    return None


class MultiParameter:
    """Per-generator deformation parameters with optional exact square roots."""

    def __init__(self, diagram: CoxeterDiagram, q: Mapping[str, object],
                 roots: Mapping[str, object] | None, exact: bool):
        self.diagram = diagram
        self.q = dict(q)
        self.roots = dict(roots) if roots is not None else None
        self.exact = exact
        for s in diagram.generators:
            if s not in self.q:
                raise ValueError(f"missing parameter for generator {s!r}")
            if self.q[s] <= 0:
                raise ValueError(f"parameter q[{s!r}] must be positive")
        self._p = {s: self._compute_p(s) for s in diagram.generators}

    # -- constructors --------------------------------------------------------

    @classmethod
    def exact_squares(cls, diagram: CoxeterDiagram, q: Mapping[str, Fraction]) -> "MultiParameter":
        """Exact mode; every q_s must be the square of a rational."""
        roots = {}
        qq = {}
        for s in diagram.generators:
            val = Fraction(q[s])
            r = rational_sqrt(val)
            if r is None:
                raise ValueError(
                    f"q[{s!r}] = {val} is not a square of a rational; "
                    "use float mode for such parameters"
                )
            qq[s] = val
            roots[s] = r
        return cls(diagram, qq, roots, exact=True)

    @classmethod
    def from_roots(cls, diagram: CoxeterDiagram, roots: Mapping[str, Fraction]) -> "MultiParameter":
        r = {s: Fraction(roots[s]) for s in diagram.generators}
        return cls(diagram, {s: v * v for s, v in r.items()}, r, exact=True)

    @classmethod
    def floating(cls, diagram: CoxeterDiagram, q: Mapping[str, float]) -> "MultiParameter":
        qq = {s: float(q[s]) for s in diagram.generators}
        return cls(diagram, qq, {s: math.sqrt(v) for s, v in qq.items()}, exact=False)

    @classmethod
    def one(cls, diagram: CoxeterDiagram) -> "MultiParameter":
        """The undeformed point q == 1 (group algebra)."""
        return cls.exact_squares(diagram, {s: Fraction(1) for s in diagram.generators})

    # -- derived scalars -----------------------------------------------------

    def _compute_p(self, s: str):
        if self.exact:
            return (self.q[s] - 1) / self.roots[s]
        return (self.q[s] - 1.0) / self.roots[s]

    def p(self, s: str):
        """p_s = (q_s - 1) / sqrt(q_s)."""
        return self._p[s]

    def root(self, s: str):
        return self.roots[s]

    def q_word(self, word: Sequence[str]):
        acc = Fraction(1) if self.exact else 1.0
        for s in word:
            acc = acc * self.q[s]
        return acc

    def char_gen(self, s: str, eps_s: int):
        """Character value on T_s for sign eps_s: eps_s * q_s ** (eps_s / 2)."""
        r = self.roots[s]
        return eps_s * (r if eps_s == 1 else 1 / r)

    def sqrt_q_signed(self, word: Sequence[str], eps: Sequence[int]):
        """prod over the letters of word of eps_s * q_s ** (eps_s / 2)."""
        emap = dict(zip(self.diagram.generators, eps))
        acc = Fraction(1) if self.exact else 1.0
        for s in word:
            acc = acc * self.char_gen(s, emap[s])
        return acc

    def flipped(self, eps: Sequence[int]) -> "MultiParameter":
        """Parameters (q_s ** eps_s); exact roots flip with the sign."""
        emap = dict(zip(self.diagram.generators, eps))
        if self.exact:
            roots = {
                s: (self.roots[s] if emap[s] == 1 else 1 / self.roots[s])
                for s in self.diagram.generators
            }
            return MultiParameter.from_roots(self.diagram, roots)
        q = {
            s: (self.q[s] if emap[s] == 1 else 1.0 / self.q[s])
            for s in self.diagram.generators
        }
        return MultiParameter.floating(self.diagram, q)

    def abs_flip(self, eps: Sequence[int]) -> dict[str, Fraction]:
        """|q_eps| as a plain mapping for the growth module (exact mode)."""
        if not self.exact:
            raise ValueError("exact region decisions need exact parameters")
        emap = dict(zip(self.diagram.generators, eps))
        return {
            s: (self.q[s] if emap[s] == 1 else 1 / self.q[s])
            for s in self.diagram.generators
        }

    def same_as(self, other: "MultiParameter") -> bool:
        return (self.diagram == other.diagram and self.exact == other.exact
                and self.q == other.q)

    def __repr__(self) -> str:
        mode = "exact" if self.exact else "float"
        return f"MultiParameter({mode}, {self.q})"


class HeckeElement:
    """Finite linear combination of basis symbols T_w."""

    __slots__ = ("diagram", "params", "coeffs")

    def __init__(self, params: MultiParameter, coeffs: Mapping[Word, object] | None = None):
        self.diagram = params.diagram
        self.params = params
        cleaned = {}
        if coeffs:
            for w, c in coeffs.items():
                if c != 0:
                    cleaned[w] = c
        self.coeffs: dict[Word, object] = cleaned

    @classmethod
    def zero(cls, params: MultiParameter) -> "HeckeElement":
        return cls(params)

    @classmethod
    def one(cls, params: MultiParameter) -> "HeckeElement":
        return cls.basis(params, ())

    @classmethod
    def basis(cls, params: MultiParameter, word: Iterable[str]) -> "HeckeElement":
        w = params.diagram.normal_form(word)
        unit = Fraction(1) if params.exact else 1.0
        return cls(params, {w: unit})

    # -- linear structure ----------------------------------------------------

    def _require_same(self, other: "HeckeElement") -> None:
        if not self.params.same_as(other.params):
            raise ValueError("parameter mismatch between Hecke elements")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._require_same(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return HeckeElement(self.params, out)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        self._require_same(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) - c
        return HeckeElement(self.params, out)

    def scaled(self, c) -> "HeckeElement":
        return HeckeElement(self.params, {w: c * v for w, v in self.coeffs.items()})

    def __rmul__(self, c) -> "HeckeElement":
        if isinstance(c, HeckeElement):
            return NotImplemented
        return self.scaled(c)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, HeckeElement)
                and self.params.same_as(other.params)
                and self.coeffs == other.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return "HeckeElement(0)"
        bits = []
        for w in sorted(self.coeffs, key=lambda u: (len(u), u)):
            bits.append(f"{self.coeffs[w]}*T({self.diagram.format_element(w)})")
        return "HeckeElement(" + " + ".join(bits) + ")"

    def support_radius(self) -> int:
        return max((len(w) for w in self.coeffs), default=0)

    # -- multiplication ------------------------------------------------------

    def _left_letter(self, s: str, state: dict[Word, object]) -> dict[Word, object]:
        d = self.diagram
        p = self.params.p(s)
        out: dict[Word, object] = {}
        for w, c in state.items():
            sw = d.left_multiply(s, w)
            out[sw] = out.get(sw, 0) + c
            if len(sw) < len(w):  # s <= w
                if p != 0:
                    out[w] = out.get(w, 0) + c * p
        return {w: c for w, c in out.items() if c != 0}

    def __mul__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return self.scaled(other)
        self._require_same(other)
        total: dict[Word, object] = {}
        for v, cv in self.coeffs.items():
            state = dict(other.coeffs)
            for s in reversed(v):
                state = self._left_letter(s, state)
            for w, c in state.items():
                total[w] = total.get(w, 0) + cv * c
        return HeckeElement(self.params, total)

    # -- involution, trace, l2 ------------------------------------------------

    def adjoint(self) -> "HeckeElement":
        out: dict[Word, object] = {}
        for w, c in self.coeffs.items():
            wi = self.diagram.inverse(w)
            out[wi] = out.get(wi, 0) + (c.conjugate() if isinstance(c, complex) else c)
        return HeckeElement(self.params, out)

    def trace(self):
        """tau(x): the coefficient of T_e."""
        zero = Fraction(0) if self.params.exact else 0.0
        return self.coeffs.get((), zero)

    def inner(self, other: "HeckeElement"):
        """<x, y> = tau(y* x)."""
        return (other.adjoint() * self).trace()

    def norm2_sq(self):
        acc = Fraction(0) if self.params.exact else 0.0
        for c in self.coeffs.values():
            acc = acc + (c * c.conjugate() if isinstance(c, complex) else c * c)
        return acc

    def norm2(self) -> float:
        return math.sqrt(float(self.norm2_sq()))


def mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    return a * b


def adjoint(a: HeckeElement) -> HeckeElement:
    return a.adjoint()


def trace(a: HeckeElement):
    return a.trace()


def l2_inner(a: HeckeElement, b: HeckeElement):
    return a.inner(b)


def l2_norm(a: HeckeElement) -> float:
    return a.norm2()


def flip_parameters(a: HeckeElement, eps: Sequence[int]) -> HeckeElement:
    """Image of ``a`` under the isomorphism T_s -> eps_s T_s over (q_s**eps_s)."""
    new_params = a.params.flipped(eps)
    emap = dict(zip(a.diagram.generators, eps))
    out: dict[Word, object] = {}
    for w, c in a.coeffs.items():
        sign = 1
        for s in w:
            sign *= emap[s]
        out[w] = out.get(w, 0) + sign * c
    return HeckeElement(new_params, out)


def char_value(params: MultiParameter, eps: Sequence[int], a: HeckeElement):
    """chi_{q_eps}(a): linear extension of T_s -> eps_s q_s ** (eps_s/2)."""
    if not params.same_as(a.params):
        raise ValueError("parameter mismatch")
    acc = Fraction(0) if params.exact else 0.0
    for w, c in a.coeffs.items():
        acc = acc + c * params.sqrt_q_signed(w, eps)
    return acc


def central_projection_partial(params: MultiParameter, eps: Sequence[int],
                               cutoff: int,
                               b: enumeration.Ball | None = None) -> HeckeElement:
    """Partial sum E^(i) of the central projection series for the pattern eps.

    E^(i) = (1/W(|q_eps|)) * sum_{|w| <= i} (sqrt q)_{w,eps} T_w.  Requires
    |q_eps| strictly inside the convergence region, so that the normalization
    W(|q_eps|) is an exact positive rational.
    """
    if not params.exact:
        raise ValueError("central projections need exact parameters")
    d = params.diagram
    q_abs = params.abs_flip(eps)
    if growth.region_membership(d, q_abs) != "Interior":
        raise ValueError(
            "flipped parameter lies outside the interior of the convergence "
            "region; the projection series is not defined there"
        )
    w_value = 1 / growth.growth_reciprocal(d, q_abs)
    if b is None or b.radius < cutoff:
        b = enumeration.ball(d, cutoff)
    coeffs: dict[Word, object] = {}
    for v in range(len(b)):
        if b.length[v] > cutoff:
            break
        w = b.words[v]
        coeffs[w] = params.sqrt_q_signed(w, eps) / w_value
    return HeckeElement(params, coeffs)


def cliq_decomposition(params: MultiParameter, w: Sequence[str]
                       ) -> list[tuple[Word, tuple[str, ...], Word, object]]:
    """Terms (w', Gamma, w'', coefficient) expressing T_w over the undeformed
    operators and clique projections:

        T_w = sum over terms of (prod_{s in Gamma} p_s) T_{w'}^(1) P_Gamma T_{w''}^(1)

    where w = w' (prod Gamma) w'' with additive lengths, Gamma a commuting set
    of generators, and w' minimal in the sense that no generator commuting
    with all of Gamma is a right descent of w'.
    """
    d = params.diagram
    word = d.normal_form(w)
    out: list[tuple[Word, tuple[str, ...], Word, object]] = []
    for wp in sorted(enumeration.prefixes(d, word), key=lambda u: (len(u), u)):
        u = d.multiply(d.inverse(wp), word)
        rdesc_wp = set(d.right_descents(wp))
        descents = d.left_descents(u)
        # cliques inside the left descents of u (descents pairwise commute
        # only when the diagram says so)
        def extend(base: tuple[str, ...], cands: list[str]) -> None:
            gamma = base
            movers = [
                t for t in d.generators
                if all(d.commutes(s, t) for s in gamma) and t not in gamma
            ]
            if all(t not in rdesc_wp for t in movers):
                wpp = u
                coeff = Fraction(1) if params.exact else 1.0
                for s in gamma:
                    wpp = d.left_strip(s, wpp) if s in d.left_descents(wpp) else None
                    if wpp is None:
                        break
                    coeff = coeff * params.p(s)
                if wpp is not None:
                    out.append((wp, gamma, wpp, coeff))
            for i, s in enumerate(cands):
                extend(base + (s,), [t for t in cands[i + 1:] if d.commutes(s, t)])

        extend((), descents)
    return out


def parse_element_literal(params: MultiParameter, text: str) -> HeckeElement:
    """Parse literals like ``1*T(e) - 3/2*T(a) + T(ab)``."""
    d = params.diagram
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty element literal")
    terms: list[tuple[int, str]] = []
    sign = 1
    i = 0
    cur = ""
    while i < len(s):
        ch = s[i]
        if ch in "+-" and cur:
            terms.append((sign, cur))
            sign = 1 if ch == "+" else -1
            cur = ""
        elif ch in "+-" and not cur:
            sign = sign * (1 if ch == "+" else -1)
        else:
            cur += ch
        i += 1
    if cur:
        terms.append((sign, cur))
    acc = HeckeElement.zero(params)
    for sgn, term in terms:
        if "*" in term:
            coef_text, basis_text = term.split("*", 1)
        else:
            coef_text, basis_text = "1", term
        if not (basis_text.startswith("T(") and basis_text.endswith(")")):
            raise ValueError(f"bad basis factor in {term!r}; expected T(word)")
        word = d.parse_element(basis_text[2:-1])
        coef = Fraction(coef_text) if params.exact else float(Fraction(coef_text))
        acc = acc + (sgn * coef) * HeckeElement.basis(params, word)
    return acc
