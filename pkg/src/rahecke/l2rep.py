"""Truncated matrices of Hecke operators and weak-order projections on balls
of l2(W), operator-identity verification, and spectral estimates.

Truncation discipline: a TruncatedOperator stores the *true* compression
P_n X P_n of the operator it represents (columns are computed by acting on
basis vectors without intermediate truncation, then projecting).  Every
operator carries its ``reach`` -- the largest word length by which it can move
a basis vector -- and identity checks only compare columns delta_v with
|v| + total reach <= n, where the compression agrees with the untruncated
operator.  All norms computed from compressions are certified lower bounds of
the operator norms; spectra of compressions of self-adjoint operators with
spectrum in [c, C] stay in [c, C].
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import enumeration
from .coxeter import CoxeterDiagram, Word
from .enumeration import Ball, ball
from .hecke import HeckeElement, MultiParameter

DENSE_LIMIT = 4000


class TruncatedOperator:
    """Sparse-column matrix of an operator compressed to a ball."""

    def __init__(self, b: Ball, cols: list[dict[int, object]], reach: int, exact: bool):
        self.ball = b
        self.cols = cols
        self.reach = reach
        self.exact = exact

    @property
    def exactness_radius(self) -> int:
        return self.ball.radius - self.reach

    @classmethod
    def zero(cls, b: Ball, exact: bool = True) -> "TruncatedOperator":
        return cls(b, [dict() for _ in range(len(b))], 0, exact)

    @classmethod
    def identity(cls, b: Ball, exact: bool = True) -> "TruncatedOperator":
        one = Fraction(1) if exact else 1.0
        return cls(b, [{v: one} for v in range(len(b))], 0, exact)

    @classmethod
    def diagonal(cls, b: Ball, values: Sequence, reach: int = 0,
                 exact: bool = True) -> "TruncatedOperator":
        return cls(
            b,
            [({v: values[v]} if values[v] != 0 else {}) for v in range(len(b))],
            reach,
            exact,
        )

    def diag(self) -> list:
        zero = Fraction(0) if self.exact else 0.0
        return [self.cols[v].get(v, zero) for v in range(len(self.ball))]

    def is_diagonal(self) -> bool:
        return all(set(col) <= {v} for v, col in enumerate(self.cols))

    def __add__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        cols = []
        for c1, c2 in zip(self.cols, other.cols):
            d = dict(c1)
            for r, val in c2.items():
                nv = d.get(r, 0) + val
                if nv == 0:
                    d.pop(r, None)
                else:
                    d[r] = nv
            cols.append(d)
        return TruncatedOperator(self.ball, cols, max(self.reach, other.reach),
                                 self.exact and other.exact)

    def __sub__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        return self + other.scaled(-1)

    def scaled(self, c) -> "TruncatedOperator":
        return TruncatedOperator(
            self.ball,
            [{r: c * v for r, v in col.items()} for col in self.cols],
            self.reach,
            self.exact,
        )

    def __matmul__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        cols = []
        for col in other.cols:
            acc: dict[int, object] = {}
            for mid, v in col.items():
                for r, a in self.cols[mid].items():
                    nv = acc.get(r, 0) + a * v
                    if nv == 0:
                        acc.pop(r, None)
                    else:
                        acc[r] = nv
            cols.append(acc)
        return TruncatedOperator(self.ball, cols, self.reach + other.reach,
                                 self.exact and other.exact)

    def transpose(self) -> "TruncatedOperator":
        cols: list[dict[int, object]] = [dict() for _ in range(len(self.ball))]
        for v, col in enumerate(self.cols):
            for r, val in col.items():
                cols[r][v] = val
        return TruncatedOperator(self.ball, cols, self.reach, self.exact)

    def apply(self, vec: Sequence) -> list:
        out = [0] * len(self.ball)
        for v, x in enumerate(vec):
            if x == 0:
                continue
            for r, a in self.cols[v].items():
                out[r] += a * x
        return out

    def to_dense(self) -> np.ndarray:
        n = len(self.ball)
        m = np.zeros((n, n))
        for v, col in enumerate(self.cols):
            for r, val in col.items():
                m[r, v] = float(val)
        return m

    def max_abs_difference(self, other: "TruncatedOperator",
                           max_col_length: int | None = None):
        """Largest |entry difference| over columns delta_v with
        |v| <= max_col_length (default: the joint exactness radius)."""
        if max_col_length is None:
            max_col_length = min(self.exactness_radius, other.exactness_radius)
        worst = Fraction(0) if (self.exact and other.exact) else 0.0
        for v in range(len(self.ball)):
            if self.ball.length[v] > max_col_length:
                continue
            rows = set(self.cols[v]) | set(other.cols[v])
            for r in rows:
                diff = self.cols[v].get(r, 0) - other.cols[v].get(r, 0)
                if diff < 0:
                    diff = -diff
                if diff > worst:
                    worst = diff
        return worst


def rep_hecke(a: HeckeElement, b: Ball) -> TruncatedOperator:
    """Compression of the left-regular action of ``a`` to the ball.

    Columns are exact: each basis vector is pushed through the defining
    one-letter rule at the level of words, with no intermediate truncation,
    and only then projected back to the ball.
    """
    d = a.diagram
    params = a.params
    n = b.radius
    reach = a.support_radius()
    cols: list[dict[int, object]] = []
    for v in range(len(b)):
        wv = b.words[v]
        acc: dict[Word, object] = {}
        for w, c in a.coeffs.items():
            state = {wv: c}
            for s in reversed(w):
                new: dict[Word, object] = {}
                p = params.p(s)
                for u, cc in state.items():
                    su = d.left_multiply(s, u)
                    new[su] = new.get(su, 0) + cc
                    if p != 0 and len(su) < len(u):
                        new[u] = new.get(u, 0) + cc * p
                state = new
            for u, cc in state.items():
                acc[u] = acc.get(u, 0) + cc
        col: dict[int, object] = {}
        for u, cc in acc.items():
            if cc != 0 and len(u) <= n:
                col[b.index[u]] = cc
        cols.append(col)
    return TruncatedOperator(b, cols, reach, params.exact)


def rep_group_word(d: CoxeterDiagram, word: Sequence[str], b: Ball) -> TruncatedOperator:
    """Compression of the undeformed operator T_w at q == 1 (a permutation)."""
    w = d.normal_form(word)
    cols: list[dict[int, object]] = []
    for v in range(len(b)):
        target = d.multiply(w, b.words[v])
        if len(target) <= b.radius:
            cols.append({b.index[target]: Fraction(1)})
        else:
            cols.append({})
    return TruncatedOperator(b, cols, len(w), True)


def proj_p(d: CoxeterDiagram, word: Sequence[str], b: Ball) -> TruncatedOperator:
    """Diagonal projection onto span{delta_v : word <= v}."""
    w = d.normal_form(word)
    one = Fraction(1)
    mask = b.prefix_mask(w)
    cols = [({v: one} if mask[v] else {}) for v in range(len(b))]
    return TruncatedOperator(b, cols, 0, True)


def proj_clique(d: CoxeterDiagram, gamma: Sequence[str], b: Ball) -> TruncatedOperator:
    """P_Gamma = product of P_s over a commuting set (equals P of the product)."""
    word: Word = ()
    for s in gamma:
        word = d.multiply(word, (s,))
    return proj_p(d, word, b)


def conjugate_action(d: CoxeterDiagram, word: Sequence[str],
                     x: TruncatedOperator) -> TruncatedOperator:
    """w.x = T_w^(1) x T_{w^-1}^(1), with reach increased by 2|w|."""
    w = d.normal_form(word)
    left = rep_group_word(d, w, x.ball)
    right = rep_group_word(d, d.inverse(w), x.ball)
    return left @ x @ right


def q_operator(d: CoxeterDiagram, u: Sequence[str], q: Fraction, b: Ball,
               cutoff: int) -> tuple[TruncatedOperator, float, Fraction]:
    """Partial sum of Q_q^u = sum_{l >= |u|} sum_{|w| = l, u <= w^-1} q^l P_w.

    Returns (diagonal operator, tail bound, fitted prefix-count constant).
    The tail bound is C * sum_{l > cutoff} q^l l^(rank-2) with C fitted so
    that every enumerated prefix count kappa_v(l) is at most C*max(l,1)^(rank-2).
    """
    if not (0 < q < 1):
        raise ValueError("q must lie strictly between 0 and 1")
    uw = d.normal_form(u)
    q = Fraction(q)
    exponent = max(d.rank - 2, 0)
    memo: dict = {}
    diag = []
    c_fit = Fraction(0)
    for v in range(len(b)):
        entry = Fraction(0)
        counts: dict[int, int] = {}
        for p in enumeration.prefixes(d, b.words[v], _memo=memo):
            l = len(p)
            counts[l] = counts.get(l, 0) + 1
        for l, cnt in counts.items():
            c_fit = max(c_fit, Fraction(cnt, max(l, 1) ** exponent))
            if l < len(uw) or l > cutoff:
                continue
            hit = 0
            for p in enumeration.prefixes(d, b.words[v], _memo=memo):
                if len(p) == l and d.starts_with(uw, d.inverse(p)):
                    hit += 1
            if hit:
                entry += q ** l * hit
        diag.append(entry)
    # rigorous geometric majorant of the tail sum
    tail = Fraction(0)
    l = cutoff + 1
    ratio = q * Fraction((l + 1) ** exponent, l ** exponent)
    if ratio < 1:
        head = q ** l * l ** exponent
        tail = c_fit * head / (1 - ratio)
    else:
        term = q ** l * l ** exponent
        while term > Fraction(1, 10 ** 30):
            tail += term
            l += 1
            term = q ** l * l ** exponent
        tail *= c_fit * 2
    op = TruncatedOperator.diagonal(b, diag, reach=0, exact=True)
    return op, float(tail), c_fit


def op_norm(x: TruncatedOperator, iters: int = 40, seed: int = 0) -> float:
    """Norm of the compression matrix: dense for small balls, power iteration
    otherwise.  Either way a certified lower bound on the operator norm."""
    n = len(x.ball)
    if n <= DENSE_LIMIT:
        return float(np.linalg.norm(x.to_dense(), 2))
    rng = np.random.default_rng(seed)
    rows = x.transpose()
    vec = rng.standard_normal(n)
    vec /= np.linalg.norm(vec)
    est = 0.0
    for _ in range(iters):
        img = np.asarray(x.apply(vec), dtype=float)
        nrm = np.linalg.norm(img)
        if nrm == 0:
            return 0.0
        est = max(est, nrm / np.linalg.norm(vec))
        vec = np.asarray(rows.apply(img), dtype=float)
        vec /= np.linalg.norm(vec)
    return est


def spectrum_bounds(x: TruncatedOperator, tol: float = 1e-9) -> tuple[float, float]:
    """(min, max) eigenvalue of a self-adjoint compression."""
    n = len(x.ball)
    if n > DENSE_LIMIT:
        raise ValueError("ball too large for a dense eigensolver")
    m = x.to_dense()
    if not np.allclose(m, m.T, atol=tol):
        raise ValueError("operator is not self-adjoint")
    vals = np.linalg.eigvalsh((m + m.T) / 2)
    return float(vals[0]), float(vals[-1])


def exact_psd(matrix: list[list[Fraction]]) -> bool:
    """Exact positive-semidefiniteness via fraction-free symmetric elimination."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    for i in range(n):
        piv = m[i][i]
        if piv < 0:
            return False
        if piv == 0:
            if any(m[i][j] != 0 for j in range(i + 1, n)):
                return False
            continue
        for r in range(i + 1, n):
            f = m[r][i] / piv
            if f == 0:
                continue
            for c in range(i, n):
                m[r][c] -= f * m[i][c]
    return True


def positivity_window(params: MultiParameter, word: Sequence[str], n: int,
                      tol: float = 1e-9, certify_exact: bool = False
                      ) -> tuple[float, float]:
    """Spectral range of the compression of (T_w)* T_w, asserted to lie in
    [prod min(q_s^{+-1}), prod max(q_s^{+-1})] over the letters of w.

    Float mode uses a dense eigensolver with tolerance ``tol``; with
    ``certify_exact`` the containment is additionally certified by exact
    semidefinite elimination (zero tolerance).
    """
    d = params.diagram
    w = d.normal_form(word)
    if n < 2 * len(w):
        raise ValueError("ball radius must be at least twice the word length")
    lo_bound = Fraction(1) if params.exact else 1.0
    hi_bound = Fraction(1) if params.exact else 1.0
    for s in w:
        qs = params.q[s]
        lo_bound *= min(qs, 1 / qs)
        hi_bound *= max(qs, 1 / qs)
    b = ball(d, n)
    a = HeckeElement.basis(params, w)
    gram = rep_hecke(a.adjoint() * a, b)
    lo, hi = spectrum_bounds(gram, tol=tol)
    if lo < float(lo_bound) - tol or hi > float(hi_bound) + tol:
        raise AssertionError(
            f"window violated: [{lo}, {hi}] vs [{float(lo_bound)}, {float(hi_bound)}]"
        )
    if certify_exact:
        if not params.exact:
            raise ValueError("exact certification needs exact parameters")
        nn = len(b)
        dense = [[Fraction(0)] * nn for _ in range(nn)]
        for v, col in enumerate(gram.cols):
            for r, val in col.items():
                dense[r][v] = val
        shift_lo = [[dense[i][j] - (lo_bound if i == j else 0) for j in range(nn)]
                    for i in range(nn)]
        shift_hi = [[(hi_bound if i == j else 0) - dense[i][j] for j in range(nn)]
                    for i in range(nn)]
        if not (exact_psd(shift_lo) and exact_psd(shift_hi)):
            raise AssertionError("exact window certification failed")
    return lo, hi


# -- identity suites ---------------------------------------------------------


def verify_action_case(d: CoxeterDiagram, s: str, w: Sequence[str], b: Ball):
    """Residual of the matching case of the conjugation rule for s.P_w.

    Returns (case, residual) with residual exact 0 expected; comparisons are
    restricted to columns where neither side is affected by truncation.
    """
    wnf = d.normal_form(w)
    pw = proj_p(d, wnf, b)
    lhs = conjugate_action(d, (s,), pw)
    sw = d.multiply((s,), wnf)
    domain = b.radius - 2 - len(sw)
    if d.centralizes(s, wnf):
        if d.starts_with((s,), wnf):
            case = 2
            rhs = proj_p(d, sw, b) - pw
        else:
            case = 3
            rhs = pw
    else:
        case = 1
        rhs = proj_p(d, sw, b)
    return case, lhs.max_abs_difference(rhs, max_col_length=domain)


def verify_action_case_fast(d: CoxeterDiagram, s: str, w: Sequence[str], b: Ball) -> tuple[int, int]:
    """Same check as verify_action_case via index tables only (q == 1, so the
    conjugated projection is diagonal: entry at v is [w <= s*v])."""
    wnf = d.normal_form(w)
    si = d.gen_index(s)
    sw = d.multiply((s,), wnf)
    ok_domain = b.length <= b.radius - 1
    mask_w = b.prefix_mask(wnf)
    sv = b.lmul[si]
    lhs = np.where(sv >= 0, mask_w[np.where(sv >= 0, sv, 0)], False).astype(np.int64)
    pw = mask_w.astype(np.int64)
    psw = b.prefix_mask(sw).astype(np.int64)
    if d.centralizes(s, wnf):
        if d.starts_with((s,), wnf):
            case, rhs = 2, psw - pw
        else:
            case, rhs = 3, pw
    else:
        case, rhs = 1, psw
    bad = int(np.abs((lhs - rhs)[ok_domain]).max()) if ok_domain.any() else 0
    return case, bad


def verify_remark22(params: MultiParameter, s: str, w: Sequence[str], b: Ball):
    """Residuals of T_s(1-P_s)T_s = P_s and T_s P_w T_s = P_{sw}
    (the latter for w outside the centralizer of s with s not below w)."""
    d = params.diagram
    ts = rep_hecke(HeckeElement.basis(params, (s,)), b)
    ps = proj_p(d, (s,), b)
    ident = TruncatedOperator.identity(b, exact=params.exact)
    first = (ts @ (ident - ps) @ ts).max_abs_difference(ps, max_col_length=b.radius - 2)
    wnf = d.normal_form(w)
    if d.centralizes(s, wnf) or d.starts_with((s,), wnf):
        raise ValueError("second identity needs w outside C(s) with s not below w")
    sw = d.multiply((s,), wnf)
    second = (ts @ proj_p(d, wnf, b) @ ts).max_abs_difference(
        proj_p(d, sw, b), max_col_length=b.radius - 2 - len(sw))
    return first, second


def verify_cliq_identity(params: MultiParameter, w: Sequence[str], b: Ball):
    """Residual of the clique decomposition of T_w on the exactness domain."""
    from .hecke import cliq_decomposition

    d = params.diagram
    wnf = d.normal_form(w)
    if b.radius < len(wnf) + 2:
        raise ValueError("ball too small")
    lhs = rep_hecke(HeckeElement.basis(params, wnf), b)
    one = MultiParameter.one(d)
    rhs = TruncatedOperator.zero(b, exact=params.exact)
    for wp, gamma, wpp, coeff in cliq_decomposition(params, wnf):
        term = rep_group_word(d, wp, b) @ proj_clique(d, gamma, b) @ rep_group_word(d, wpp, b)
        rhs = rhs + term.scaled(coeff)
    return lhs.max_abs_difference(rhs, max_col_length=b.radius - len(wnf))


def verify_corollary_split(params: MultiParameter, g: Sequence[str], power: int,
                           b: Ball):
    """Residual of T_{g^l} = T_{g^l}^(1) + P_{s_1} x with the telescoped x.

    Returns (residual, number of terms of x).  The telescoping takes
    x = sum_i p_{t_i} P_{t_1..t_i} T^(1) over the word with t_i removed.
    """
    d = params.diagram
    gw = tuple(g)
    letters = gw * power
    word = d.normal_form(letters)
    if len(word) != len(letters):
        raise ValueError("g^l is not reduced; not a diagram path")
    if b.radius < len(letters) + 2:
        raise ValueError("ball too small")
    lhs = rep_hecke(HeckeElement.basis(params, word), b)
    rhs = rep_group_word(d, word, b)
    terms = 0
    x_total = TruncatedOperator.zero(b, exact=params.exact)
    for i in range(len(letters)):
        t = letters[i]
        p = params.p(t)
        if p == 0:
            continue
        prefix = letters[: i + 1]
        rest = letters[:i] + letters[i + 1:]
        term = proj_p(d, d.normal_form(prefix), b) @ rep_group_word(d, rest, b)
        x_total = x_total + term.scaled(p)
        terms += 1
    ps1 = proj_p(d, (letters[0],), b)
    rhs = rhs + (ps1 @ x_total)
    residual = lhs.max_abs_difference(rhs, max_col_length=b.radius - len(letters) - 1)
    return residual, terms


# -- fast engine for large balls ---------------------------------------------


class BallAction:
    """Compressed generator actions T_s on a ball as sparse matrices.

    Row v of T_s holds the coefficient 1 at column s*v (when s*v stays in the
    ball) and p_s at column v on the descent set.  Stored CSR in float32; the
    downstream uses (norm ratios with 10% tolerances) are insensitive to
    single precision.
    """

    def __init__(self, b: Ball, p_values: Mapping[str, float]):
        import scipy.sparse as sparse

        self.ball = b
        n = len(b)
        self.mats = []
        self.p = [float(p_values[s]) for s in b.diagram.generators]
        for i in range(b.diagram.rank):
            lm = np.asarray(b.lmul[i])
            valid = lm >= 0
            rows = [np.nonzero(valid)[0]]
            cols = [lm[valid]]
            data = [np.ones(int(valid.sum()), dtype=np.float32)]
            p = self.p[i]
            if p != 0.0:
                dv = np.nonzero(np.asarray(b.ldesc[i]))[0]
                rows.append(dv)
                cols.append(dv)
                data.append(np.full(len(dv), p, dtype=np.float32))
            mat = sparse.csr_matrix(
                (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
                shape=(n, n), dtype=np.float32,
            )
            self.mats.append(mat)

    def apply_gen(self, i: int, vec: np.ndarray) -> np.ndarray:
        return self.mats[i] @ vec


def _word_tree(diagram: CoxeterDiagram, words: list[Word]) -> dict:
    """Trie over the words keyed by generator index; leaves hold word slots."""
    root: dict = {}
    for slot, w in enumerate(words):
        node = root
        for s in w:
            node = node.setdefault(diagram.gen_index(s), {})
        node[-1] = slot
    return root


def _apply_tree(action: BallAction, node: dict, coeffs: np.ndarray,
                vec: np.ndarray) -> np.ndarray:
    out = None
    for key, sub in node.items():
        if key == -1:
            term = coeffs[sub] * vec
        else:
            term = action.apply_gen(key, _apply_tree(action, sub, coeffs, vec))
        if out is None:
            out = term
        else:
            out += term
    if out is None:
        return np.zeros_like(vec)
    return out


def sphere_operator_norms(action: BallAction, trees: tuple[dict, dict],
                          coeff_matrix: np.ndarray, iters: int = 12,
                          seed: int = 0) -> np.ndarray:
    """Lower-bound estimates of || sum_w c_w T_w || on the compression for a
    batch of coefficient vectors (columns of ``coeff_matrix``), by power
    iteration on the normal operator.

    Every estimate ||x v|| / ||v|| is a valid lower bound, so the running
    maximum over the iterations is reported per column.
    """
    tree, tree_adj = trees
    n = len(action.ball)
    g = coeff_matrix.shape[1]
    rng = np.random.default_rng(seed)
    vec = rng.standard_normal((n, g)).astype(np.float32)
    vec /= np.linalg.norm(vec, axis=0)
    coeffs = coeff_matrix.astype(np.float32)
    est = np.zeros(g)
    for _ in range(iters):
        img = _apply_tree(action, tree, coeffs, vec)
        nrm = np.linalg.norm(img, axis=0).astype(float)
        base = np.linalg.norm(vec, axis=0).astype(float)
        est = np.maximum(est, np.where(base > 0, nrm / np.maximum(base, 1e-30), 0.0))
        if not nrm.any():
            break
        vec = _apply_tree(action, tree_adj, coeffs, img)
        scale = np.linalg.norm(vec, axis=0)
        vec /= np.maximum(scale, np.float32(1e-30))
    return est


def sphere_operator_norm(action: BallAction, trees: tuple[dict, dict],
                         coeffs: np.ndarray, iters: int = 12,
                         seed: int = 0) -> float:
    return float(sphere_operator_norms(action, trees,
                                       np.asarray(coeffs)[:, None],
                                       iters=iters, seed=seed)[0])


_ACTION_CACHE: dict = {}


def _cached_action(d: CoxeterDiagram, n: int, q: float) -> BallAction:
    key = (d.key(), n, q)
    got = _ACTION_CACHE.get(key)
    if got is None:
        b = ball(d, n)
        p = (q - 1.0) / math.sqrt(q)
        got = BallAction(b, {s: p for s in d.generators})
        _ACTION_CACHE[key] = got
    return got


def haagerup_ratio(d: CoxeterDiagram, q: float, l: int, n: int,
                   trials: int, seed: int = 0, iters: int = 8,
                   batch: int = 8) -> dict:
    """Sampled ratios ||x|| / (l ||x||_2) for x supported on the l-sphere.

    Coefficients are seeded standard normals; compression norms are power
    iteration lower bounds, batched over samples.  Returns per-trial ratios
    and their maximum, a lower bound for the best constant in the
    linear-in-l bound on sphere-supported operators.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    if n < l + 2:
        raise ValueError("need n >= l + 2")
    action = _cached_action(d, n, float(q))
    b = action.ball
    words = [b.words[v] for v in b.sphere(l)]
    trees = (_word_tree(d, words), _word_tree(d, [d.inverse(w) for w in words]))
    rng = np.random.default_rng(seed)
    samples = rng.standard_normal((len(words), trials))
    ratios: list[float] = []
    for lo in range(0, trials, batch):
        chunk = samples[:, lo:lo + batch]
        tops = sphere_operator_norms(action, trees, chunk, iters=iters, seed=seed)
        l2s = np.linalg.norm(chunk, axis=0)
        ratios.extend((tops / (l * l2s)).tolist())
    return {"l": l, "n": n, "q": float(q), "trials": trials,
            "ratios": ratios, "max_ratio": max(ratios)}
