"""Decoders for IRS, FRS and MULT codes built on module minimization.

Each decoder interpolates Q_0, Q_1..Q_h from the received word, asks
:func:`minimize.solve` for the minimal (E, C_1..C_h), divides and
re-encodes.  Fixed-degree linear systems are kept for rank experiments
and as an independent oracle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import codes
from .codes import CodeSpec, Message, Word
from .errors import BudgetExceeded, DegenerateProblem, InvalidParameters, ShapeMismatch
from .linalg import MAX_ENTRIES, kernel, rank
from .minimize import MinimizeProblem, solve
from .poly import (HermiteContext, Polynomial, SubproductTree, binom_mod, horner, norm, pdivrem,
                   taylor_values)

I64 = np.int64


class FailReason(str, enum.Enum):
    INEXACT_DIVISION = "InexactDivision"
    DEGREE_OVERFLOW = "DegreeOverflow"
    DISTANCE_EXCEEDED = "DistanceExceeded"
    DEGENERATE_INTERPOLANT = "DegenerateInterpolant"


@dataclass(frozen=True)
class DecodeResult:
    message: Message | None
    reason: FailReason | None = None
    max_degree: int | None = None
    locator_degree: int | None = None
    distance: int | None = None
    extra: dict = dc_field(default_factory=dict, compare=False)

    @property
    def success(self):
        return self.message is not None

    def __bool__(self):
        return self.success


# --- theory -------------------------------------------------------------------


def radius(spec: CodeSpec, L=None) -> Fraction:
    """Largest admissible e (as an exact fraction) for the family's decoder."""
    n, k, s = spec.n, spec.k, spec.s
    if spec.family in ("RS", "IRS"):
        return Fraction(s, s + 1) * (n - k)
    L = _check_L(spec, L)
    r = s - L + 1
    if spec.family == "FRS":
        return Fraction(L, L + 1) * (n - Fraction(k, r))
    return Fraction(L, L + 1) * (n - Fraction(k, r) - 1)


def adversarial_cap(spec: CodeSpec, e, L=None) -> Fraction:
    """Largest admissible e0 for a given e."""
    n, k = spec.n, spec.k
    if spec.family in ("RS", "IRS"):
        return Fraction(min(e, n - k - e))
    L = _check_L(spec, L)
    return min(Fraction(e), n - e - Fraction(k, spec.s - L + 1))


def in_region(spec: CodeSpec, e0, e, L=None) -> bool:
    return 0 <= e0 <= e and e <= radius(spec, L) and e0 <= adversarial_cap(spec, e, L)


def failure_bound(spec: CodeSpec, e, L=None) -> Fraction:
    """Theorem-level bound on the decoding failure probability (may exceed 1)."""
    if spec.family in ("RS", "IRS"):
        return Fraction(e, spec.q)
    L = _check_L(spec, L)
    return Fraction(e * (spec.s - L + 1), spec.q)


def _check_L(spec, L):
    if spec.family in ("RS", "IRS"):
        return spec.s
    if L is None:
        raise InvalidParameters(f"{spec.family} decoding needs L")
    L = int(L)
    if not 1 <= L <= spec.s:
        raise InvalidParameters(f"need 1 <= L <= s, got L={L}, s={spec.s}")
    return L


# --- interpolation contexts -----------------------------------------------------


class _Context:
    """Everything about Q_0 and the interpolation that depends only on the code."""

    def __init__(self, spec: CodeSpec, L):
        self.spec, self.L = spec, L
        F = spec.field
        fam = spec.family
        if fam in ("RS", "IRS"):
            self.tree = spec.tree()
            self.q0 = self.tree.product
        elif fam == "FRS":
            r = spec.s - L + 1
            pts = spec.eval_points().reshape(spec.n, spec.s)[:, :r].reshape(-1)
            self.tree = spec.tree() if r == spec.s else SubproductTree(F, pts)
            self.q0 = self.tree.product
        else:
            r = spec.s - L + 1
            self.hermite = HermiteContext(F, spec.alphas, r)
            self.q0 = self.hermite.tree_w.product
            # binom(j-1, h-1) for the Hermite data of Q_h
            self.weights = np.array([[int(binom_mod(np.array([t + h]), h, F.p)[0]) for t in range(r)]
                                     for h in range(L)], dtype=I64)

    def interpolants(self, y: np.ndarray):
        spec, L = self.spec, self.L
        F = spec.field
        fam = spec.family
        if fam in ("RS", "IRS"):
            return [self.tree.interpolate(y[:, h]) for h in range(spec.s)]
        r = spec.s - L + 1
        if fam == "FRS":
            return [self.tree.interpolate(y[:, h:h + r].reshape(-1)) for h in range(L)]
        return [self.hermite.interpolate(F.mul(y[:, h:h + r], self.weights[h][None, :]))
                for h in range(L)]


def context(spec: CodeSpec, L=None) -> _Context:
    L = _check_L(spec, L)
    key = ("decode", L)
    ctx = spec._cache.get(key)
    if ctx is None:
        ctx = _Context(spec, L)
        spec._cache[key] = ctx
    return ctx


def interpolation_problem(spec: CodeSpec, y: Word, L=None) -> MinimizeProblem:
    codes.check_word(spec, y)
    ctx = context(spec, L)
    F = spec.field
    qs = [Polynomial._wrap(F, norm(q)) for q in ctx.interpolants(y.symbols)]
    return MinimizeProblem(Polynomial._wrap(F, ctx.q0), qs, spec.k)


# --- decoders ---------------------------------------------------------------------


def _finish(spec: CodeSpec, y: Word, e, sol, n_div):
    """Divide B_h by E, check degrees and distance."""
    F = spec.field
    E = sol.e
    diag = dict(max_degree=sol.max_degree, locator_degree=E.degree if not E.is_zero() else None)
    if E.is_zero():
        return DecodeResult(None, FailReason.DEGENERATE_INTERPOLANT, **diag)
    polys = []
    for h in range(n_div):
        B = sol.components[h + 1].coeffs
        f, r = pdivrem(F, B, E.coeffs)
        if len(r):
            return DecodeResult(None, FailReason.INEXACT_DIVISION, **diag)
        if len(f) > spec.k:
            return DecodeResult(None, FailReason.DEGREE_OVERFLOW, **diag)
        polys.append(Polynomial._wrap(F, f))
    msg = Message(polys)
    d = codes.distance(y, codes.encode(spec, msg))
    if d > e:
        return DecodeResult(None, FailReason.DISTANCE_EXCEEDED, distance=d, **diag)
    return DecodeResult(msg, None, distance=d, **diag)


def _decode(spec, y, e, L, method):
    if not 0 <= e <= spec.n:
        raise InvalidParameters(f"need 0 <= e <= n, got e={e}")
    problem = interpolation_problem(spec, y, L)
    try:
        sol = solve(problem, method)
    except DegenerateProblem:
        return DecodeResult(None, FailReason.DEGENERATE_INTERPOLANT)
    n_div = spec.s if spec.family == "IRS" else 1
    return _finish(spec, y, e, sol, n_div)


def decode_irs(spec: CodeSpec, y: Word, e: int, method="auto") -> DecodeResult:
    """Interleaved RS decoding (plain RS when s = 1, i.e. Berlekamp-Welch)."""
    if spec.family not in ("RS", "IRS"):
        raise InvalidParameters("RS or IRS spec expected")
    return _decode(spec, y, e, None, method)


def decode_frs(spec: CodeSpec, y: Word, L: int, e: int, method="auto") -> DecodeResult:
    if spec.family != "FRS":
        raise InvalidParameters("FRS spec expected")
    return _decode(spec, y, e, L, method)


def decode_mult(spec: CodeSpec, y: Word, L: int, e: int, method="auto") -> DecodeResult:
    if spec.family != "MULT":
        raise InvalidParameters("MULT spec expected")
    return _decode(spec, y, e, L, method)


def decode(spec: CodeSpec, y: Word, e: int, L=None, method="auto") -> DecodeResult:
    if spec.family in ("RS", "IRS"):
        return decode_irs(spec, y, e, method)
    if spec.family == "FRS":
        return decode_frs(spec, y, L, e, method)
    return decode_mult(spec, y, L, e, method)


def decode_subfield_rs(spec: CodeSpec, w: Word, e: int, E=None) -> DecodeResult:
    """Decode an RS word over F_{q^s} with subfield points by going through the IRS decoder.

    ``spec`` is the IRS code; ``w`` lives in the companion extension.
    """
    E = codes.companion_extension(spec) if E is None else E
    res = decode_irs(spec, codes.subfield_rs_to_irs(spec, w, E), e)
    if not res.success:
        return res
    return DecodeResult(codes.combine_message(spec, res.message, E), None, res.max_degree,
                        res.locator_degree, res.distance)


# --- fixed-degree systems -------------------------------------------------------


def _vand(F, x, lo, hi):
    """Columns x^lo .. x^hi."""
    cols = hi - lo + 1
    out = np.zeros((len(x), max(cols, 0)), dtype=I64)
    if cols <= 0:
        return out
    cur = F.pow(x, lo) if lo else np.ones(len(x), dtype=I64)
    for c in range(cols):
        out[:, c] = cur
        cur = F.mul(cur, x)
    return out


def eval_matrix(F, alphas, w, lo, hi):
    """Hasse-derivative evaluation matrix: row (j, r) holds binom(d, r) alpha_j^(d-r)."""
    alphas = F.asarray(alphas)
    w = np.broadcast_to(np.asarray(w, dtype=I64), alphas.shape)
    rows = []
    degs = np.arange(lo, hi + 1, dtype=I64)
    for a, wj in zip(alphas, w):
        pw = codes.geometric(F, a, max(hi + 1, 1))
        for r in range(int(wj)):
            ex = degs - r
            vals = np.where(ex >= 0, pw[np.maximum(ex, 0)], 0)
            rows.append(F.mul(vals, binom_mod(degs, r, F.p)))
    return np.array(rows, dtype=I64).reshape(-1, len(degs))


def lower(F, c):
    """Lower-triangular Toeplitz matrix with first column c."""
    r = len(c)
    out = np.zeros((r, r), dtype=I64)
    for i in range(r):
        out[i, : i + 1] = c[i::-1]
    return out


@dataclass
class BlockMatrix:
    matrix: np.ndarray
    y_column: np.ndarray
    blocks: int
    a_cols: int
    e_cols: int
    rows_per_block: int

    @property
    def shape(self):
        return self.matrix.shape


def _blocks(spec: CodeSpec, y: Word, ebar, L, a_extra):
    """Per-family M, N_h and the E_0 columns Y_h."""
    F = spec.field
    k, s = spec.k, spec.s
    Y = y.symbols
    fam = spec.family
    a_top = k - 1 + (ebar if a_extra is None else a_extra)
    if fam in ("RS", "IRS"):
        M = _vand(F, spec.alphas, 0, a_top)
        N = _vand(F, spec.alphas, 1, ebar)
        Ns = [F.mul(Y[:, h, None], N) for h in range(s)]
        Ys = [Y[:, h].copy() for h in range(s)]
        return M, Ns, Ys
    L = _check_L(spec, L)
    r = s - L + 1
    if fam == "FRS":
        pts = spec.eval_points().reshape(spec.n, s)[:, :r].reshape(-1)
        M = _vand(F, pts, 0, a_top)
        N = _vand(F, pts, 1, ebar)
        Ns, Ys = [], []
        for h in range(L):
            d = Y[:, h:h + r].reshape(-1)
            Ns.append(F.mul(d[:, None], N))
            Ys.append(d.copy())
        return M, Ns, Ys
    M = eval_matrix(F, spec.alphas, r, 0, a_top)
    N = eval_matrix(F, spec.alphas, r, 1, ebar) if ebar > 0 else np.zeros((spec.n * r, 0), I64)
    Ns, Ys = [], []
    for h in range(L):
        wts = np.array([int(binom_mod(np.array([i + h]), h, F.p)[0]) for i in range(r)], I64)
        Lh = np.zeros((spec.n * r, spec.n * r), dtype=I64)
        for j in range(spec.n):
            Lh[j * r:(j + 1) * r, j * r:(j + 1) * r] = lower(F, F.mul(Y[j, h:h + r], wts))
        Ns.append(_matmul(F, Lh, N))
        Ys.append(F.mul(Y[:, h:h + r], wts[None, :]).reshape(-1))
    return M, Ns, Ys


def _matmul(F, A, B):
    if A.shape[1] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=I64)
    if F.is_prime and F.p < (1 << 31):
        out = np.zeros((A.shape[0], B.shape[1]), dtype=I64)
        for t in range(A.shape[1]):
            out = (out + A[:, t, None] * B[None, t, :]) % F.p
        return out
    return F.sum(F.mul(A[:, :, None], B[None, :, :]), axis=1)


def build_block_matrix(spec: CodeSpec, y: Word, ebar: int, L=None, a_extra=None) -> BlockMatrix:
    """The stacked matrix [M .. -N_h] for locator degree ebar.

    ``a_extra`` sets deg A_h <= k - 1 + a_extra (defaults to ebar).
    """
    codes.check_word(spec, y)
    ebar = int(ebar)
    if ebar < 0:
        raise InvalidParameters("ebar must be >= 0")
    M, Ns, Ys = _blocks(spec, y, ebar, L, a_extra)
    b = len(Ns)
    R, C = M.shape
    total = b * C + ebar
    if b * R * (total + 1) > MAX_ENTRIES:
        raise BudgetExceeded(f"block matrix {b * R}x{total} exceeds the budget")
    F = spec.field
    B = np.zeros((b * R, total), dtype=I64)
    for h in range(b):
        B[h * R:(h + 1) * R, h * C:(h + 1) * C] = M
        B[h * R:(h + 1) * R, b * C:] = F.neg(Ns[h])
    return BlockMatrix(B, np.concatenate(Ys), b, C, ebar, R)


def rank_of(spec: CodeSpec, bm: BlockMatrix) -> int:
    return rank(spec.field, bm.matrix)


def full_column_rank(spec: CodeSpec, bm: BlockMatrix) -> bool:
    return rank_of(spec, bm) == bm.shape[1]


@dataclass(frozen=True)
class FixedSolution:
    a: tuple  # A_1..A_b as Polynomials
    e: Polynomial


def fixed_degree_solve(spec: CodeSpec, y: Word, ebar: int, L=None, a_extra=None):
    """Kernel basis of (B | -Y): every (A_h, E) solving the interpolation equations.

    Unknowns are the A_h coefficients, then E_1..E_ebar, then E_0.
    """
    bm = build_block_matrix(spec, y, ebar, L, a_extra)
    F = spec.field
    full = np.concatenate([bm.matrix, F.neg(bm.y_column)[:, None]], axis=1)
    basis = kernel(F, full)
    out = []
    C = bm.a_cols
    for v in basis:
        a = tuple(Polynomial(F, v[h * C:(h + 1) * C]) for h in range(bm.blocks))
        ecoef = np.concatenate([v[-1:], v[bm.blocks * C:bm.blocks * C + ebar]])
        out.append(FixedSolution(a, Polynomial(F, ecoef)))
    return out


def satisfies_interpolation(spec: CodeSpec, y: Word, A, E: Polynomial, L=None) -> bool:
    """Direct check of the interpolation equations for (A_h, E)."""
    F = spec.field
    Y = y.symbols
    fam = spec.family
    if fam in ("RS", "IRS"):
        ev = [horner(F, norm(a.coeffs), spec.alphas) for a in A]
        eE = horner(F, norm(E.coeffs), spec.alphas)
        return all(np.array_equal(ev[h], F.mul(Y[:, h], eE)) for h in range(spec.s))
    L = _check_L(spec, L)
    r = spec.s - L + 1
    if fam == "FRS":
        pts = spec.eval_points().reshape(spec.n, spec.s)[:, :r]
        eE = horner(F, norm(E.coeffs), pts.reshape(-1)).reshape(spec.n, r)
        for h in range(L):
            ev = horner(F, norm(A[h].coeffs), pts.reshape(-1)).reshape(spec.n, r)
            if not np.array_equal(ev, F.mul(Y[:, h:h + r], eE)):
                return False
        return True
    eT = taylor_values(F, E.coeffs, spec.alphas, r)
    for h in range(L):
        wts = np.array([int(binom_mod(np.array([i + h]), h, F.p)[0]) for i in range(r)], I64)
        c = F.mul(Y[:, h:h + r], wts[None, :])
        aT = taylor_values(F, A[h].coeffs, spec.alphas, r)
        for i in range(r):
            rhs = np.zeros(spec.n, dtype=I64)
            for l in range(i + 1):
                rhs = F.add(rhs, F.mul(c[:, i - l], eT[:, l]))
            if not np.array_equal(aT[:, i], rhs):
                return False
    return True


def intended_locator(spec: CodeSpec, msg: Message, y: Word, L=None) -> Polynomial:
    """Locator vanishing on the corrupted positions (with multiplicity for MULT).

    IRS: prod (1 - X/alpha_i) over differing symbols.  FRS: the same over the
    folded points that carry a wrong value in any of the L shifted windows.
    MULT: prod (X - alpha_j)^{d_j} with d_j reduced by the derivatives that
    are still correct.
    """
    F = spec.field
    c = codes.encode(spec, msg).symbols
    Y = y.symbols
    fam = spec.family
    one = Polynomial.one(F)
    E = one
    if fam in ("RS", "IRS"):
        for i in np.flatnonzero(np.any(c != Y, axis=1)):
            a = spec.alphas[i]
            E = E * Polynomial(F, [1, F.neg(F.inv(a))])
        return E
    L = _check_L(spec, L)
    r = spec.s - L + 1
    if fam == "FRS":
        pts = spec.eval_points().reshape(spec.n, spec.s)
        bad = c != Y
        for j in range(spec.n):
            for i in range(r):
                if bad[j, i:i + L].any():
                    E = E * Polynomial(F, [F.neg(pts[j, i]), 1])
        return E
    for j in range(spec.n):
        wrong = np.flatnonzero(c[j] != Y[j])
        if len(wrong) == 0:
            continue
        first = int(wrong[0]) + 1  # w'_j
        d = r - max(first - L, 0)
        for _ in range(d):
            E = E * Polynomial(F, [F.neg(spec.alphas[j]), 1])
    return E


def constructed_solution(spec: CodeSpec, msg: Message, y: Word, L=None):
    """(A_h, E) with A_h = f_h E (IRS) or the shifted/derived analogues."""
    F = spec.field
    E = intended_locator(spec, msg, y, L)
    fam = spec.family
    if fam in ("RS", "IRS"):
        return tuple(f * E for f in msg.polys), E
    L = _check_L(spec, L)
    f = msg.polys[0]
    if fam == "FRS":
        g = spec.gamma
        out = []
        for h in range(L):
            scale = codes.geometric(F, F.pow(g, h), len(f.coeffs))
            out.append(Polynomial(F, F.mul(f.coeffs, scale)) * E)  # f(g^h X) E(X)
        return tuple(out), E
    return tuple(f.hasse(h) * E for h in range(L)), E


def check_shape(spec: CodeSpec, y: Word):
    if y.symbols.shape != (spec.n, spec.s):
        raise ShapeMismatch("word does not match the code")
