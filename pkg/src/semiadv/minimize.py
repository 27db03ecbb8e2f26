"""Minimal-degree elements of the interpolation module.

Given Q_0, Q_1..Q_h and a shift k, the module is generated by the rows
(X^{k-1}, Q_1, ..., Q_h) and Q_0 e_i for i = 1..h.  A nonzero element of
least max-degree (all-constant elements excluded) is read off a weak
Popov basis.  The basis is computed by Mulders-Storjohann leading-term
cancellation with a fixed pivot rule, either step by step on the whole
matrix or by a divide-and-conquer driver that replays the very same
steps on truncated row windows, so both paths return identical bits.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BudgetExceeded, DegenerateProblem, FieldMismatch, InvalidParameters
from .field import Field
from .linalg import kernel as field_kernel
from .poly import NEG_INF, Polynomial, norm, pdivrem, pmod, pmul, polymat_mul, psub
from .settings import settings

I64 = np.int64
_MAX_STEPS = 1 << 62
_EXACT = 1 << 40  # valid bound meaning 'every coefficient is exact'


@dataclass(frozen=True)
class MinimizeProblem:
    q0: Polynomial
    qs: tuple
    shift: int

    def __post_init__(self):
        qs = tuple(self.qs)
        object.__setattr__(self, "qs", qs)
        if self.q0.is_zero():
            raise InvalidParameters("Q_0 must be nonzero")
        if int(self.shift) < 1:
            raise InvalidParameters("shift k must be >= 1")
        for q in qs:
            if q.field != self.q0.field:
                raise FieldMismatch("all polynomials must share one field")

    @property
    def field(self) -> Field:
        return self.q0.field

    @property
    def h(self):
        return len(self.qs)


class MinimizeSolution:
    """(E, C_1..C_h) with the component degrees d_0..d_h."""

    def __init__(self, problem, e, components):
        self.problem = problem
        self.e = e
        self.components = tuple(components)  # X^{k-1}E, B_1, ..., B_h
        self.degrees = tuple(c.degree for c in self.components)
        self.max_degree = max(self.degrees)

    @functools.cached_property
    def cs(self):
        F = self.problem.field
        out = []
        for q, b in zip(self.problem.qs, self.components[1:]):
            num = psub(F, b.coeffs, pmul(F, q.coeffs, self.e.coeffs))
            c, r = pdivrem(F, num, self.problem.q0.coeffs)
            assert len(r) == 0, "component is not in the module"
            out.append(Polynomial._wrap(F, c))
        return tuple(out)

    @property
    def b(self):
        return self.components[1:]

    def __repr__(self):
        return f"MinimizeSolution(degrees={self.degrees}, max_degree={self.max_degree})"


def _entry_degrees(V):
    m1, m2, L = V.shape
    nz = V != 0
    idx = np.where(nz, np.arange(L), -1)
    return idx.max(axis=2)  # -1 for zero entries


def _row_degrees(V):
    return _entry_degrees(V).max(axis=1)


def generator_matrix(problem: MinimizeProblem):
    F = problem.field
    k = int(problem.shift)
    h = problem.h
    m = h + 1
    q0 = problem.q0.coeffs
    reduced = [pmod(F, q.coeffs, q0) for q in problem.qs]
    L = max(k, len(q0), *(len(r) for r in reduced)) if reduced else max(k, len(q0))
    V = np.zeros((m, m, L), dtype=I64)
    V[0, 0, k - 1] = 1
    for i, r in enumerate(reduced):
        V[0, i + 1, : len(r)] = r
        V[i + 1, i + 1, : len(q0)] = q0
    return V


# ---------------------------------------------------------------------------
# iterative reduction
# ---------------------------------------------------------------------------


def _scratch(m):
    return (np.zeros(m, I64), np.zeros(m, I64), np.zeros((m, m, 1), I64),
            np.zeros(m, I64), np.zeros(m, I64), np.zeros(m, I64))


def _reduce_iterative_prime(F, V):
    V = np.ascontiguousarray(V.copy())
    m, _, L = V.shape
    base = np.zeros(m, I64)
    valid = np.full(m, -_EXACT, I64)
    deg = np.full(m, L - 1, I64)
    lp, lc, U, ulo, uhi, href = _scratch(m)
    status, steps = kernels.k("ms_kernel")(V, base, valid, deg, lp, lc, U, ulo, uhi, href,
                                           False, F.p, _MAX_STEPS)
    if status != kernels.DONE:
        raise DegenerateProblem("generator matrix is singular")
    return V, steps


def _reduce_iterative_generic(F, V):
    """Same pivot rule with field-generic arithmetic (extension fields)."""
    V = V.copy()
    m = V.shape[0]
    steps = 0

    def info(i):
        d = _entry_degrees(V[i:i + 1])[0]
        r = d.max()
        if r < 0:
            return -1, -1, 0
        l = int(np.flatnonzero(d == r)[-1])
        return int(r), l, V[i, l, r]

    deg, lp, lc = [0] * m, [0] * m, [0] * m
    for i in range(m):
        deg[i], lp[i], lc[i] = info(i)
    while True:
        if min(deg) < 0:
            raise DegenerateProblem("generator matrix is singular")
        ri = -1
        for i in range(m):
            if any(j != i and lp[j] == lp[i] and deg[j] <= deg[i] for j in range(m)):
                if ri < 0 or deg[i] > deg[ri]:
                    ri = i
        if ri < 0:
            return V, steps
        rj = -1
        for j in range(m):
            if j != ri and lp[j] == lp[ri] and (rj < 0 or deg[j] < deg[rj]):
                rj = j
        i, j = ri, rj
        delta = deg[i] - deg[j]
        c = F.div(lc[i], lc[j])
        hi = deg[i] + 1
        V[i, :, delta:hi] = F.sub(V[i, :, delta:hi], F.mul(V[j, :, : hi - delta], c))
        deg[i], lp[i], lc[i] = info(i)
        steps += 1


# ---------------------------------------------------------------------------
# divide and conquer on row windows
# ---------------------------------------------------------------------------


class _Window:
    """Row i holds X^d at A[i, :, d - h[i] + G]; exact for d >= v[i]."""

    __slots__ = ("A", "h", "v")

    def __init__(self, A, h, v):
        self.A, self.h, self.v = A, h, v

    @property
    def G(self):
        return self.A.shape[2] - 1

    def base(self):
        return self.h - self.G

    def degrees(self):
        """Row degrees inside the exact region; values below v mean unknown."""
        A = self.A
        m = A.shape[0]
        G = self.G
        any_nz = (A != 0).any(axis=1)  # (m, G+1)
        out = np.empty(m, I64)
        for i in range(m):
            lo = max(int(self.v[i] - self.h[i] + G), 0)
            nz = np.flatnonzero(any_nz[i, lo:])
            out[i] = (lo + nz[-1] + self.h[i] - G) if len(nz) else self.v[i] - 1
        return out

    def restrict(self, tau):
        deg = self.degrees()
        v = np.where(deg >= self.v, np.maximum(self.v, deg - tau), self.v)
        return self.trimmed(v)

    def trimmed(self, v):
        G2 = int(max(1, (self.h - v).max()))
        G = self.G
        if G2 >= G:
            return _Window(self.A.copy(), self.h, v.copy())
        return _Window(np.ascontiguousarray(self.A[:, :, G - G2:]), self.h, v.copy())


def _trim_band(U, S):
    nz = np.flatnonzero((U != 0).any(axis=(0, 1)))
    if len(nz) == 0:
        return U[:, :, :1].copy(), S
    lo, hi = int(nz[0]), int(nz[-1])
    return np.ascontiguousarray(U[:, :, lo:hi + 1]), S - lo


def _leaf(F, win: _Window, stats):
    m = win.A.shape[0]
    A = np.ascontiguousarray(win.A)
    base = win.base().astype(I64)
    v = win.v.astype(I64).copy()
    deg = win.h.astype(I64).copy()
    lp = np.zeros(m, I64)
    lc = np.zeros(m, I64)
    cap = 4 * (win.G + 8)
    S = cap // 2
    U = np.zeros((m, m, cap), I64)
    for i in range(m):
        U[i, i, S] = 1
    ulo = np.full(m, S, I64)
    uhi = np.full(m, S, I64)
    href = win.h.astype(I64)
    total = 0
    while True:
        status, steps = kernels.k("ms_kernel")(A, base, v, deg, lp, lc, U, ulo, uhi, href,
                                               True, F.p, _MAX_STEPS)
        total += steps
        if status != kernels.U_FULL:
            break
        pad = U.shape[2]
        U2 = np.zeros((m, m, 3 * pad), I64)
        U2[:, :, pad:2 * pad] = U
        U, S = U2, S + pad
        ulo += pad
        uhi += pad
    stats["leaves"] = stats.get("leaves", 0) + 1
    # re-base the output rows on their new degrees so later windows stay short
    hout = np.where(deg >= v, np.minimum(deg, href), href)
    U, S = _shift_rows(U, S, href - hout)
    return U, S, hout, total, status


def _shift_rows(U, S, delta):
    # U[i, l, t] -> U[i, l, t + delta[i]]
    m, _, L = U.shape
    D = int(delta.max())
    if D > 0:
        out = np.zeros((m, m, L + D), I64)
        for i in range(m):
            out[i, :, delta[i]:delta[i] + L] = U[i]
        U = out
    return _trim_band(U, S)


def _apply(F, U, S, hout, win: _Window):
    """Window of U * rows; the result uses hout as reference tops.

    U[i, l, t] stands for X^(t + hout[i] - h[l] - S) with h the window tops.
    """
    h, v, G = win.h, win.v, win.G
    m = U.shape[0]
    P = polymat_mul(F, U, win.A)
    edeg = _entry_degrees(U)  # top index per entry, -1 if zero
    nv = np.empty(m, I64)
    for i in range(m):
        best = None
        for j in range(m):
            if edeg[i, j] >= 0:
                cand = v[j] + edeg[i, j] + hout[i] - h[j] - S
                best = cand if best is None else max(best, cand)
        nv[i] = best
    G2 = int(max(1, (hout - nv).max()))
    start = S + G - G2
    A = np.ascontiguousarray(P[:, :, max(start, 0):start + G2 + 1])
    if start < 0:
        A = np.concatenate([np.zeros((m, m, -start), I64), A], axis=2)
    if A.shape[2] < G2 + 1:
        A = np.concatenate([A, np.zeros((m, m, G2 + 1 - A.shape[2]), I64)], axis=2)
    return _Window(A, hout.copy(), nv)


def _compose(F, U2, S2, U1, S1):
    return _trim_band(polymat_mul(F, U2, U1), S1 + S2)


def _rec(F, win: _Window, tau, stats):
    win = win.restrict(tau)
    if tau <= settings.reduction_leaf:
        return _leaf(F, win, stats)
    t1 = tau // 2
    U1, S1, h1, n1, st1 = _rec(F, win, t1, stats)
    if n1 == 0 or st1 == kernels.DONE:
        return U1, S1, h1, n1, st1
    mid = _apply(F, U1, S1, h1, win)
    U2, S2, h2, n2, st2 = _rec(F, mid, tau - t1, stats)
    if n2 == 0:
        return U1, S1, h1, n1, st2
    U, S = _compose(F, U2, S2, U1, S1)
    return U, S, h2, n1 + n2, st2


def _apply_exact(F, U, S, hout, V, h):
    m, _, L = V.shape
    G = int(h.max())
    A = np.zeros((m, m, G + 1), I64)
    for j in range(m):
        A[j, :, G - h[j]:G + 1] = V[j, :, : h[j] + 1]
    P = polymat_mul(F, U, A)
    out = np.zeros_like(V)
    for i in range(m):
        lo = S + G - hout[i]
        seg = P[i, :, max(lo, 0):lo + hout[i] + 1]
        out[i, :, max(-lo, 0):max(-lo, 0) + seg.shape[1]] = seg
    return out


def _reduce_dc(F, V, stats=None):
    stats = {} if stats is None else stats
    V = V.copy()
    m = V.shape[0]
    steps = 0
    while True:
        h = _row_degrees(V).astype(I64)
        if h.min() < 0:
            raise DegenerateProblem("generator matrix is singular")
        tau = int(h.max()) + 1
        G = tau
        A = np.zeros((m, m, G + 1), I64)
        for j in range(m):
            lo = G - h[j]
            A[j, :, lo:] = V[j, :, : h[j] + 1]
        win = _Window(A, h, h - tau)
        U, S, hout, n, status = _rec(F, win, tau, stats)
        stats["rounds"] = stats.get("rounds", 0) + 1
        if n == 0:
            return V, steps
        V = _apply_exact(F, U, S, hout, V, h)
        steps += n
        if status == kernels.DONE:
            return V, steps


def weak_popov(F: Field, V, method="auto", stats=None):
    """Reduce the square polynomial matrix V (rows, cols, length)."""
    if not F.is_prime:
        return _reduce_iterative_generic(F, V)[0]
    if method == "auto":
        use_dc = settings.fast and V.shape[2] > 4 * settings.reduction_leaf
        method = "dc" if use_dc else "iterative"
    if method == "dc":
        return _reduce_dc(F, V, stats)[0]
    if method == "iterative":
        return _reduce_iterative_prime(F, V)[0]
    raise InvalidParameters(f"unknown method {method!r}")


def is_weak_popov(V):
    ed = _entry_degrees(V)
    r = ed.max(axis=1)
    if r.min() < 0:
        return False
    lps = [int(np.flatnonzero(ed[i] == r[i])[-1]) for i in range(V.shape[0])]
    return len(set(lps)) == len(lps)


# ---------------------------------------------------------------------------
# solution extraction
# ---------------------------------------------------------------------------


def _solution_from_row(problem, row):
    F = problem.field
    k = int(problem.shift)
    comps = [Polynomial._wrap(F, norm(row[l])) for l in range(row.shape[0])]
    c0 = comps[0].coeffs
    if len(c0) and np.any(c0[: k - 1] != 0):
        raise AssertionError("first component is not divisible by X^(k-1)")
    e = Polynomial._wrap(F, c0[k - 1:] if len(c0) else c0)
    return MinimizeSolution(problem, e, comps)


def _key(degs):
    return (max(degs), tuple(degs))


def select_row(F, V):
    """Minimal non-constant row (after the X multiple rule), normalized."""
    m = V.shape[0]
    ed = _entry_degrees(V)
    best = None
    for i in range(m):
        row = V[i]
        degs = ed[i]
        if degs.max() <= 0:
            row = np.concatenate([np.zeros((m, 1), I64), row], axis=1)
            degs = np.where(degs >= 0, degs + 1, -1)
        key = _key([int(d) for d in degs])
        if best is None or key < best[0]:
            best = (key, row)
    row = best[1]
    degs = np.array(best[0][1])
    r = degs.max()
    l = int(np.flatnonzero(degs == r)[-1])
    return F.mul(row, F.inv(row[l, r]))


def solve(problem: MinimizeProblem, method="auto", stats=None) -> MinimizeSolution:
    F = problem.field
    V = generator_matrix(problem)
    W = weak_popov(F, V, method, stats)
    return _solution_from_row(problem, select_row(F, W))


# ---------------------------------------------------------------------------
# brute force oracle
# ---------------------------------------------------------------------------

BRUTE_MAX_Q0 = 64


def brute_force_solve(problem: MinimizeProblem) -> MinimizeSolution:
    """Smallest D with a valid nonzero element of max-degree <= D, by linear algebra."""
    F = problem.field
    k = int(problem.shift)
    h = problem.h
    q0 = problem.q0.coeffs
    n0 = len(q0) - 1
    if n0 > BRUTE_MAX_Q0:
        raise BudgetExceeded(f"deg Q_0 = {n0} exceeds the brute-force budget")
    qs = [q.coeffs for q in problem.qs]
    bound = max(n0, k, 1) + max((len(q) for q in qs), default=0) + 2
    for D in range(0, bound + 1):
        dE = D - (k - 1)
        nE = max(dE + 1, 0)
        # C_i may need degree up to deg(Q_i E) - deg Q_0 to cancel high terms
        nC = [max(max(D, len(q) - 1 + dE) - n0 + 1, 0) for q in qs]
        nvar = nE + sum(nC)
        if nvar == 0:
            continue
        comp_len = max([D + 2, k + nE] + [len(q) + nE for q in qs] + [n0 + c + 1 for c in nC])
        images = np.zeros((nvar, h + 1, comp_len), I64)
        for t in range(nE):
            images[t, 0, k - 1 + t] = 1
            for i, q in enumerate(qs):
                images[t, i + 1, t:t + len(q)] = q
        off = nE
        for i in range(h):
            for t in range(nC[i]):
                images[off + t, i + 1, t:t + len(q0)] = q0
            off += nC[i]
        # equations: all coefficients above D vanish
        eqs = images[:, :, D + 1:].reshape(nvar, -1).T
        K = field_kernel(F, eqs) if eqs.shape[0] else np.eye(nvar, dtype=I64)
        for vec in K:
            comps = np.zeros((h + 1, comp_len), I64)
            for t in np.flatnonzero(vec):
                comps = F.add(comps, F.mul(images[t], vec[t]))
            if np.any(comps[:, 1:] != 0):
                return _solution_from_row(problem, comps)
    raise DegenerateProblem("no admissible element found")


def check_membership(problem: MinimizeProblem, sol: MinimizeSolution):
    """Recompute every component from (E, C) and compare with the stored values."""
    F = problem.field
    k = int(problem.shift)
    first = sol.e.shift(k - 1)
    if first != sol.components[0]:
        return False
    for q, c, b in zip(problem.qs, sol.cs, sol.components[1:]):
        if q * sol.e + problem.q0 * c != b:
            return False
    degs = tuple(c.degree for c in sol.components)
    return degs == sol.degrees and max(degs) == sol.max_degree and sol.max_degree > 0
