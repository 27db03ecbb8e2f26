"""Dense univariate polynomials and the fast algorithms built on them.

Raw routines work on normalized int64 coefficient arrays (constant term
first, no trailing zeros; the zero polynomial is the empty array).
:class:`Polynomial` wraps them as immutable values.
"""

from __future__ import annotations

import functools

import numpy as np

from . import kernels
from .errors import DivideByZero, DuplicatePoint, FieldMismatch, InvalidParameters
from .field import Field, find_generator
from .settings import settings

I64 = np.int64
NEG_INF = float("-inf")
EMPTY = np.zeros(0, dtype=I64)


def norm(a):
    a = np.asarray(a, dtype=I64)
    if len(a) == 0 or a[-1] != 0:
        return a
    nz = np.flatnonzero(a)
    if len(nz) == 0:
        return EMPTY
    return a[: nz[-1] + 1]


def degree(a):
    return len(a) - 1 if len(a) else NEG_INF


def _pad(a, n):
    if len(a) >= n:
        return a
    out = np.zeros(n, dtype=I64)
    out[: len(a)] = a
    return out


def padd(F, a, b):
    n = max(len(a), len(b))
    return norm(F.add(_pad(a, n), _pad(b, n)))


def psub(F, a, b):
    n = max(len(a), len(b))
    return norm(F.sub(_pad(a, n), _pad(b, n)))


def pscale(F, a, c):
    return norm(F.mul(a, c))


def pshift(a, k):
    """Multiply by X^k."""
    if len(a) == 0:
        return a
    return np.concatenate([np.zeros(k, dtype=I64), a])


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------


def _powers(root, count, p):
    out = np.ones(count, dtype=I64)
    filled = 1
    step = root % p
    while filled < count:
        take = min(filled, count - filled)
        out[filled:filled + take] = out[:take] * step % p
        filled += take
        step = step * step % p
    return out


@functools.lru_cache(maxsize=64)
def _ntt_tables(p, N):
    F = _prime_field(p)
    g = find_generator(F).value
    w = pow(g, (p - 1) // N, p)
    bits = N.bit_length() - 1
    idx = np.arange(N, dtype=I64)
    rev = np.zeros(N, dtype=I64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)

    def twiddles(root):
        tw = np.zeros(max(N, 2), dtype=I64)
        half = 1
        while half < N:
            tw[half:2 * half] = _powers(pow(root, N // (2 * half), p), half, p)
            half *= 2
        return tw

    tw, itw = twiddles(w), twiddles(pow(w, p - 2, p))
    return rev, tw, (tw << 32) // p, itw, (itw << 32) // p, pow(N, p - 2, p)


def _prime_field(p):
    from .field import make_field

    return make_field(p)


def ntt_capacity(F):
    return 1 << F.two_adicity if F.is_prime else 0


def ntt(a, p, N, inverse=False):
    """Batched transform over the last axis (length N, a power of two)."""
    rev, tw, twq, itw, itwq, ninv = _ntt_tables(p, N)
    a = np.ascontiguousarray(a.reshape(-1, N))
    if inverse:
        return kernels.k("ntt")(a, rev, itw, itwq, p, ninv)
    return kernels.k("ntt")(a, rev, tw, twq, p, 1)


def _next_pow2(n):
    return 1 << max(0, (n - 1).bit_length())


def _ntt_mul(a, b, p):
    n = len(a) + len(b) - 1
    N = _next_pow2(n)
    A = np.zeros((2, N), dtype=I64)
    A[0, : len(a)] = a
    A[1, : len(b)] = b
    T = ntt(A, p, N)
    C = ntt((T[0] * T[1] % p)[None, :], p, N, inverse=True)[0]
    return C[:n]


def _karatsuba(a, b, p, thr):
    return kernels.k("karatsuba")(np.ascontiguousarray(a), np.ascontiguousarray(b), p, thr)


def _mul_generic(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = np.zeros(len(a) + len(b) - 1, dtype=I64)
    for i, c in enumerate(b):
        if c:
            out[i:i + len(a)] = F.add(out[i:i + len(a)], F.mul(a, c))
    return out


def pmul(F: Field, a, b):
    """Product of normalized coefficient arrays."""
    a = np.asarray(a, dtype=I64)
    b = np.asarray(b, dtype=I64)
    if len(a) == 0 or len(b) == 0:
        return EMPTY
    if not F.is_prime:
        return norm(_mul_generic(F, a, b))
    p = F.p
    short, long_ = min(len(a), len(b)), max(len(a), len(b))
    if not settings.fast or short < settings.karatsuba_threshold:
        out = kernels.k("conv")(a, b, p)
    elif F.ntt_friendly and long_ >= settings.ntt_threshold and len(a) + len(b) - 1 <= ntt_capacity(F):
        out = _ntt_mul(a, b, p)
    else:
        out = _karatsuba(a, b, p, settings.karatsuba_threshold)
    return norm(out)


def mul_schoolbook(F, a, b):
    if len(a) == 0 or len(b) == 0:
        return EMPTY
    if not F.is_prime:
        return norm(_mul_generic(F, a, b))
    return norm(kernels.k("conv")(a, b, F.p))


def polymat_mul(F: Field, A, B):
    """Product of polynomial matrices stored as (rows, cols, length) arrays."""
    m, kk, la = A.shape
    kk2, n, lb = B.shape
    if kk != kk2:
        raise InvalidParameters("inner dimensions differ")
    if la == 0 or lb == 0:
        return np.zeros((m, n, 0), dtype=I64)
    p = F.p
    L = la + lb - 1
    if not F.is_prime:
        out = np.zeros((m, n, L), dtype=I64)
        for i in range(m):
            for l in range(n):
                acc = EMPTY
                for j in range(kk):
                    acc = padd(F, acc, pmul(F, norm(A[i, j]), norm(B[j, l])))
                out[i, l, : len(acc)] = acc
        return out
    if (settings.fast and F.ntt_friendly and min(la, lb) >= settings.karatsuba_threshold
            and L <= ntt_capacity(F)):
        N = _next_pow2(L)
        TA = np.zeros((m * kk, N), dtype=I64)
        TA[:, :la] = A.reshape(m * kk, la)
        TB = np.zeros((kk * n, N), dtype=I64)
        TB[:, :lb] = B.reshape(kk * n, lb)
        TA = ntt(TA, p, N).reshape(m, kk, N)
        TB = ntt(TB, p, N).reshape(kk, n, N)
        acc = kernels.k("pointwise")(TA, TB, p)
        return ntt(acc.reshape(m * n, N), p, N, inverse=True).reshape(m, n, N)[:, :, :L]
    if min(la, lb) < settings.karatsuba_threshold or not settings.fast:
        return kernels.k("polymat")(np.ascontiguousarray(A), np.ascontiguousarray(B), p)
    out = np.zeros((m, n, L), dtype=I64)
    for i in range(m):
        for l in range(n):
            acc = np.zeros(L, dtype=I64)
            for j in range(kk):
                prod = _karatsuba(A[i, j], B[j, l], p, settings.karatsuba_threshold)
                acc[: len(prod)] = (acc[: len(prod)] + prod) % p
            out[i, l] = acc
    return out


# ---------------------------------------------------------------------------
# division
# ---------------------------------------------------------------------------


def series_inverse(F, f, l):
    """g with f g = 1 mod X^l (requires f[0] != 0)."""
    if len(f) == 0 or f[0] == 0:
        raise DivideByZero("series inverse needs a unit constant term")
    g = np.array([F.inv(f[0])], dtype=I64)
    k = 1
    while k < l:
        k = min(2 * k, l)
        fg = _pad(pmul(F, norm(f[:k]), g)[:k], k)
        t = F.neg(fg)
        t[0] = F.add(t[0], 2 % F.p)
        g = _pad(pmul(F, g, norm(t))[:k], k)
    return g[:l]


def _rev(a, n):
    """X^(n-1) a(1/X) for len(a) <= n."""
    return _pad(a, n)[::-1].copy()


def _divrem_newton(F, a, b, binv=None):
    da, db = len(a) - 1, len(b) - 1
    l = da - db + 1
    if binv is None or len(binv) < l:
        binv = series_inverse(F, _rev(b, db + 1), l)
    qr = pmul(F, norm(_rev(a, da + 1)[:l]), norm(binv[:l]))[:l]
    q = norm(_rev(_pad(qr, l), l))
    qb = pmul(F, q, b)
    r = norm(F.sub(a[:db], _pad(qb[:db], db))) if db > 0 else EMPTY
    return q, r


def _divrem_generic(F, a, b):
    r = a.copy()
    lb = len(b)
    lq = len(a) - lb + 1
    q = np.zeros(lq, dtype=I64)
    inv = F.inv(b[-1])
    for k in range(lq - 1, -1, -1):
        c = F.mul(r[k + lb - 1], inv)
        q[k] = c
        if c:
            r[k:k + lb] = F.sub(r[k:k + lb], F.mul(b, c))
    return norm(q), norm(r[: lb - 1])


def pdivrem(F: Field, a, b, binv=None):
    """(q, r) with a = q b + r and deg r < deg b."""
    a = norm(a)
    b = norm(b)
    if len(b) == 0:
        raise DivideByZero("division by the zero polynomial")
    if len(a) < len(b):
        return EMPTY, a
    if not F.is_prime:
        return _divrem_generic(F, a, b)
    lq = len(a) - len(b) + 1
    if settings.fast and lq >= settings.newton_threshold and len(b) >= settings.newton_threshold:
        return _divrem_newton(F, a, b, binv)
    q, r = kernels.k("divrem")(np.ascontiguousarray(a), np.ascontiguousarray(b), F.p)
    return norm(q), norm(r)


def pmod(F, a, b, binv=None):
    return pdivrem(F, a, b, binv)[1]


# ---------------------------------------------------------------------------
# derivatives and binomials
# ---------------------------------------------------------------------------


def _small_binom(nd, i, p):
    out = np.ones(nd.shape, dtype=I64)
    fact = 1
    for t in range(i):
        out = out * ((nd - t) % p) % p
        fact = fact * (t + 1) % p
    return out * pow(fact, p - 2, p) % p


def binom_mod(N, i, p):
    """binom(N, i) mod p elementwise over the integer array N (Lucas)."""
    N = np.asarray(N, dtype=I64)
    out = np.ones(N.shape, dtype=I64)
    i = int(i)
    if i < 0:
        return np.zeros(N.shape, dtype=I64)
    while i > 0:
        out = out * _small_binom(N % p, i % p, p) % p
        N = N // p
        i //= p
    return out


def hasse(F: Field, f, i):
    """i-th Hasse derivative: coefficient j is binom(j+i, i) f_{j+i}."""
    i = int(i)
    if i < 0:
        raise InvalidParameters("negative derivative order")
    if i == 0:
        return f
    if len(f) <= i:
        return EMPTY
    js = np.arange(len(f) - i, dtype=I64)
    b = binom_mod(js + i, i, F.p)
    return norm(F.mul(f[i:], b))


# ---------------------------------------------------------------------------
# evaluation, vanishing polynomials, interpolation
# ---------------------------------------------------------------------------


def horner(F, f, xs):
    xs = np.asarray(xs, dtype=I64)
    if len(f) == 0:
        return np.zeros(len(xs), dtype=I64)
    if F.is_prime:
        return kernels.k("horner")(np.ascontiguousarray(f), np.ascontiguousarray(xs), F.p)
    acc = np.zeros(len(xs), dtype=I64)
    for c in f[::-1]:
        acc = F.add(F.mul(acc, xs), c)
    return acc


def _linear_product(F, xs):
    if F.is_prime:
        return kernels.k("linear_product")(np.ascontiguousarray(xs, dtype=I64), F.p)
    out = np.array([1], dtype=I64)
    for x in xs:
        out = pmul(F, out, np.array([F.neg(x), 1], dtype=I64))
    return out


def _synthetic_quotients(F, poly, xs):
    d = len(poly) - 1
    Q = np.zeros((len(xs), d), dtype=I64)
    if d == 0:
        return Q
    Q[:, d - 1] = poly[d]
    for t in range(d - 1, 0, -1):
        Q[:, t - 1] = F.add(poly[t], F.mul(xs, Q[:, t]))
    return Q


class _Node:
    __slots__ = ("lo", "hi", "poly", "left", "right", "binv", "cofactors")

    def __init__(self, lo, hi, poly, left=None, right=None):
        self.lo, self.hi, self.poly = lo, hi, poly
        self.left, self.right = left, right
        self.binv = None
        self.cofactors = None

    @property
    def leaf(self):
        return self.left is None


class SubproductTree:
    """Balanced product tree over points, each factor raised to ``multiplicity``."""

    def __init__(self, F: Field, points, multiplicity=1, leaf_size=None):
        self.F = F
        self.points = np.ascontiguousarray(F.asarray(points))
        self.w = int(multiplicity)
        if self.w < 1:
            raise InvalidParameters("multiplicity must be >= 1")
        self.leaf_size = leaf_size or settings.tree_leaf
        self._dinv = None  # 1 / P'(a_j), filled by the first interpolation
        n = len(self.points)
        self.root = self._build(0, n) if n else _Node(0, 0, np.array([1], dtype=I64))

    def _build(self, lo, hi):
        if hi - lo <= self.leaf_size:
            pts = np.repeat(self.points[lo:hi], self.w)
            return _Node(lo, hi, _linear_product(self.F, pts))
        mid = (lo + hi) // 2
        left, right = self._build(lo, mid), self._build(mid, hi)
        return _Node(lo, hi, pmul(self.F, left.poly, right.poly), left, right)

    @property
    def product(self):
        return self.root.poly

    def _rem(self, r, node):
        lb = len(node.poly)
        if len(r) < lb:
            return r
        F = self.F
        need = len(r) - lb + 1
        thr = settings.newton_threshold
        if F.is_prime and settings.fast and need >= thr and lb >= thr:
            if node.binv is None or len(node.binv) < need:
                node.binv = series_inverse(F, _rev(node.poly, lb), max(need, lb))
        return pdivrem(F, r, node.poly, node.binv)[1]

    def evaluate(self, f):
        """f at every point (points may repeat)."""
        f = norm(f)
        n = len(self.points)
        if n < settings.horner_threshold or not settings.fast:
            return horner(self.F, f, self.points)
        out = np.zeros(n, dtype=I64)
        stack = [(self.root, self._rem(f, self.root))]
        while stack:
            node, r = stack.pop()
            if node.leaf:
                out[node.lo:node.hi] = horner(self.F, r, self.points[node.lo:node.hi])
            else:
                stack.append((node.left, self._rem(r, node.left)))
                stack.append((node.right, self._rem(r, node.right)))
        return out

    def _combine_scalar(self, node, c):
        F = self.F
        if node.leaf:
            pts = self.points[node.lo:node.hi]
            cs = c[node.lo:node.hi]
            if F.is_prime:
                return norm(kernels.k("leaf_combine")(node.poly, pts, np.ascontiguousarray(cs), F.p))
            Q = _synthetic_quotients(F, node.poly, pts)
            return norm(F.sum(F.mul(Q, cs[:, None]), axis=0))
        a = pmul(F, self._combine_scalar(node.left, c), node.right.poly)
        b = pmul(F, self._combine_scalar(node.right, c), node.left.poly)
        return padd(F, a, b)

    def interpolate(self, values):
        """Lagrange interpolation through (points, values); points must be distinct."""
        if self.w != 1:
            raise InvalidParameters("interpolate needs a multiplicity-1 tree")
        F = self.F
        values = F.asarray(values)
        n = len(self.points)
        if n == 0:
            return EMPTY
        if F.is_prime and not settings.fast:
            return norm(kernels.k("naive_lagrange")(self.points, np.ascontiguousarray(values), F.p))
        if self._dinv is None:
            d = self.evaluate(hasse(F, self.root.poly, 1))
            if np.any(d == 0):
                raise DuplicatePoint("interpolation points are not distinct")
            self._dinv = F.inv(d)
        c = F.mul(values, self._dinv)
        return self._combine_scalar(self.root, c)

    def _combine_poly(self, node, polys):
        F = self.F
        if node.leaf:
            if node.cofactors is None:
                node.cofactors = [
                    pdivrem(F, node.poly, _linear_product(F, np.repeat(self.points[j:j + 1], self.w)))[0]
                    for j in range(node.lo, node.hi)]
            acc = EMPTY
            for j, cof in zip(range(node.lo, node.hi), node.cofactors):
                acc = padd(F, acc, pmul(F, cof, norm(polys[j])))
            return acc
        a = pmul(F, self._combine_poly(node.left, polys), node.right.poly)
        b = pmul(F, self._combine_poly(node.right, polys), node.left.poly)
        return padd(F, a, b)

    def combine(self, polys):
        """sum_j (P / m_j) polys_j where P is the root product and m_j = (X - a_j)^w."""
        if len(self.points) == 0:
            return EMPTY
        return self._combine_poly(self.root, polys)


def check_distinct(points):
    pts = np.asarray(points)
    if len(np.unique(pts)) != len(pts):
        raise DuplicatePoint("points are not pairwise distinct")


def vanishing(F: Field, points, multiplicity=1):
    """prod (X - a)^multiplicity over the points (monic)."""
    points = F.asarray(points)
    w = int(multiplicity)
    if w < 1:
        raise InvalidParameters("multiplicity must be >= 1")
    if len(points) == 0:
        return np.array([1], dtype=I64)
    if not settings.fast:
        return _linear_product(F, np.repeat(points, w))
    return SubproductTree(F, points, w).product


def multipoint_eval(F: Field, f, points, tree=None):
    points = F.asarray(points)
    if tree is None:
        if not settings.fast or len(points) < settings.horner_threshold:
            return horner(F, norm(f), points)
        tree = SubproductTree(F, points)
    return tree.evaluate(f)


def lagrange(F: Field, points, values, tree=None):
    points = F.asarray(points)
    values = F.asarray(values)
    if len(points) != len(values):
        raise InvalidParameters("points and values differ in length")
    check_distinct(points)
    if tree is None:
        tree = SubproductTree(F, points)
    return tree.interpolate(values)


def _series_inverse_rows(F, S):
    """Row-wise inverse of truncated power series S (n, w)."""
    n, w = S.shape
    G = np.zeros_like(S)
    inv0 = F.inv(S[:, 0])
    G[:, 0] = inv0
    for t in range(1, w):
        acc = np.zeros(n, dtype=I64)
        for i in range(1, t + 1):
            acc = F.add(acc, F.mul(S[:, i], G[:, t - i]))
        G[:, t] = F.neg(F.mul(acc, inv0))
    return G


def _series_mul_rows(F, A, B):
    n, w = A.shape
    out = np.zeros_like(A)
    for t in range(w):
        acc = np.zeros(n, dtype=I64)
        for i in range(t + 1):
            acc = F.add(acc, F.mul(A[:, i], B[:, t - i]))
        out[:, t] = acc
    return out


def _unshift_rows(F, U, xs):
    """Row j holds u(z); return coefficients of u(X - x_j) in X."""
    n, w = U.shape
    out = np.zeros_like(U)
    negx = F.neg(xs)
    powers = [np.ones(n, dtype=I64)]
    for _ in range(1, w):
        powers.append(F.mul(powers[-1], negx))
    for l in range(w):
        acc = np.zeros(n, dtype=I64)
        for t in range(l, w):
            b = int(binom_mod(np.array([t]), l, F.p)[0])
            acc = F.add(acc, F.mul(F.mul(U[:, t], powers[t - l]), b))
        out[:, l] = acc
    return out


class HermiteContext:
    """Precomputed trees for repeated Hermite interpolation on fixed points."""

    def __init__(self, F: Field, points, w):
        self.F = F
        self.points = F.asarray(points)
        check_distinct(self.points)
        self.w = int(w)
        self.tree_w = SubproductTree(F, self.points, self.w)
        self.tree_1 = SubproductTree(F, self.points)
        M = self.tree_w.product
        S = np.stack([self.tree_1.evaluate(hasse(F, M, self.w + i)) for i in range(self.w)], axis=1)
        if np.any(S[:, 0] == 0):
            raise DuplicatePoint("points are not pairwise distinct")
        self.Sinv = _series_inverse_rows(F, S)

    def interpolate(self, values):
        F = self.F
        values = F.asarray(values).reshape(len(self.points), self.w)
        if self.w == 1:
            return self.tree_1.interpolate(values[:, 0])
        U = _series_mul_rows(F, values, self.Sinv)
        P = _unshift_rows(F, U, self.points)
        return self.tree_w.combine(P)


def hermite(F: Field, points, values):
    """Least-degree f with f^{(i)}(points_j) = values[j, i] for i < s.

    Works from Taylor data at each point, so no restriction on the
    characteristic beyond the points being distinct.
    """
    values = np.asarray(values, dtype=I64)
    if values.ndim == 1:
        values = values[:, None]
    points = F.asarray(points)
    if len(points) != values.shape[0]:
        raise InvalidParameters("points and values differ in length")
    if len(points) == 0:
        return EMPTY
    return HermiteContext(F, points, values.shape[1]).interpolate(values)


def taylor_values(F, f, points, s, tree=None):
    """(n, s) array of f^{(i)}(points_j) for i < s."""
    cols = [multipoint_eval(F, hasse(F, f, i), points, tree) for i in range(s)]
    return np.stack(cols, axis=1) if cols else np.zeros((len(points), 0), dtype=I64)


# ---------------------------------------------------------------------------
# value type
# ---------------------------------------------------------------------------


class Polynomial:
    """Immutable polynomial over a :class:`Field`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        c = norm(field.asarray(np.asarray(coeffs, dtype=I64).reshape(-1)))
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def _wrap(cls, field, arr):
        obj = object.__new__(cls)
        arr = np.array(arr, dtype=I64)
        arr.setflags(write=False)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "coeffs", arr)
        return obj

    @classmethod
    def zero(cls, F):
        return cls._wrap(F, EMPTY)

    @classmethod
    def one(cls, F):
        return cls._wrap(F, np.array([1], dtype=I64))

    @classmethod
    def x(cls, F):
        return cls._wrap(F, np.array([0, 1], dtype=I64))

    @classmethod
    def monomial(cls, F, k, c=1):
        arr = np.zeros(k + 1, dtype=I64)
        arr[k] = F.reduce_scalar(c)
        return cls._wrap(F, norm(arr))

    @property
    def degree(self):
        return degree(self.coeffs)

    def is_zero(self):
        return len(self.coeffs) == 0

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def leading(self):
        return int(self.coeffs[-1]) if len(self.coeffs) else 0

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other.coeffs
        return norm(np.array([self.field.reduce_scalar(other)], dtype=I64))

    def __add__(self, o):
        return Polynomial._wrap(self.field, padd(self.field, self.coeffs, self._coerce(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return Polynomial._wrap(self.field, psub(self.field, self.coeffs, self._coerce(o)))

    def __rsub__(self, o):
        return Polynomial._wrap(self.field, psub(self.field, self._coerce(o), self.coeffs))

    def __neg__(self):
        return Polynomial._wrap(self.field, self.field.neg(self.coeffs))

    def __mul__(self, o):
        return Polynomial._wrap(self.field, pmul(self.field, self.coeffs, self._coerce(o)))

    __rmul__ = __mul__

    def divrem(self, o):
        q, r = pdivrem(self.field, self.coeffs, self._coerce(o))
        return Polynomial._wrap(self.field, q), Polynomial._wrap(self.field, r)

    __divmod__ = divrem

    def __floordiv__(self, o):
        return self.divrem(o)[0]

    def __mod__(self, o):
        return self.divrem(o)[1]

    def __call__(self, x):
        v = horner(self.field, self.coeffs, np.array([self.field.reduce_scalar(x)], dtype=I64))
        return int(v[0])

    def evaluate(self, points, tree=None):
        return multipoint_eval(self.field, self.coeffs, points, tree)

    def hasse(self, i):
        return Polynomial._wrap(self.field, hasse(self.field, self.coeffs, i))

    def shift(self, k):
        return Polynomial._wrap(self.field, pshift(self.coeffs, k))

    def monic(self):
        if self.is_zero():
            return self
        return Polynomial._wrap(self.field, self.field.mul(self.coeffs, self.field.inv(self.coeffs[-1])))

    def __eq__(self, o):
        if isinstance(o, Polynomial):
            return self.field == o.field and np.array_equal(self.coeffs, o.coeffs)
        if isinstance(o, (int, np.integer)):
            return np.array_equal(self.coeffs, norm(np.array([self.field.reduce_scalar(o)], dtype=I64)))
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key(), self.coeffs.tobytes()))

    def __len__(self):
        return len(self.coeffs)

    def to_list(self):
        return [int(c) for c in self.coeffs]

    def __repr__(self):
        if self.is_zero():
            return f"Polynomial({self.field!r}, 0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = self.field.element_str(c)
            terms.append(cs if i == 0 else (f"{cs}*X^{i}" if i > 1 else f"{cs}*X"))
        return f"Polynomial({self.field!r}, {' + '.join(terms)})"


def poly_vanishing(F, points, multiplicity=1):
    return Polynomial._wrap(F, vanishing(F, points, multiplicity))


def poly_lagrange(F, points, values):
    return Polynomial._wrap(F, lagrange(F, points, values))


def poly_hermite(F, points, values):
    return Polynomial._wrap(F, hermite(F, points, values))
