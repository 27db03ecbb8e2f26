"""Hot loops for prime-field polynomial arithmetic.

Every kernel exists twice: a numba ``@njit`` build and a pure-numpy
build.  ``SEMIADV_NUMBA=0`` selects numpy at import time;
:func:`use_backend` switches at runtime (the benchmark compares both).
Arrays are int64 residues in ``[0, p)`` with ``p < 2**31``.
"""

import contextlib
import os

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def decorator(func):
            return func

        return decorator


I64 = np.int64
_MAX = (1 << 63) - 1

# status codes of the module-reduction kernel
DONE, STUCK, STEP_LIMIT, U_FULL = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# shared source: plain python that numba also compiles
# ---------------------------------------------------------------------------


def _ms_kernel(V, base, valid, deg, lp, lc, U, ulo, uhi, href, record, p, max_steps):
    """Mulders-Storjohann reduction on row windows.

    Row ``i`` stores the coefficient of ``X^d`` at ``V[i, :, d - base[i]]``
    and is exact for ``d >= valid[i]`` (a valid below the base marks an
    exact row whose lower coefficients are zero).  ``deg`` holds an upper bound on
    entry and the row degree on exit (a value below ``valid`` means the
    row's degree fell out of its window).  With ``record`` set, the row
    operations are replayed on ``U`` in shifted coordinates:
    ``U[i, l, t]`` is the coefficient of ``X^(t + href[i] - href[l] - S)``
    (the caller owns ``S``); ``ulo``/``uhi`` bound the nonzero band.

    Returns ``(status, steps)``.
    """
    m = V.shape[0]
    width = V.shape[2]
    ucap = U.shape[2]
    # locate degrees, leading positions and leading coefficients
    for i in range(m):
        d = deg[i]
        top = d - base[i]
        if top >= width:
            top = width - 1
        d = top + base[i]
        found = False
        while d >= valid[i] and d >= base[i]:
            t = d - base[i]
            for l in range(m - 1, -1, -1):
                if V[i, l, t] != 0:
                    lp[i] = l
                    lc[i] = V[i, l, t]
                    found = True
                    break
            if found:
                break
            d -= 1
        deg[i] = d
    steps = 0
    while True:
        for i in range(m):
            if deg[i] < valid[i] or deg[i] < base[i]:
                return STUCK, steps
        # row to reduce: highest degree among rows sharing a leading position
        # with a row of no larger degree; ties -> smallest index
        ri = -1
        for i in range(m):
            conflict = False
            for j in range(m):
                if j != i and lp[j] == lp[i] and deg[j] <= deg[i]:
                    conflict = True
                    break
            if conflict and (ri < 0 or deg[i] > deg[ri]):
                ri = i
        if ri < 0:
            return DONE, steps
        if steps >= max_steps:
            return STEP_LIMIT, steps
        rj = -1
        for j in range(m):
            if j != ri and lp[j] == lp[ri]:
                if rj < 0 or deg[j] < deg[rj]:
                    rj = j
        i = ri
        j = rj
        delta = deg[i] - deg[j]
        if record:
            sig = delta + href[j] - href[i]
            nlo = ulo[j] + sig
            nhi = uhi[j] + sig
            if nlo < 0 or nhi >= ucap:
                return U_FULL, steps
        # c = lc_i / lc_j
        a = lc[j] % p
        e = p - 2
        inv = 1
        while e > 0:
            if e & 1:
                inv = (inv * a) % p
            a = (a * a) % p
            e >>= 1
        c = (lc[i] * inv) % p
        nv = valid[j] + delta
        if nv < valid[i]:
            nv = valid[i]
        lo = nv
        if base[j] + delta > lo:
            lo = base[j] + delta
        lo -= base[i]
        hi = deg[i] - base[i] + 1
        off = delta + base[j] - base[i]
        if lo < hi:
            for l in range(m):
                V[i, l, lo:hi] = (V[i, l, lo:hi] - c * V[j, l, lo - off:hi - off]) % p
        valid[i] = nv
        if record:
            ulo_j = ulo[j]
            uhi_j = uhi[j]
            for l in range(m):
                U[i, l, ulo_j + sig:uhi_j + sig + 1] = (
                    U[i, l, ulo_j + sig:uhi_j + sig + 1] - c * U[j, l, ulo_j:uhi_j + 1]
                ) % p
            if ulo_j + sig < ulo[i]:
                ulo[i] = ulo_j + sig
            if uhi_j + sig > uhi[i]:
                uhi[i] = uhi_j + sig
        # refresh row i
        d = deg[i]
        found = False
        while d >= valid[i] and d >= base[i]:
            t = d - base[i]
            for l in range(m - 1, -1, -1):
                if V[i, l, t] != 0:
                    lp[i] = l
                    lc[i] = V[i, l, t]
                    found = True
                    break
            if found:
                break
            d -= 1
        deg[i] = d
        steps += 1


# ---------------------------------------------------------------------------
# numba builds
# ---------------------------------------------------------------------------


@njit(cache=True)
def _nb_conv(a, b, p):
    la = a.shape[0]
    lb = b.shape[0]
    if la == 0 or lb == 0:
        return np.zeros(0, I64)
    if la > lb:
        a, b = b, a
        la, lb = lb, la
    out = np.zeros(la + lb - 1, I64)
    pm = p - 1
    lim = _MAX // (pm * pm) if pm > 0 else la + 1
    lim = lim - 1
    if lim < 1:
        lim = 1
    cnt = 0
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(lb):
            out[i + j] += ai * b[j]
        cnt += 1
        if cnt >= lim:
            for t in range(out.shape[0]):
                out[t] %= p
            cnt = 0
    for t in range(out.shape[0]):
        out[t] %= p
    return out


@njit(cache=True)
def _nb_divrem(a, b, p):
    # b normalized (last entry nonzero), len(a) >= len(b)
    r = a.copy()
    lb = b.shape[0]
    lq = a.shape[0] - lb + 1
    q = np.zeros(lq, I64)
    x = b[lb - 1] % p
    e = p - 2
    inv = 1
    while e > 0:
        if e & 1:
            inv = (inv * x) % p
        x = (x * x) % p
        e >>= 1
    for k in range(lq - 1, -1, -1):
        c = (r[k + lb - 1] * inv) % p
        q[k] = c
        if c != 0:
            for t in range(lb):
                r[k + t] = (r[k + t] - c * b[t]) % p
    return q, r[: lb - 1].copy()


@njit(cache=True)
def _nb_horner(f, xs, p):
    # coefficient loop outside so the point loop has no carried dependency
    n = xs.shape[0]
    out = np.zeros(n, I64)
    x = np.empty(n, I64)
    for i in range(n):
        x[i] = xs[i] % p
    pinv = 1.0 / p
    for t in range(f.shape[0] - 1, -1, -1):
        c = f[t]
        for i in range(n):
            v = _mulmod(out[i], x[i], p, pinv) + c
            out[i] = v - p if v >= p else v
    return out


@njit(cache=True)
def _nb_linear_product(xs, p):
    n = xs.shape[0]
    out = np.zeros(n + 1, I64)
    out[0] = 1
    for i in range(n):
        nx = (p - xs[i] % p) % p
        # multiply by (X + nx)
        for t in range(i + 1, 0, -1):
            out[t] = (out[t - 1] + nx * out[t]) % p
        out[0] = (nx * out[0]) % p
    return out


@njit(cache=True)
def _nb_leaf_combine(poly, xs, c, p):
    # sum_i c_i * poly / (X - x_i)
    d = poly.shape[0] - 1
    out = np.zeros(d, I64)
    q = np.zeros(d, I64)
    for i in range(xs.shape[0]):
        x = xs[i]
        q[d - 1] = poly[d]
        for t in range(d - 1, 0, -1):
            q[t - 1] = (poly[t] + x * q[t]) % p
        ci = c[i]
        for t in range(d):
            out[t] = (out[t] + ci * q[t]) % p
    return out


@njit(cache=True)
def _nb_naive_lagrange(xs, ys, p):
    n = xs.shape[0]
    poly = _nb_linear_product(xs, p)
    out = np.zeros(n, I64)
    q = np.zeros(n, I64)
    for i in range(n):
        x = xs[i]
        q[n - 1] = poly[n]
        for t in range(n - 1, 0, -1):
            q[t - 1] = (poly[t] + x * q[t]) % p
        acc = 0
        for t in range(n - 1, -1, -1):
            acc = (acc * x + q[t]) % p
        e = p - 2
        a = acc
        inv = 1
        while e > 0:
            if e & 1:
                inv = (inv * a) % p
            a = (a * a) % p
            e >>= 1
        w = (ys[i] % p * inv) % p
        for t in range(n):
            out[t] = (out[t] + w * q[t]) % p
    return out


@njit(cache=True, inline="always")
def _mulmod(a, b, p, pinv):
    # Barrett-style reduction through a float reciprocal: the quotient
    # estimate is off by at most one, and a*b - q*p is exact in int64
    q = np.int64(np.float64(a) * np.float64(b) * pinv)
    r = a * b - q * p
    if r < 0:
        r += p
    elif r >= p:
        r -= p
    return r


@njit(cache=True)
def _nb_ntt(a, rev, tw, twq, p, inverse_scale):
    # a: (batch, N); twiddles laid out per stage (tw[half + k]) with
    # twq = floor(tw * 2^32 / p) precomputed, so each product reduces with a
    # shift and one conditional subtraction (needs p < 2^31)
    batch = a.shape[0]
    N = a.shape[1]
    out = np.empty_like(a)
    for b in range(batch):
        row = out[b]
        src = a[b]
        for i in range(N):
            row[i] = src[rev[i]]
        length = 2
        while length <= N:
            half = length // 2
            for start in range(0, N, length):
                for k in range(half):
                    x = row[start + k + half]
                    w = tw[half + k]
                    v = x * w - ((x * twq[half + k]) >> 32) * p
                    v = v - p if v >= p else v
                    u = row[start + k]
                    s = u + v
                    d = u - v
                    row[start + k] = s - p if s >= p else s
                    row[start + k + half] = d + p if d < 0 else d
            length *= 2
        if inverse_scale != 1:
            sq = (inverse_scale << 32) // p
            for i in range(N):
                x = row[i]
                v = x * inverse_scale - ((x * sq) >> 32) * p
                row[i] = v - p if v >= p else v
    return out


@njit(cache=True)
def _nb_pointwise(TA, TB, p):
    # (m, k, N) x (k, n, N) -> (m, n, N), summed over k
    m, kk, N = TA.shape
    n = TB.shape[1]
    pinv = 1.0 / p
    out = np.zeros((m, n, N), I64)
    for i in range(m):
        for l in range(n):
            acc = out[i, l]
            for j in range(kk):
                x = TA[i, j]
                y = TB[j, l]
                for t in range(N):
                    r = acc[t] + _mulmod(x[t], y[t], p, pinv)
                    if r >= p:
                        r -= p
                    acc[t] = r
    return out


def _nb_karatsuba(a, b, p, thr):
    # one concrete signature for the recursion: mixed read-only / strided
    # arguments otherwise trigger per-type recompiles that numba cannot link
    a = np.array(a, dtype=I64)
    b = np.array(b, dtype=I64)
    if a.shape[0] < b.shape[0]:
        a, b = b, a
    return _nb_karatsuba_rec(a, b, np.int64(p), np.int64(thr))


@njit(cache=True)
def _nb_karatsuba_rec(a, b, p, thr):
    la = a.shape[0]
    lb = b.shape[0]
    if la < lb:
        return _nb_karatsuba_rec(b.copy(), a.copy(), p, thr)
    if lb < thr:
        return _nb_conv(a, b, p)
    out = np.zeros(la + lb - 1, I64)
    if la >= 2 * lb:
        for s in range(0, la, lb):
            e = min(s + lb, la)
            part = _nb_karatsuba_rec(a[s:e].copy(), b, p, thr)
            for t in range(part.shape[0]):
                out[s + t] = (out[s + t] + part[t]) % p
        return out
    h = (la + 1) // 2
    a0 = a[:h]
    a1 = a[h:]
    b0 = b[:h]
    b1 = b[h:]
    z0 = _nb_karatsuba_rec(a0.copy(), b0.copy(), p, thr)
    sa = np.zeros(h, I64)
    sb = np.zeros(h, I64)
    for t in range(h):
        sa[t] = a0[t]
        if t < b0.shape[0]:
            sb[t] = b0[t]
    for t in range(a1.shape[0]):
        sa[t] = (sa[t] + a1[t]) % p
    for t in range(b1.shape[0]):
        sb[t] = (sb[t] + b1[t]) % p
    z1 = _nb_karatsuba_rec(sa, sb, p, thr)
    for t in range(z0.shape[0]):
        out[t] = z0[t]
        z1[t] = (z1[t] - z0[t]) % p
    if b1.shape[0] > 0:
        z2 = _nb_karatsuba_rec(a1.copy(), b1.copy(), p, thr)
        for t in range(z2.shape[0]):
            out[2 * h + t] = (out[2 * h + t] + z2[t]) % p
            z1[t] = (z1[t] - z2[t]) % p
    for t in range(z1.shape[0]):
        if h + t < out.shape[0]:
            out[h + t] = (out[h + t] + z1[t]) % p
    return out


@njit(cache=True)
def _nb_polymat(A, B, p):
    m, k, la = A.shape
    n = B.shape[1]
    lb = B.shape[2]
    out = np.zeros((m, n, la + lb - 1), I64)
    pm = p - 1
    lim = _MAX // (pm * pm) - 1
    if lim < 1:
        lim = 1
    for i in range(m):
        for l in range(n):
            acc = out[i, l]
            cnt = 0
            for j in range(k):
                for s in range(la):
                    x = A[i, j, s]
                    if x == 0:
                        continue
                    for t in range(lb):
                        acc[s + t] += x * B[j, l, t]
                    cnt += 1
                    if cnt >= lim:
                        for t in range(acc.shape[0]):
                            acc[t] %= p
                        cnt = 0
            for t in range(acc.shape[0]):
                acc[t] %= p
    return out


_nb_ms_kernel = njit(cache=True)(_ms_kernel)


# ---------------------------------------------------------------------------
# numpy builds
# ---------------------------------------------------------------------------


def _np_conv(a, b, p):
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, I64)
    short = min(len(a), len(b))
    if (p - 1) ** 2 * short < _MAX:
        return np.convolve(a, b) % p
    # split into 16-bit halves so np.convolve stays exact
    a0, a1 = a & 0xFFFF, a >> 16
    b0, b1 = b & 0xFFFF, b >> 16
    c00 = np.convolve(a0, b0) % p
    c11 = np.convolve(a1, b1) % p
    mid = (np.convolve(a0, b1) % p + np.convolve(a1, b0) % p) % p
    return (c11 * ((1 << 32) % p) % p + mid * (1 << 16) % p + c00) % p


def _np_divrem(a, b, p):
    r = a.copy()
    lb = len(b)
    lq = len(a) - lb + 1
    q = np.zeros(lq, I64)
    inv = pow(int(b[-1]), p - 2, p)
    for k in range(lq - 1, -1, -1):
        c = int(r[k + lb - 1]) * inv % p
        q[k] = c
        if c:
            r[k:k + lb] = (r[k:k + lb] - c * b) % p
    return q, r[: lb - 1].copy()


def _np_horner(f, xs, p):
    acc = np.zeros(len(xs), I64)
    for coef in f[::-1]:
        acc = (acc * xs + coef) % p
    return acc


def _np_linear_product(xs, p):
    out = np.zeros(len(xs) + 1, I64)
    out[0] = 1
    for i, x in enumerate(xs):
        nx = (-int(x)) % p
        out[1:i + 2] = (out[0:i + 1] + nx * out[1:i + 2]) % p
        out[0] = nx * out[0] % p
    return out


def _np_synthetic_quotients(poly, xs, p):
    """Rows are poly / (X - x_i) for every x_i."""
    d = len(poly) - 1
    Q = np.zeros((len(xs), d), I64)
    if d == 0:
        return Q
    Q[:, d - 1] = poly[d]
    for t in range(d - 1, 0, -1):
        Q[:, t - 1] = (poly[t] + xs * Q[:, t]) % p
    return Q


def _np_leaf_combine(poly, xs, c, p):
    Q = _np_synthetic_quotients(poly, xs, p)
    out = np.zeros(Q.shape[1], I64)
    for i in range(len(xs)):
        out = (out + int(c[i]) * Q[i]) % p
    return out


def _np_naive_lagrange(xs, ys, p):
    n = len(xs)
    poly = _np_linear_product(xs, p)
    out = np.zeros(n, I64)
    for i in range(n):
        x = int(xs[i])
        q = _np_synthetic_quotients(poly, np.array([x], I64), p)[0]
        d = int(_np_horner(q, np.array([x], I64), p)[0])
        w = int(ys[i]) * pow(d, p - 2, p) % p
        out = (out + w * q) % p
    return out


def _np_ntt(a, rev, tw, twq, p, inverse_scale):
    N = a.shape[1]
    x = a[:, rev].copy()
    length = 2
    while length <= N:
        half = length // 2
        w = tw[half:length]
        X = x.reshape(x.shape[0], N // length, 2, half)
        u = X[:, :, 0, :]
        v = X[:, :, 1, :] * w % p
        X = np.stack(((u + v) % p, (u - v) % p), axis=2)
        x = X.reshape(x.shape[0], N)
        length *= 2
    if inverse_scale != 1:
        x = x * inverse_scale % p
    return x


def _np_pointwise(TA, TB, p):
    m, kk, N = TA.shape
    n = TB.shape[1]
    acc = np.zeros((m, n, N), I64)
    for j in range(kk):
        acc = (acc + TA[:, j, None, :] * TB[None, j, :, :]) % p
    return acc


def _np_karatsuba(a, b, p, thr):
    la, lb = len(a), len(b)
    if la < lb:
        return _np_karatsuba(b, a, p, thr)
    if lb < thr:
        return _np_conv(a, b, p)
    out = np.zeros(la + lb - 1, I64)
    if la >= 2 * lb:
        for s in range(0, la, lb):
            part = _np_karatsuba(a[s:s + lb], b, p, thr)
            out[s:s + len(part)] = (out[s:s + len(part)] + part) % p
        return out
    h = (la + 1) // 2
    a0, a1, b0, b1 = a[:h], a[h:], b[:h], b[h:]
    z0 = _np_karatsuba(a0, b0, p, thr)
    sa = np.zeros(h, I64)
    sa[:h] = a0
    sa[: len(a1)] = (sa[: len(a1)] + a1) % p
    sb = np.zeros(h, I64)
    sb[: len(b0)] = b0
    sb[: len(b1)] = (sb[: len(b1)] + b1) % p
    z1 = _np_karatsuba(sa, sb, p, thr).copy()
    out[: len(z0)] = z0
    z1[: len(z0)] = (z1[: len(z0)] - z0) % p
    if len(b1):
        z2 = _np_karatsuba(a1, b1, p, thr)
        out[2 * h:2 * h + len(z2)] = (out[2 * h:2 * h + len(z2)] + z2) % p
        z1[: len(z2)] = (z1[: len(z2)] - z2) % p
    end = min(h + len(z1), len(out))
    out[h:end] = (out[h:end] + z1[: end - h]) % p
    return out


def _np_polymat(A, B, p):
    m, k, la = A.shape
    n, lb = B.shape[1], B.shape[2]
    out = np.zeros((m, n, la + lb - 1), I64)
    for i in range(m):
        for l in range(n):
            acc = np.zeros(la + lb - 1, I64)
            for j in range(k):
                acc = (acc + _np_conv(A[i, j], B[j, l], p)) % p
            out[i, l] = acc
    return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_TABLES = {
    "numba": dict(
        conv=_nb_conv,
        divrem=_nb_divrem,
        horner=_nb_horner,
        linear_product=_nb_linear_product,
        leaf_combine=_nb_leaf_combine,
        naive_lagrange=_nb_naive_lagrange,
        ntt=_nb_ntt,
        polymat=_nb_polymat,
        pointwise=_nb_pointwise,
        karatsuba=_nb_karatsuba,
        ms_kernel=_nb_ms_kernel,
    ),
    "numpy": dict(
        conv=_np_conv,
        divrem=_np_divrem,
        horner=_np_horner,
        linear_product=_np_linear_product,
        leaf_combine=_np_leaf_combine,
        naive_lagrange=_np_naive_lagrange,
        ntt=_np_ntt,
        polymat=_np_polymat,
        pointwise=_np_pointwise,
        karatsuba=_np_karatsuba,
        ms_kernel=_ms_kernel,
    ),
}


def _default_backend():
    flag = os.environ.get("SEMIADV_NUMBA", "1").strip().lower()
    if not NUMBA_AVAILABLE or flag in ("0", "false", "no", "off"):
        return "numpy"
    return "numba"


_active = _default_backend()


def backend():
    return _active


def use_backend(name):
    """Switch the active kernel set; returns the previous name."""
    global _active
    if name not in _TABLES:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not NUMBA_AVAILABLE:
        raise ValueError("numba is not installed")
    old, _active = _active, name
    return old


@contextlib.contextmanager
def backend_scope(name):
    old = use_backend(name)
    try:
        yield
    finally:
        use_backend(old)


def k(name):
    """Kernel ``name`` from the active backend."""
    return _TABLES[_active][name]
