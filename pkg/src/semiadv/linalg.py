"""Dense linear algebra over a finite field (Gaussian elimination)."""

import numpy as np

from .errors import BudgetExceeded, DivideByZero, ShapeMismatch

I64 = np.int64
MAX_ENTRIES = 4_000_000


def rref(F, A):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    A = np.array(A, dtype=I64, copy=True)
    if A.ndim != 2:
        raise ShapeMismatch("matrix expected")
    if A.size > MAX_ENTRIES:
        raise BudgetExceeded(f"{A.shape} matrix exceeds the elimination budget")
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.mul(A[r], F.inv(A[r, c]))
        col = A[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if len(others):
            A[others] = F.sub(A[others], F.mul(col[others, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F, A):
    return len(rref(F, A)[1])


def kernel(F, A):
    """Basis of the right kernel {x : A x = 0}, one vector per row."""
    A = np.asarray(A, dtype=I64)
    cols = A.shape[1]
    R, pivots = rref(F, A)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=I64)
    for t, fcol in enumerate(free):
        basis[t, fcol] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = F.neg(R[i, fcol])
    return basis


def inverse(F, A):
    A = np.asarray(A, dtype=I64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeMismatch("square matrix expected")
    aug = np.concatenate([A, np.eye(n, dtype=I64)], axis=1)
    R, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] != n - 1:
        raise DivideByZero("singular matrix")
    return R[:, n:]


def matvec(F, A, x):
    return F.sum(F.mul(np.asarray(A, dtype=I64), np.asarray(x, dtype=I64)[None, :]), axis=-1)
