"""Dense matrix arithmetic over Z/l on int64 numpy arrays, plus
characteristic polynomials by the division-free Berkowitz scheme (needed
because l can be smaller than the matrix dimension, ruling out Newton
identities and interpolation).
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "SingularMatrixError",
    "mat",
    "identity",
    "matmul",
    "inv_mod",
    "det_mod",
    "charpoly",
    "charpoly_batch",
]


class SingularMatrixError(ValueError):
    pass


def mat(rows, ell: int) -> np.ndarray:
    return np.asarray(rows, dtype=np.int64) % ell


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(A: np.ndarray, B: np.ndarray, ell: int) -> np.ndarray:
    return (A @ B) % ell


def inv_mod(A: np.ndarray, ell: int) -> np.ndarray:
    """Inverse by Gauss-Jordan elimination mod l."""
    n = A.shape[0]
    work = np.concatenate([A % ell, identity(n)], axis=1)
    for col in range(n):
        piv = -1
        for r in range(col, n):
            if work[r, col] % ell:
                piv = r
                break
        if piv < 0:
            raise SingularMatrixError("matrix not invertible mod %d" % ell)
        if piv != col:
            work[[col, piv]] = work[[piv, col]]
        work[col] = (work[col] * pow(int(work[col, col]), -1, ell)) % ell
        for r in range(n):
            if r != col and work[r, col]:
                work[r] = (work[r] - work[r, col] * work[col]) % ell
    return work[:, n:]


def det_mod(A: np.ndarray, ell: int) -> int:
    """Determinant mod l by fraction-free elimination."""
    n = A.shape[0]
    work = A.copy() % ell
    det = 1
    for col in range(n):
        piv = -1
        for r in range(col, n):
            if work[r, col] % ell:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != col:
            work[[col, piv]] = work[[piv, col]]
            det = -det
        det = (det * int(work[col, col])) % ell
        inv = pow(int(work[col, col]), -1, ell)
        for r in range(col + 1, n):
            if work[r, col]:
                work[r] = (work[r] - work[r, col] * inv * work[col]) % ell
    return det % ell


def charpoly_batch(As: np.ndarray, ell: int) -> np.ndarray:
    """Characteristic polynomials det(xI - A) for a stack of matrices.

    As has shape (N, n, n); the result has shape (N, n+1) holding ascending
    coefficients with leading coefficient 1.  Berkowitz iteration: extend
    the char poly of the k x k principal block to (k+1) x (k+1) via a
    lower-triangular Toeplitz product built from R M^j C terms.
    """
    As = np.asarray(As, dtype=np.int64) % ell
    N, n, _ = As.shape
    # poly holds descending coefficients of the current principal block
    poly = np.zeros((N, 2), dtype=np.int64)
    poly[:, 0] = 1
    poly[:, 1] = (-As[:, 0, 0]) % ell
    for k in range(1, n):
        R = As[:, k, :k]
        C = As[:, :k, k]
        M = As[:, :k, :k]
        d = As[:, k, k]
        # seq = (1, -d, -R C, -R M C, ..., -R M^{k-2} C ... up to j=k-1)
        seq = np.zeros((N, k + 2), dtype=np.int64)
        seq[:, 0] = 1
        seq[:, 1] = (-d) % ell
        v = C
        for j in range(k):
            s = np.einsum("ni,ni->n", R, v) % ell
            seq[:, j + 2] = (-s) % ell
            if j + 2 <= k:
                v = np.einsum("nij,nj->ni", M, v) % ell
        new = np.zeros((N, k + 2), dtype=np.int64)
        for i in range(k + 2):
            lo = max(0, i - (k + 1))
            hi = min(i, k)
            acc = np.zeros(N, dtype=np.int64)
            for j in range(lo, hi + 1):
                acc += seq[:, i - j] * poly[:, j]
            new[:, i] = acc % ell
        poly = new
    return poly[:, ::-1].copy()


def charpoly(A: np.ndarray, ell: int) -> tuple:
    """Ascending coefficients of det(xI - A) mod l, leading coefficient 1."""
    out = charpoly_batch(np.asarray(A, dtype=np.int64)[None, :, :], ell)[0]
    return tuple(int(c) for c in out)
