"""Bruhat decomposition of determinant-one matrices over Z/l by Gaussian
elimination with unitriangular row and column operations.

The factorization is M = u1 . w . t . u2 with u1, u2 upper unitriangular,
w a permutation matrix, and t diagonal.  Clearing above a pivot uses row
operations (adding a lower row to an upper one, an upper-unitriangular
left factor); clearing to the right uses column operations (adding an
earlier column to a later one, an upper-unitriangular right factor).
Within each column the pivot is therefore forced: the lowest not-yet-used
row with a nonzero entry.  The permutation w is the Bruhat cell invariant
and does not depend on these choices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrices import det_mod, identity

__all__ = ["BruhatFactors", "bruhat_decompose"]


@dataclass(frozen=True)
class BruhatFactors:
    u1: np.ndarray  # upper unitriangular
    w: np.ndarray   # permutation matrix
    t: np.ndarray   # diagonal
    u2: np.ndarray  # upper unitriangular

    def recompose(self, ell: int) -> np.ndarray:
        return (self.u1 @ self.w @ self.t @ self.u2) % ell


def bruhat_decompose(M: np.ndarray, ell: int) -> BruhatFactors:
    """Factor a determinant-one matrix as u1 . w . t . u2 (exact mod l)."""
    M = np.asarray(M, dtype=np.int64) % ell
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("square matrix required")
    if det_mod(M, ell) != 1:
        raise ValueError("determinant must be 1")
    A = M.copy()
    u1 = identity(n)
    u2 = identity(n)
    used = np.zeros(n, dtype=bool)
    for j in range(n):
        piv = -1
        for i in range(n - 1, -1, -1):
            if not used[i] and A[i, j] % ell:
                piv = i
                break
        assert piv >= 0, "invertible matrix always yields a pivot"
        used[piv] = True
        inv_p = pow(int(A[piv, j]), -1, ell)
        # clear above the pivot among unused rows: A <- E A with
        # E = I + c e_{i,piv} (i < piv), so u1 accumulates E^{-1} on the right
        for i in range(piv):
            if not used[i] and A[i, j] % ell:
                c = (-int(A[i, j]) * inv_p) % ell
                A[i] = (A[i] + c * A[piv]) % ell
                u1[:, piv] = (u1[:, piv] - c * u1[:, i]) % ell
        # clear the pivot row to the right: A <- A F with
        # F = I + c e_{j,j'} (j < j'), so u2 accumulates F^{-1} on the left
        for j2 in range(j + 1, n):
            if A[piv, j2] % ell:
                c = (-int(A[piv, j2]) * inv_p) % ell
                A[:, j2] = (A[:, j2] + c * A[:, j]) % ell
                u2[j, :] = (u2[j, :] - c * u2[j2, :]) % ell
    w = (A != 0).astype(np.int64)
    t = (w.T @ A) % ell
    assert np.array_equal(t, np.diag(np.diag(t)))
    return BruhatFactors(u1, w, t, u2)
