import numpy as np
import pytest

from conftest import charpoly_oracle
from monodromy.matrices import (
    SingularMatrixError,
    charpoly,
    charpoly_batch,
    det_mod,
    identity,
    inv_mod,
)


def test_charpoly_identity():
    assert charpoly(identity(2), 5) == (1, 3, 1)  # (x-1)^2 = x^2 - 2x + 1


def test_charpoly_companion():
    # companion matrix of f = x^3 + 2x + 1 over Z/5
    C = np.array([[0, 0, -1], [1, 0, -2], [0, 1, 0]]) % 5
    assert charpoly(C, 5) == (1, 2, 0, 1)


def test_charpoly_constant_term_is_det():
    rng = np.random.default_rng(5)
    for ell in (3, 5, 13):
        for n in (2, 3, 4):
            A = rng.integers(0, ell, size=(n, n))
            cp = charpoly(A, ell)
            assert cp[0] == ((-1) ** n * det_mod(A, ell)) % ell
            assert cp[-1] == 1


@pytest.mark.parametrize("ell", [2, 3, 5, 7, 13])
def test_charpoly_against_permutation_expansion(ell, rng_matrix):
    for n in (1, 2, 3, 4, 5):
        for _ in range(4):
            A = rng_matrix.integers(0, ell, size=(n, n))
            assert charpoly(A, ell) == charpoly_oracle(A, ell)


def test_charpoly_batch_matches_single(rng_matrix):
    for ell, n in [(3, 4), (7, 6), (13, 2)]:
        As = rng_matrix.integers(0, ell, size=(40, n, n))
        batch = charpoly_batch(As, ell)
        for i in range(40):
            assert tuple(int(c) for c in batch[i]) == charpoly(As[i], ell)


def test_inv_mod_round_trip(rng_matrix):
    for ell in (3, 5, 11):
        for _ in range(10):
            A = rng_matrix.integers(0, ell, size=(4, 4))
            if det_mod(A, ell) == 0:
                continue
            assert np.array_equal((A @ inv_mod(A, ell)) % ell, identity(4))


def test_inv_mod_singular_raises():
    A = np.ones((3, 3), dtype=np.int64)
    with pytest.raises(SingularMatrixError):
        inv_mod(A, 5)


def test_det_mod_multiplicative(rng_matrix):
    for _ in range(10):
        A = rng_matrix.integers(0, 7, size=(3, 3))
        B = rng_matrix.integers(0, 7, size=(3, 3))
        assert det_mod((A @ B) % 7, 7) == det_mod(A, 7) * det_mod(B, 7) % 7
