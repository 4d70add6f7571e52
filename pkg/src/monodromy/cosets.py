"""Characteristic-polynomial statistics over group cosets.

Enumeration walks the product of BSGS transversals (each group element has
a unique expression as one representative per level), processed in numpy
batches; this never materializes more than |G| / |first orbit| matrices at
once beyond the top-level loop chunk.
"""

from __future__ import annotations

from collections import Counter

import numpy as np

from .bsgs import GroupAtlas
from .matrices import charpoly_batch

__all__ = [
    "ENUMERATION_LIMIT",
    "enumerate_elements",
    "coset_charpoly_histogram",
    "sample_coset_histogram",
]

ENUMERATION_LIMIT = 10_000_000


def _suffix_products(transversals, ell: int) -> np.ndarray:
    """All products t_1 t_2 ... t_k of one representative per level, for
    levels after the first; shape (prod sizes, n, n)."""
    if not transversals:
        return None
    n = transversals[0][0].shape[0]
    batch = np.eye(n, dtype=np.int64)[None, :, :]
    for level in reversed(transversals):
        T = np.stack(level)
        batch = np.einsum("aij,bjk->abik", T, batch) % ell
        batch = batch.reshape(-1, n, n)
    return batch


def enumerate_elements(atlas: GroupAtlas, chunk: int = 1 << 16):
    """Yield all group elements as (N, n, n) batches, deterministically."""
    if atlas.order > ENUMERATION_LIMIT:
        raise ValueError(
            f"group order {atlas.order} exceeds enumeration limit {ENUMERATION_LIMIT}")
    trans = atlas.transversals()
    if not trans:
        yield np.eye(atlas.dim, dtype=np.int64)[None, :, :]
        return
    rest = _suffix_products(trans[1:], atlas.ell)
    if rest is None:
        rest = np.eye(atlas.dim, dtype=np.int64)[None, :, :]
    top = np.stack(trans[0])
    step = max(1, chunk // max(1, len(rest)))
    for i in range(0, len(top), step):
        block = np.einsum("aij,bjk->abik", top[i : i + step], rest) % atlas.ell
        yield block.reshape(-1, atlas.dim, atlas.dim)


def accumulate_poly_counts(polys: np.ndarray, ell: int, counts: Counter):
    """Tally ascending-coefficient rows of monic polynomials; the leading
    1 is dropped from the packed radix key."""
    n = polys.shape[1] - 1
    radix = ell ** np.arange(n, dtype=np.int64)
    packed = polys[:, :n] @ radix
    if ell**n <= 1 << 24:
        binned = np.bincount(packed, minlength=ell**n)
        for key in np.nonzero(binned)[0]:
            coeffs = tuple(int(key) // int(r) % ell for r in radix) + (1,)
            counts[coeffs] += int(binned[key])
    else:
        uniq, cnt = np.unique(packed, return_counts=True)
        for key, c in zip(uniq, cnt):
            coeffs = tuple(int(key) // int(r) % ell for r in radix) + (1,)
            counts[coeffs] += int(c)


def coset_charpoly_histogram(atlas: GroupAtlas, sigma: np.ndarray | None) -> Counter:
    """Frequencies of char polys of h . sigma over all h in the group;
    sigma = None means the group itself.  Keys are ascending coefficient
    tuples of monic polynomials."""
    ell = atlas.ell
    counts: Counter = Counter()
    for block in enumerate_elements(atlas):
        if sigma is not None:
            block = (block @ sigma) % ell
        accumulate_poly_counts(charpoly_batch(block, ell), ell, counts)
    return counts


def sample_coset_histogram(atlas: GroupAtlas, sigma: np.ndarray | None,
                           n: int, seed: int, batch: int = 4096) -> Counter:
    """Same histogram from n uniform BSGS samples, deterministic per seed."""
    import random

    rng = random.Random(seed)
    ell = atlas.ell
    counts: Counter = Counter()
    remaining = n
    while remaining > 0:
        take = min(batch, remaining)
        remaining -= take
        mats = np.stack([atlas.random_element(rng) for _ in range(take)])
        if sigma is not None:
            mats = (mats @ sigma) % ell
        accumulate_poly_counts(charpoly_batch(mats, ell), ell, counts)
    return counts
