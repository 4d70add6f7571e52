"""Shared independent oracles: these deliberately avoid the code paths
they are used to check."""

from __future__ import annotations

import itertools
from collections import Counter

import numpy as np
import pytest

from monodromy.curves import HyperCurve
from monodromy.residues import build_ext_field


def charpoly_oracle(A, ell: int) -> tuple:
    """det(xI - A) by permutation expansion over the integers, reduced
    mod l at the end; ascending coefficients."""
    A = [list(map(int, row)) for row in np.asarray(A)]
    n = len(A)
    coeffs = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        p = list(perm)
        parity = 0
        for i in range(n):
            while p[i] != i:
                j = p[i]
                p[i], p[j] = p[j], p[i]
                parity ^= 1
        sign = -1 if parity else 1
        poly = [1]
        for i in range(n):
            term = [-A[i][i], 1] if perm[i] == i else [-A[i][perm[i]]]
            new = [0] * (len(poly) + len(term) - 1)
            for ai, av in enumerate(poly):
                for bi, bv in enumerate(term):
                    new[ai + bi] += av * bv
            poly = new
        for i, v in enumerate(poly):
            coeffs[i] += sign * v
    return tuple(c % ell for c in coeffs)


def closure_elements(gens, ell: int):
    """Breadth-first closure of a matrix generating set; only for tiny
    groups."""
    n = gens[0].shape[0]
    eye = np.eye(n, dtype=np.int64)
    seen = {eye.tobytes(): eye}
    frontier = [eye]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = (a @ g) % ell
                key = b.tobytes()
                if key not in seen:
                    seen[key] = b
                    new.append(b)
        frontier = new
    return list(seen.values())


_FIBER_CACHE = {}


def _power_fibers(p: int, k: int, exponent: int) -> Counter:
    field = build_ext_field(p, k)
    key = (p, k, exponent)
    if key not in _FIBER_CACHE:
        _FIBER_CACHE[key] = Counter(
            field.pow(y, exponent) for y in field.elements())
    return _FIBER_CACHE[key]


def brute_count_points(curve, k: int) -> int:
    """Smooth-model point count by direct fiber enumeration with scalar
    field arithmetic: tally y^e over the whole y-line, then look up each
    f(x); the count at infinity follows the shared monic-model
    convention (2 for quadratic, 3 for cubic models)."""
    field = build_ext_field(curve.p, k)
    if isinstance(curve, HyperCurve):
        exponent, infinity = 2, 2
    else:
        exponent, infinity = 3, 3
    fibers = _power_fibers(curve.p, k, exponent)
    total = 0
    for x in field.elements():
        fx = field.one()
        if isinstance(curve, HyperCurve):
            for c in curve.branch:
                fx = field.mul(fx, field.sub(x, field.embed(c)))
        else:
            for c in curve.a_list:
                fx = field.mul(fx, field.sub(x, field.embed(c)))
            for c in curve.b_list:
                t = field.sub(x, field.embed(c))
                fx = field.mul(fx, field.mul(t, t))
        total += fibers.get(fx, 0)
    return total + infinity


@pytest.fixture
def rng_matrix():
    return np.random.default_rng(20240229)
