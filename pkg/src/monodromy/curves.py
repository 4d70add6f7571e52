"""Smooth hyperelliptic and trielliptic curves over small prime fields:
seeded sampling, point counting over F_{p^k}, zeta numerator
reconstruction, and mod-l characteristic-polynomial predicates.

Counting convention (shared with the brute-force test oracle): models are
monic with all branch points finite, so the smooth completion has exactly
2 points at infinity for the quadratic model over every F_{p^k}, and 3
for the cubic model since p = 1 mod 3 forces q = 1 mod 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .covers import InertiaType
from .fpoly import factor_monic, poly_mul, poly_normalize
from .residues import (
    ExtField,
    build_ext_field,
    classify_prime,
    cube_count_array,
    is_prime,
    square_count_array,
    Splitting,
)

__all__ = [
    "CountingError",
    "HyperCurve",
    "TriCurve",
    "LPolynomial",
    "sample_hyper",
    "sample_tri",
    "count_points",
    "lpoly_from_counts",
    "lpoly",
    "reduce_and_factor",
    "sharp_conjugate",
    "split_unitary_predicate",
]


class CountingError(RuntimeError):
    """Counts inconsistent with any zeta numerator; indicates a bug."""


@dataclass(frozen=True)
class HyperCurve:
    """y^2 = prod (x - c) over the distinct branch points c; genus
    (len(branch) - 2) / 2."""

    p: int
    branch: tuple

    def __post_init__(self):
        if not is_prime(self.p) or self.p == 2:
            raise ValueError("p must be an odd prime")
        branch = tuple(int(c) % self.p for c in self.branch)
        object.__setattr__(self, "branch", branch)
        if len(set(branch)) != len(branch):
            raise ValueError("branch points must be pairwise distinct")
        if len(branch) < 4 or len(branch) % 2:
            raise ValueError("need an even number >= 4 of branch points")

    @property
    def g(self) -> int:
        return (len(self.branch) - 2) // 2


@dataclass(frozen=True)
class TriCurve:
    """y^3 = prod (x - a) . prod (x - b)^2 with the a- and b-points
    distinct and disjoint; requires p = 1 mod 3."""

    p: int
    a_list: tuple
    b_list: tuple

    def __post_init__(self):
        if not is_prime(self.p) or self.p % 3 != 1:
            raise ValueError("p must be a prime with p = 1 mod 3")
        a = tuple(int(c) % self.p for c in self.a_list)
        b = tuple(int(c) % self.p for c in self.b_list)
        object.__setattr__(self, "a_list", a)
        object.__setattr__(self, "b_list", b)
        pts = a + b
        if len(set(pts)) != len(pts):
            raise ValueError("branch points must be pairwise distinct")
        d1, d2 = len(a), len(b)
        if (d1 + 2 * d2) % 3 != 0:
            raise ValueError("d1 + 2 d2 must vanish mod 3")
        if d1 + d2 < 3:
            raise ValueError("need at least 3 branch points")

    @property
    def inertia(self) -> InertiaType:
        return InertiaType(3, (len(self.a_list), len(self.b_list)))

    @property
    def g(self) -> int:
        return len(self.a_list) + len(self.b_list) - 2


def sample_hyper(g: int, p: int, seed: int) -> HyperCurve:
    """2g+2 branch points drawn uniformly without replacement."""
    if g < 1:
        raise ValueError("g >= 1 required")
    if p <= 2 * g + 2:
        raise ValueError(f"p = {p} too small for {2*g+2} branch points")
    rng = random.Random(seed)
    return HyperCurve(p, tuple(rng.sample(range(p), 2 * g + 2)))


def sample_tri(t: InertiaType, p: int, seed: int) -> TriCurve:
    """d1 a-points and d2 b-points drawn uniformly without replacement."""
    if t.d != 3:
        raise ValueError("trielliptic sampling needs a d=3 inertia type")
    d1, d2 = t.d1, t.d2
    if p % 3 != 1:
        raise ValueError("p = 1 mod 3 required (the cube roots of unity "
                         "must be rational)")
    if p <= d1 + d2:
        raise ValueError(f"p = {p} too small for {d1+d2} branch points")
    rng = random.Random(seed)
    pts = rng.sample(range(p), d1 + d2)
    return TriCurve(p, tuple(pts[:d1]), tuple(pts[d1:]))


@lru_cache(maxsize=None)
def _field_elements(p: int, k: int):
    field = build_ext_field(p, k)
    return field, field.elements_array()


def _eval_product(field: ExtField, X: np.ndarray, roots, squared) -> np.ndarray:
    """prod (X - c) over roots, times prod (X - c)^2 over squared."""
    q = X.shape[0]
    acc = np.zeros((q, field.k), dtype=np.int64)
    acc[:, 0] = 1
    for c in roots:
        term = X.copy()
        term[:, 0] = (term[:, 0] - c) % field.p
        acc = field.mul_array(acc, term)
    for c in squared:
        term = X.copy()
        term[:, 0] = (term[:, 0] - c) % field.p
        acc = field.mul_array(acc, field.mul_array(term, term))
    return acc


def count_points(curve, k: int) -> int:
    """Points on the smooth model over F_{p^k} by the fiber-count
    formulas: quadratic character for y^2, cube-power test for y^3, plus
    the fixed count at infinity."""
    if k < 1 or k > max(curve.g, 1):
        raise ValueError(f"k must be in 1..{curve.g}")
    field, X = _field_elements(curve.p, k)
    if isinstance(curve, HyperCurve):
        vals = _eval_product(field, X, curve.branch, ())
        return int(square_count_array(field, vals).sum()) + 2
    if isinstance(curve, TriCurve):
        vals = _eval_product(field, X, curve.a_list, curve.b_list)
        return int(cube_count_array(field, vals).sum()) + 3
    raise TypeError(f"unsupported curve {type(curve)!r}")


# --------------------------------------------------------------------------
# zeta numerator


@dataclass(frozen=True)
class LPolynomial:
    """Numerator sum a_i x^i of the zeta function, a_0 = 1, with the
    functional equation a_{2g-i} = p^{g-i} a_i."""

    g: int
    p: int
    coeffs: tuple

    def __post_init__(self):
        a = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", a)
        g, p = self.g, self.p
        if len(a) != 2 * g + 1 or a[0] != 1:
            raise ValueError("need 2g+1 coefficients with a_0 = 1")
        for i in range(g + 1):
            if a[2 * g - i] != p ** (g - i) * a[i]:
                raise CountingError("functional equation violated")
        if self.evaluate(1) <= 0:
            raise CountingError("L(1) must be positive")
        self._check_root_magnitudes()

    def _check_root_magnitudes(self):
        # reciprocal roots are the Frobenius eigenvalues; all must have
        # absolute value sqrt(p) to numerical precision
        roots = np.roots(np.array(self.coeffs, dtype=float))
        if len(roots) and np.max(np.abs(np.abs(roots) - self.p ** 0.5)) > 1e-6:
            raise CountingError("roots stray from the critical circle")

    def evaluate(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def frobenius_charpoly_mod(self, ell: int) -> tuple:
        """Ascending coefficients mod l of the monic reversal
        x^{2g} L(1/x), the characteristic polynomial of Frobenius."""
        return tuple(c % ell for c in reversed(self.coeffs))

    def weil_numbers(self) -> np.ndarray:
        return np.roots(np.array(list(self.coeffs), dtype=float))


def lpoly_from_counts(counts, g: int, p: int) -> LPolynomial:
    """Reconstruct the numerator from N_1 .. N_g via Newton's identities
    on the power sums s_k = p^k + 1 - N_k, completed by the functional
    equation."""
    counts = list(counts)
    if len(counts) != g:
        raise ValueError(f"need exactly {g} counts")
    s = [p**k + 1 - counts[k - 1] for k in range(1, g + 1)]
    a = [1] + [0] * (2 * g)
    for k in range(1, g + 1):
        acc = s[k - 1]
        for i in range(1, k):
            acc += a[i] * s[k - 1 - i]
        if acc % k:
            raise CountingError("Newton identity yields a non-integer")
        a[k] = -acc // k
    for i in range(g):
        a[2 * g - i] = p ** (g - i) * a[i]
    return LPolynomial(g, p, tuple(a))


def lpoly(curve) -> LPolynomial:
    """Counts over F_{p^k} for k = 1..g, then the reconstruction."""
    g = curve.g
    counts = [count_points(curve, k) for k in range(1, g + 1)]
    return lpoly_from_counts(counts, g, curve.p)


# --------------------------------------------------------------------------
# mod-l reductions


def reduce_and_factor(L: LPolynomial, ell: int):
    """Reduce the Frobenius characteristic polynomial mod l and factor it
    completely; returns (factors, irreducible_flag)."""
    if L.p % ell == 0:
        raise ValueError("l must not divide p")
    cp = L.frobenius_charpoly_mod(ell)
    factors = factor_monic(cp, ell)
    irreducible = len(factors) == 1 and factors[0][1] == 1
    return factors, irreducible


def sharp_conjugate(h, m: int, ell: int) -> tuple:
    """The monic polynomial whose roots are m/beta over the roots beta of
    h: h(0)^{-1} . sum_i c_i m^i x^{g-i}."""
    h = poly_normalize(h, ell)
    if h[0] % ell == 0:
        raise ValueError("h(0) must be invertible")
    gdeg = len(h) - 1
    inv0 = pow(h[0], -1, ell)
    out = [0] * (gdeg + 1)
    for i, c in enumerate(h):
        out[gdeg - i] = c * pow(m, i, ell) * inv0
    return poly_normalize(out, ell)


def _degree_g_products(factors, g: int, ell: int):
    """Monic degree-g products of sub-multisets of the factorization."""
    seen = set()

    def rec(idx, deg, poly):
        if deg == g:
            seen.add(poly)
            return
        if idx == len(factors):
            return
        f, mult = factors[idx]
        df = len(f) - 1
        cur = poly
        for take in range(mult + 1):
            if deg + take * df <= g:
                if take:
                    cur = poly_mul(cur, f, ell)
                rec(idx + 1, deg + take * df, cur)

    rec(0, 0, (1,))
    return sorted(seen)


def split_unitary_predicate(lbar, ell: int, p: int):
    """Whether a monic degree-2g polynomial mod l factors as h times the
    m/beta-conjugate of h with m = p, the shape forced on Frobenius by a
    rational cube-root action when l is split; returns (flag, witness)."""
    modulus = classify_prime(ell)
    if modulus.splitting is not Splitting.SPLIT:
        raise ValueError("predicate applies to split l only")
    if p % ell == 0:
        raise ValueError("l must not divide p")
    lbar = poly_normalize(lbar, ell)
    if lbar[-1] != 1 or (len(lbar) - 1) % 2:
        raise ValueError("monic polynomial of even degree required")
    g = (len(lbar) - 1) // 2
    factors = factor_monic(lbar, ell)
    for h in _degree_g_products(factors, g, ell):
        if h[0] % ell == 0:
            continue
        if poly_mul(h, sharp_conjugate(h, p, ell), ell) == lbar:
            return True, h
    return False, None
