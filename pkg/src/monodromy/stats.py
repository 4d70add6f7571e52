"""Statistical verification: empirical distributions of Frobenius
characteristic polynomials mod l over sampled curve families, compared
against the enumerated characteristic-polynomial distribution of the
predicted group coset.

The theoretical unitary cosets are the full multiplier-m similitude
classes (all determinant classes): these are the unconditional containers
for Frobenius, which is what the exact support check relies on.  For the
symplectic case the determinant is forced by the multiplier and the coset
is the familiar Sp . sigma_m.
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .bsgs import GroupAtlas
from .cosets import (
    ENUMERATION_LIMIT,
    coset_charpoly_histogram,
    enumerate_elements,
    sample_coset_histogram,
)
from .curves import lpoly, sample_hyper, sample_tri
from .covers import InertiaType
from .fpoly import is_irreducible
from .groups import (
    GroupKind,
    build_atlas,
    classical_order,
    hermitian_space,
    standard_generators,
    standard_symplectic_space,
    symplectic_similitude,
    unitary_similitude,
    eis_to_block,
    eis_identity,
    eis_scale,
)
from .matrices import charpoly_batch
from .residues import EisensteinResidue, Splitting, classify_prime

__all__ = [
    "HyperFamily",
    "TriFamily",
    "SpTarget",
    "SuTarget",
    "CharPolyHistogram",
    "ComparisonReport",
    "empirical_histogram",
    "theoretical_histogram",
    "compare",
    "support_violation_scan",
]


@dataclass(frozen=True)
class HyperFamily:
    g: int


@dataclass(frozen=True)
class TriFamily:
    d1: int
    d2: int

    @property
    def inertia(self) -> InertiaType:
        return InertiaType(3, (self.d1, self.d2))


@dataclass(frozen=True)
class SpTarget:
    g: int


@dataclass(frozen=True)
class SuTarget:
    g: int


@dataclass
class CharPolyHistogram:
    """Counts of monic degree-2g characteristic polynomials over Z/l,
    keyed by ascending canonical coefficient tuples."""

    g: int
    ell: int
    multiplier: Optional[int] = None
    counts: Counter = field(default_factory=Counter)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def merge(self, other: "CharPolyHistogram") -> "CharPolyHistogram":
        if (other.g, other.ell, other.multiplier) != (self.g, self.ell, self.multiplier):
            raise ValueError("histogram key spaces differ")
        out = CharPolyHistogram(self.g, self.ell, self.multiplier, Counter(self.counts))
        out.counts.update(other.counts)
        return out

    def to_json_obj(self) -> dict:
        return {
            "g": self.g,
            "ell": self.ell,
            "multiplier": self.multiplier,
            "total": self.total,
            "counts": {",".join(map(str, k)): v
                       for k, v in sorted(self.counts.items())},
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CharPolyHistogram":
        counts = Counter({tuple(int(c) for c in k.split(",")): int(v)
                          for k, v in obj["counts"].items()})
        return cls(obj["g"], obj["ell"], obj.get("multiplier"), counts)

    def csv_rows(self):
        for k, v in sorted(self.counts.items()):
            yield list(k) + [v]


FamilySpec = Union[HyperFamily, TriFamily]


def _histogram_chunk(family: FamilySpec, p: int, ell: int, seeds) -> Counter:
    counts: Counter = Counter()
    for s in seeds:
        if isinstance(family, HyperFamily):
            curve = sample_hyper(family.g, p, s)
        else:
            curve = sample_tri(family.inertia, p, s)
        counts[lpoly(curve).frobenius_charpoly_mod(ell)] += 1
    return counts


def empirical_histogram(family: FamilySpec, p: int, ell: int, n: int, seed: int,
                        workers: int = 1) -> CharPolyHistogram:
    """Histogram of Frobenius characteristic polynomials mod l over n
    curves with seeds seed .. seed+n-1.  The result is independent of the
    worker count: chunks are merged in index order."""
    if p % ell == 0:
        raise ValueError("l must not divide p")
    g = family.g if isinstance(family, HyperFamily) else \
        InertiaType(3, (family.d1, family.d2)).r - 2
    hist = CharPolyHistogram(g, ell, p % ell)
    seeds = list(range(seed, seed + n))
    if workers <= 1 or n < 4:
        hist.counts.update(_histogram_chunk(family, p, ell, seeds))
        return hist
    chunk = (n + workers - 1) // workers
    parts = [seeds[i : i + chunk] for i in range(0, n, chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for counts in pool.map(_histogram_chunk,
                               [family] * len(parts), [p] * len(parts),
                               [ell] * len(parts), parts):
            hist.counts.update(counts)
    return hist


def _gl_detclass_matrices(g: int, ell: int, delta: int) -> np.ndarray:
    out = np.eye(g, dtype=np.int64)
    out[0, 0] = delta % ell
    return out


def theoretical_histogram(kind: Union[SpTarget, SuTarget], ell: int, m: int,
                          mode) -> CharPolyHistogram:
    """Characteristic-polynomial distribution over the multiplier-m coset
    of the predicted group.

    mode is ("enumerate",) or ("sample", n, seed).  Symplectic: the coset
    Sp_2g . sigma_m.  Unitary, split l: block pairs (A, m (tA)^-1) with A
    over GL_g, realized as one SL_g enumeration per determinant class.
    Unitary, inert l: the coset of the full unitary isometry group.
    """
    modulus = classify_prime(ell)
    m %= ell
    if m == 0:
        raise ValueError("multiplier must be a unit mod l")

    if isinstance(kind, SpTarget):
        g = kind.g
        space = standard_symplectic_space(g, ell)
        gens = standard_generators(GroupKind.SP, space)
        atlas = build_atlas(gens, space)
        sigma = symplectic_similitude(space, m)
        hist = CharPolyHistogram(g, ell, m)
        hist.counts = _run_coset(atlas, sigma, mode)
        return hist

    if not isinstance(kind, SuTarget):
        raise ValueError(f"unknown kind {kind!r}")
    g = kind.g
    if modulus.splitting is Splitting.RAMIFIED:
        raise ValueError("unitary operations refuse the ramified prime 3")

    if modulus.splitting is Splitting.INERT:
        space = hermitian_space(g, ell)
        gens = [eis_to_block(M, modulus)
                for M in standard_generators(GroupKind.SU, space)]
        gens.append(eis_to_block(_circle_generator_matrix(space), modulus))
        atlas = GroupAtlas(gens, 2 * g, ell)
        expected = classical_order(GroupKind.SU, g, ell) * (ell + 1)
        assert atlas.order == expected
        sigma = eis_to_block(unitary_similitude(space, m), modulus)
        hist = CharPolyHistogram(g, ell, m)
        hist.counts = _run_coset(atlas, sigma, mode)
        return hist

    # split: enumerate SL_g once per determinant class delta; the coset
    # element block-diagonal (A, m (tA)^-1) has char poly h . h-sharp,
    # computed from h = charpoly(A) without forming 2g x 2g matrices
    from .curves import sharp_conjugate
    from .fpoly import poly_mul

    hist = CharPolyHistogram(g, ell, m)
    if mode[0] == "enumerate":
        from .groups import _sl_generators

        from .cosets import accumulate_poly_counts

        atlas = GroupAtlas(_sl_generators(g, ell), g, ell)
        if atlas.order > ENUMERATION_LIMIT:
            raise ValueError(
                f"coset of size {atlas.order} per det class exceeds enumeration limit")
        h_counts: Counter = Counter()
        for delta in range(1, ell):
            D = _gl_detclass_matrices(g, ell, delta)
            for block in enumerate_elements(atlas):
                mats = (block @ D) % ell
                accumulate_poly_counts(charpoly_batch(mats, ell), ell, h_counts)
        for h, c in h_counts.items():
            key = poly_mul(h, sharp_conjugate(h, m, ell), ell)
            hist.counts[key] += c
        return hist
    if mode[0] == "sample":
        import random

        _, n, seed = mode
        from .groups import _sl_generators

        atlas = GroupAtlas(_sl_generators(g, ell), g, ell)
        rng = random.Random(seed)
        for _ in range(n):
            A = atlas.random_element(rng)
            delta = rng.randrange(1, ell)
            A = (A @ _gl_detclass_matrices(g, ell, delta)) % ell
            from .matrices import charpoly

            h = charpoly(A, ell)
            key = poly_mul(h, sharp_conjugate(h, m, ell), ell)
            hist.counts[key] += 1
        return hist
    raise ValueError(f"unknown mode {mode!r}")


def _circle_generator_matrix(space):
    """diag(u, 1, .., 1) with u generating the norm-one circle of the
    inert quadratic extension; extends SU to the full isometry group."""
    modulus = space.modulus
    ell = space.ell
    order_target = ell + 1
    for a in range(ell):
        for b in range(ell):
            u = EisensteinResidue(modulus, (a, b))
            if u.is_zero() or u.norm() != 1:
                continue
            k, acc = 1, u
            one = EisensteinResidue.one(modulus)
            while acc != one:
                acc = acc * u
                k += 1
            if k == order_target:
                mat = [list(row) for row in eis_identity(modulus, space.dim)]
                mat[0][0] = u
                return tuple(tuple(row) for row in mat)
    raise AssertionError("norm-one circle always has a generator")


def _run_coset(atlas: GroupAtlas, sigma, mode) -> Counter:
    if mode[0] == "enumerate":
        if atlas.order > ENUMERATION_LIMIT:
            raise ValueError(
                f"coset of size {atlas.order} exceeds enumeration limit")
        return coset_charpoly_histogram(atlas, sigma)
    if mode[0] == "sample":
        _, n, seed = mode
        return sample_coset_histogram(atlas, sigma, n, seed)
    raise ValueError(f"unknown mode {mode!r}")


# --------------------------------------------------------------------------
# comparison


@dataclass(frozen=True)
class ComparisonReport:
    total_variation: float
    chi_square: float
    chi_square_dof: int
    coverage: float
    irreducible_fraction_empirical: float
    irreducible_fraction_theoretical: float
    support_violations: tuple

    def to_dict(self) -> dict:
        return {
            "total_variation": self.total_variation,
            "chi_square": self.chi_square,
            "chi_square_dof": self.chi_square_dof,
            "coverage": self.coverage,
            "irreducible_fraction_empirical": self.irreducible_fraction_empirical,
            "irreducible_fraction_theoretical": self.irreducible_fraction_theoretical,
            "support_violations": [list(k) for k in self.support_violations],
        }


def support_violation_scan(emp: CharPolyHistogram, theo: CharPolyHistogram):
    """Keys with empirical mass but zero theoretical mass; must be empty
    when the theoretical histogram is the predicted coset (containment is
    the exact, non-statistical direction)."""
    _check_key_space(emp, theo)
    return sorted(k for k, v in emp.counts.items() if v and not theo.counts.get(k))


def compare(emp: CharPolyHistogram, theo: CharPolyHistogram) -> ComparisonReport:
    _check_key_space(emp, theo)
    if emp.total == 0 or theo.total == 0:
        raise ValueError("histograms must be nonempty")
    keys = set(emp.counts) | set(theo.counts)
    etot, ttot = emp.total, theo.total
    tv = Fraction(0)
    for k in keys:
        tv += abs(Fraction(emp.counts.get(k, 0), etot) - Fraction(theo.counts.get(k, 0), ttot))
    tv /= 2
    support = [k for k, v in theo.counts.items() if v]
    chi = 0.0
    for k in support:
        expected = etot * theo.counts[k] / ttot
        chi += (emp.counts.get(k, 0) - expected) ** 2 / expected
    covered = sum(1 for k in support if emp.counts.get(k, 0) > 0)
    coverage = covered / len(support)
    irr_e = _irreducible_fraction(emp)
    irr_t = _irreducible_fraction(theo)
    violations = tuple(support_violation_scan(emp, theo))
    return ComparisonReport(float(tv), chi, len(support) - 1, coverage,
                            irr_e, irr_t, violations)


def _irreducible_fraction(hist: CharPolyHistogram) -> float:
    if hist.total == 0:
        return 0.0
    irr = sum(v for k, v in hist.counts.items() if is_irreducible(k, hist.ell))
    return irr / hist.total


def _check_key_space(emp: CharPolyHistogram, theo: CharPolyHistogram):
    if (emp.g, emp.ell) != (theo.g, theo.ell):
        raise ValueError(
            f"key spaces differ: (g={emp.g}, l={emp.ell}) vs (g={theo.g}, l={theo.ell})")


def histogram_to_json(hist: CharPolyHistogram) -> str:
    return json.dumps(hist.to_json_obj(), sort_keys=True, indent=1)
