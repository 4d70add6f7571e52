"""Combinatorics of Z/d-covers of a genus-zero curve for d in {2, 3}:
class vectors, inertia types, genus and signature formulas, relabeling
equivalences, admissible clutching, and the search for degenerations into
two elliptic tails around a middle component.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Union

__all__ = [
    "ClassVector",
    "InertiaType",
    "TriSignature",
    "DegenerationWitness",
    "Refused",
    "NotAdmissible",
    "genus_of",
    "signature_of",
    "inertia_of_signature",
    "enumerate_signatures",
    "enumerate_inertia_types",
    "canonicalize",
    "negate",
    "deform",
    "find_delta11",
    "validate_witness",
    "sweep_delta11",
]


class NotAdmissible(ValueError):
    """The clutching condition fails: adjacent entries are not inverses."""


@dataclass(frozen=True)
class ClassVector:
    """Ordered inertia generators gamma(1..r) of a labeled Z/d-cover."""

    d: int
    entries: tuple

    def __post_init__(self):
        if self.d not in (2, 3):
            raise ValueError("only d in {2, 3} is supported")
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))
        if any(e % self.d == 0 or not 0 < e < self.d for e in self.entries):
            raise ValueError(f"entries must lie in (Z/{self.d})^x")
        if len(self.entries) < 3:
            raise ValueError("a class vector needs at least 3 branch points")
        if sum(self.entries) % self.d != 0:
            raise ValueError("entries must sum to 0 mod d")

    @property
    def r(self) -> int:
        return len(self.entries)

    def inertia_type(self) -> "InertiaType":
        c = Counter(self.entries)
        return InertiaType(self.d, tuple(c.get(h, 0) for h in range(1, self.d)))


@dataclass(frozen=True)
class InertiaType:
    """Multiset underlying a class vector: counts[h-1] points with
    canonical generator h, for h in (Z/d)^x."""

    d: int
    counts: tuple

    def __post_init__(self):
        if self.d not in (2, 3):
            raise ValueError("only d in {2, 3} is supported")
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if len(counts) != self.d - 1 or any(c < 0 for c in counts):
            raise ValueError("need one nonnegative count per unit of Z/d")
        weighted = sum(h * c for h, c in zip(range(1, self.d), counts))
        if weighted % self.d != 0:
            raise ValueError("weighted count sum must vanish mod d")
        if self.r < 3:
            raise ValueError("an inertia type needs at least 3 branch points")

    @property
    def r(self) -> int:
        return sum(self.counts)

    @property
    def d1(self) -> int:
        return self.counts[0]

    @property
    def d2(self) -> int:
        if self.d != 3:
            raise ValueError("d2 is a d=3 notion")
        return self.counts[1]

    def sorted_vector(self) -> ClassVector:
        ent = []
        for h, c in zip(range(1, self.d), self.counts):
            ent.extend([h] * c)
        return ClassVector(self.d, tuple(ent))


@dataclass(frozen=True)
class TriSignature:
    """Eigenspace ranks (r, s) of the differentials under the Z/3-action."""

    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise ValueError("signature entries must be nonnegative")

    @property
    def g(self) -> int:
        return self.r + self.s


def genus_of(v: Union[ClassVector, InertiaType]) -> int:
    """g = 1 - d + r(d-1)/2."""
    num = 2 * (1 - v.d) + v.r * (v.d - 1)
    assert num % 2 == 0
    g = num // 2
    assert g >= 0
    return g


def signature_of(t: InertiaType) -> TriSignature:
    """(r, s) = (g - N + 1, N - 1) with N = (d1 + 2 d2)/3."""
    if t.d != 3:
        raise ValueError("signatures are a d=3 notion")
    d1, d2 = t.d1, t.d2
    if (d1 + 2 * d2) % 3 != 0:
        raise ValueError("d1 + 2 d2 must vanish mod 3")
    N = (d1 + 2 * d2) // 3
    g = genus_of(t)
    sig = TriSignature(g - N + 1, N - 1)
    assert t.d1 == 2 * sig.r - sig.s + 1 and t.d2 == 2 * sig.s - sig.r + 1
    return sig


def inertia_of_signature(sig: TriSignature) -> InertiaType:
    d1 = 2 * sig.r - sig.s + 1
    d2 = 2 * sig.s - sig.r + 1
    if d1 < 0 or d2 < 0:
        raise ValueError(f"signature {sig} is not realizable")
    return InertiaType(3, (d1, d2))


def enumerate_signatures(g: int):
    """All (r, s) with r + s = g and (g-1)/3 <= r, s <= (2g+1)/3,
    ascending in r."""
    if g < 1:
        raise ValueError("g >= 1 required")
    out = []
    for r in range(g + 1):
        s = g - r
        if 3 * r >= g - 1 and 3 * r <= 2 * g + 1 and 3 * s >= g - 1 and 3 * s <= 2 * g + 1:
            out.append(TriSignature(r, s))
    return out


def enumerate_inertia_types(g: int):
    """All (d1, d2) with d1 + d2 = g + 2, d1, d2 >= 0, d1 + 2 d2 = 0 mod 3;
    the set the signature enumeration must biject onto."""
    out = []
    for d1 in range(g + 3):
        d2 = g + 2 - d1
        if d2 >= 0 and (d1 + 2 * d2) % 3 == 0:
            out.append((d1, d2))
    return out


def canonicalize(v: ClassVector) -> ClassVector:
    """Sort entries ascending: a relabeling of the branch locus."""
    return ClassVector(v.d, tuple(sorted(v.entries)))


def negate(v: ClassVector) -> ClassVector:
    """Apply h -> -h entrywise: a relabeling of the group action.  For
    d = 3 this swaps the two inertia counts and hence (r, s)."""
    return ClassVector(v.d, tuple((-e) % v.d for e in v.entries))


def deform(v1: ClassVector, v2: ClassVector) -> ClassVector:
    """Glue the last branch point of v1 to the first of v2; admissible
    exactly when those entries are inverse in Z/d."""
    if v1.d != v2.d:
        raise ValueError("mixed d")
    if (v1.entries[-1] + v2.entries[0]) % v1.d != 0:
        raise NotAdmissible(
            f"entries {v1.entries[-1]} and {v2.entries[0]} are not inverses mod {v1.d}")
    return ClassVector(v1.d, v1.entries[:-1] + v2.entries[1:])


@dataclass(frozen=True)
class DegenerationWitness:
    gamma1: ClassVector
    gamma2: ClassVector
    gamma3: ClassVector
    glued: ClassVector
    row: str

    def to_dict(self) -> dict:
        return {
            "gamma1": list(self.gamma1.entries),
            "gamma2": list(self.gamma2.entries),
            "gamma3": list(self.gamma3.entries),
            "glued": list(self.glued.entries),
            "row": self.row,
        }


@dataclass(frozen=True)
class Refused:
    reason: str


def _tri_gamma2(d1: int, d2: int, first: int, last: int) -> ClassVector:
    """Middle class vector with the given inertia counts and prescribed
    boundary entries; interior entries sorted ascending."""
    counts = {1: d1, 2: d2}
    counts[first] -= 1
    counts[last] -= 1
    if counts[1] < 0 or counts[2] < 0:
        raise ValueError("infeasible middle vector")
    interior = (1,) * counts[1] + (2,) * counts[2]
    return ClassVector(3, (first,) + interior + (last,))


def find_delta11(t: InertiaType):
    """Witness that the type degenerates into two genus-one tails around a
    middle component, or Refused outside the genus hypotheses.

    The three construction rows are tried in a fixed order (drop two
    1-points, drop two 2-points, drop one of each); a row applies when the
    middle vector it prescribes has nonnegative counts, and some row
    always applies in the hypothesis range.
    """
    g = genus_of(t)
    if t.d == 2:
        if g < 3:
            return Refused(f"d=2 needs genus >= 3, got {g}")
        gamma1 = ClassVector(2, (1, 1, 1, 1))
        gamma2 = ClassVector(2, (1,) * (2 * g - 2))
        witness = DegenerationWitness(
            gamma1, gamma2, gamma1, _double_glue(gamma1, gamma2, gamma1), "hyperelliptic")
        validate_witness(witness, t)
        return witness
    if g < 4:
        return Refused(f"d=3 needs genus >= 4, got {g}")
    d1, d2 = t.d1, t.d2
    e1 = ClassVector(3, (1, 1, 1))
    e2 = ClassVector(3, (2, 2, 2))
    rows = []
    if d1 >= 4:
        rows.append(("r-2,s", e1, _tri_gamma2(d1 - 4, d2 + 2, 2, 2), e1))
    if d2 >= 4:
        rows.append(("r,s-2", e2, _tri_gamma2(d1 + 2, d2 - 4, 1, 1), e2))
    if d1 >= 2 and d2 >= 2:
        rows.append(("r-1,s-1", e1, _tri_gamma2(d1 - 1, d2 - 1, 2, 1), e2))
    if not rows:
        # unreachable: d1 + d2 = g + 2 >= 6 forces one of the rows
        return Refused(f"no construction row applies to type ({d1},{d2})")
    row, g1, g2, g3 = rows[0]
    witness = DegenerationWitness(g1, g2, g3, _double_glue(g1, g2, g3), row)
    validate_witness(witness, t)
    return witness


def _double_glue(g1: ClassVector, g2: ClassVector, g3: ClassVector) -> ClassVector:
    return deform(deform(g1, g2), g3)


def validate_witness(w: DegenerationWitness, target: InertiaType):
    """Independent re-validation: tail genera, both inverse conditions,
    both clutching orders, and the glued inertia type."""
    if genus_of(w.gamma1) != 1 or genus_of(w.gamma3) != 1:
        raise AssertionError("tails must have genus 1")
    d = w.gamma1.d
    if (w.gamma1.entries[-1] + w.gamma2.entries[0]) % d != 0:
        raise AssertionError("left gluing entries are not inverses")
    if (w.gamma2.entries[-1] + w.gamma3.entries[0]) % d != 0:
        raise AssertionError("right gluing entries are not inverses")
    left_first = deform(deform(w.gamma1, w.gamma2), w.gamma3)
    right_first = deform(w.gamma1, deform(w.gamma2, w.gamma3))
    if left_first != right_first or left_first != w.glued:
        raise AssertionError("clutching orders disagree")
    if genus_of(w.glued) != genus_of(w.gamma2) + 2:
        raise AssertionError("glued genus mismatch")
    if w.glued.inertia_type() != target:
        raise AssertionError("glued inertia type differs from target")


def sweep_delta11(d: int, g_max: int):
    """Apply find_delta11 over the whole hypothesis range; a witness is
    asserted to exist for every entry in range."""
    if g_max > 64:
        raise ValueError("g_max capped at 64")
    records = []
    if d == 2:
        for g in range(3, g_max + 1):
            t = InertiaType(2, (2 * g + 2,))
            res = find_delta11(t)
            assert isinstance(res, DegenerationWitness)
            records.append({"g": g, "type": [t.d1], "signature": None,
                            "witness": res.to_dict()})
        return records
    if d != 3:
        raise ValueError("only d in {2, 3}")
    for g in range(4, g_max + 1):
        for sig in enumerate_signatures(g):
            t = inertia_of_signature(sig)
            res = find_delta11(t)
            assert isinstance(res, DegenerationWitness)
            records.append({"g": g, "type": [t.d1, t.d2],
                            "signature": [sig.r, sig.s],
                            "witness": res.to_dict()})
    return records
