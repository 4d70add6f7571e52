import itertools

import pytest

from monodromy.covers import (
    ClassVector,
    DegenerationWitness,
    InertiaType,
    NotAdmissible,
    Refused,
    TriSignature,
    canonicalize,
    deform,
    enumerate_inertia_types,
    enumerate_signatures,
    find_delta11,
    genus_of,
    inertia_of_signature,
    negate,
    signature_of,
    sweep_delta11,
    validate_witness,
)


def test_genus_formula_reference_points():
    assert genus_of(ClassVector(2, (1,) * 8)) == 3          # 2g+2 branch points
    assert genus_of(ClassVector(3, (1, 1, 1, 1, 2))) == 3   # g+2 branch points
    assert genus_of(ClassVector(3, (1, 1, 1))) == 1         # the elliptic case


def test_class_vector_invariants():
    with pytest.raises(ValueError):
        ClassVector(3, (1, 1))          # too short
    with pytest.raises(ValueError):
        ClassVector(3, (1, 1, 2))       # sum != 0 mod 3
    with pytest.raises(ValueError):
        ClassVector(3, (1, 1, 3))       # not a unit
    with pytest.raises(ValueError):
        ClassVector(5, (1, 1, 1, 1, 1))  # unsupported d


def test_signature_examples():
    assert signature_of(InertiaType(3, (4, 1))) == TriSignature(2, 1)
    assert signature_of(InertiaType(3, (3, 0))) == TriSignature(1, 0)
    with pytest.raises(ValueError):
        InertiaType(3, (5, 0))


def test_signature_round_trip_up_to_r30():
    for d1 in range(31):
        for d2 in range(31):
            if d1 + d2 < 3 or (d1 + 2 * d2) % 3:
                continue
            t = InertiaType(3, (d1, d2))
            sig = signature_of(t)
            assert 2 * sig.r - sig.s + 1 == d1
            assert 2 * sig.s - sig.r + 1 == d2
            assert inertia_of_signature(sig) == t


def test_enumerate_signatures_small_genera():
    assert [(s.r, s.s) for s in enumerate_signatures(3)] == [(1, 2), (2, 1)]
    assert [(s.r, s.s) for s in enumerate_signatures(4)] == [(1, 3), (2, 2), (3, 1)]
    assert [(s.r, s.s) for s in enumerate_signatures(1)] == [(0, 1), (1, 0)]


def test_signature_count_matches_type_count_up_to_50():
    for g in range(1, 51):
        assert len(enumerate_signatures(g)) == len(enumerate_inertia_types(g))


def test_canonicalize_and_negate():
    v = ClassVector(3, (2, 1, 1, 2))
    assert canonicalize(v).entries == (1, 1, 2, 2)
    assert canonicalize(canonicalize(v)) == canonicalize(v)
    assert negate(ClassVector(3, (1, 1, 1))).entries == (2, 2, 2)
    assert negate(negate(v)) == v
    # negate swaps the inertia counts hence (r, s)
    t = InertiaType(3, (4, 1))
    nt = negate(t.sorted_vector()).inertia_type()
    assert (nt.d1, nt.d2) == (1, 4)
    sig, nsig = signature_of(t), signature_of(nt)
    assert (sig.r, sig.s) == (nsig.s, nsig.r)


def test_canonicalize_permutation_invariant():
    entries = (1, 2, 2, 1, 2, 1)
    base = canonicalize(ClassVector(3, entries))
    for perm in itertools.permutations(entries):
        if sum(perm) % 3 == 0:
            assert canonicalize(ClassVector(3, perm)) == base


def test_deform_examples():
    glued = deform(ClassVector(3, (1, 1, 1)), ClassVector(3, (2, 2, 2)))
    assert glued.entries == (1, 1, 2, 2)
    assert genus_of(glued) == 2
    with pytest.raises(NotAdmissible):
        deform(ClassVector(3, (1, 1, 1)), ClassVector(3, (1, 1, 1)))
    # d = 2: every pair is admissible
    deform(ClassVector(2, (1, 1, 1, 1)), ClassVector(2, (1, 1, 1, 1)))


def test_deform_genus_additive_exhaustive_small():
    vectors = []
    for r in range(3, 8):
        for ent in itertools.product((1, 2), repeat=r):
            if sum(ent) % 3 == 0:
                vectors.append(ClassVector(3, ent))
    for v1 in vectors[:40]:
        for v2 in vectors[:40]:
            if (v1.entries[-1] + v2.entries[0]) % 3 == 0:
                assert genus_of(deform(v1, v2)) == genus_of(v1) + genus_of(v2)


def test_find_delta11_hyperelliptic():
    w = find_delta11(InertiaType(2, (8,)))
    assert isinstance(w, DegenerationWitness)
    assert w.gamma1.entries == (1, 1, 1, 1)
    assert w.gamma2.r == 4
    validate_witness(w, InertiaType(2, (8,)))


def test_find_delta11_row_selection():
    # (6,0) has signature (3,1): the drop-two-1-points row applies
    assert find_delta11(InertiaType(3, (6, 0))).row == "r-2,s"
    # (0,6) has signature (1,3): the drop-two-2-points row applies
    assert find_delta11(InertiaType(3, (0, 6))).row == "r,s-2"
    # (3,3), signature (2,2): only the mixed row is feasible
    assert find_delta11(InertiaType(3, (3, 3))).row == "r-1,s-1"


def test_find_delta11_refusals():
    assert isinstance(find_delta11(InertiaType(3, (4, 1))), Refused)   # genus 3
    assert isinstance(find_delta11(InertiaType(2, (6,))), Refused)     # genus 2


def test_witness_validation_catches_corruption():
    w = find_delta11(InertiaType(3, (6, 0)))
    with pytest.raises(AssertionError):
        validate_witness(w, InertiaType(3, (3, 3)))


def test_sweeps():
    rec = sweep_delta11(3, 12)
    expected = sum(len(enumerate_signatures(g)) for g in range(4, 13))
    assert len(rec) == expected
    for r in rec:
        assert r["witness"] is not None
    rec2 = sweep_delta11(2, 12)
    assert [r["g"] for r in rec2] == list(range(3, 13))
    with pytest.raises(ValueError):
        sweep_delta11(3, 65)
