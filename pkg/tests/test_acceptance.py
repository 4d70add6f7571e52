"""Acceptance suite: one test per criterion, each printing a PASS line
with the measured numbers.  Run with `pytest -s tests/test_acceptance.py`
to see the lines as they complete."""

import json
import random
import time

import numpy as np
import pytest

from conftest import brute_count_points
from monodromy.bruhat import bruhat_decompose
from monodromy.bsgs import GroupAtlas
from monodromy.cli import main as cli_main
from monodromy.covers import (
    InertiaType,
    enumerate_inertia_types,
    enumerate_signatures,
    sweep_delta11,
)
from monodromy.curves import (
    lpoly,
    sample_hyper,
    sample_tri,
    split_unitary_predicate,
)
from monodromy.groups import (
    GroupKind,
    _sl_generators,
    bsgs_order,
    classical_order,
    hermitian_space,
    linear_space,
    standard_generators,
    standard_symplectic_space,
    verify_generation,
)
from monodromy.stats import (
    HyperFamily,
    SpTarget,
    SuTarget,
    TriFamily,
    compare,
    empirical_histogram,
    support_violation_scan,
    theoretical_histogram,
)

SEED = 20240401


# --------------------------------------------------------------------- 1


def test_acceptance_1_generation_certification():
    grid = [
        (GroupKind.SL, (1, 1, 1), 5),
        (GroupKind.SL, (1, 1, 1), 7),
        (GroupKind.SL, (1, 2, 1), 3),
        (GroupKind.SP, (1, 1, 1), 3),
        (GroupKind.SU, (1, 1, 1), 5),   # inert
        (GroupKind.SU, (1, 1, 1), 7),   # split: SL3(Z/7) embedding
    ]
    for kind, dims, ell in grid:
        t0 = time.time()
        rep = verify_generation(kind, dims, ell)
        dt = time.time() - t0
        assert rep.equal, (kind, dims, ell, rep)
        assert rep.order_generated == rep.order_target
        assert dt < 120.0
    print("ACCEPTANCE 1: PASS - generation certified on all 6 grid cases "
          "with exact order agreement")


# --------------------------------------------------------------------- 2


def test_acceptance_2_order_engine():
    cases = []
    for n in (2, 3, 4):
        for ell in (2, 3, 5, 7):
            cases.append((GroupKind.SL, n, ell))
    for g, ell in [(1, 3), (1, 5), (1, 7), (1, 11), (1, 13),
                   (2, 3), (2, 5), (3, 3)]:
        cases.append((GroupKind.SP, g, ell))
    for n, ell in [(2, 5), (3, 5)]:
        cases.append((GroupKind.SU, n, ell))
    worst = 0.0
    for kind, n, ell in cases:
        if kind is GroupKind.SL:
            space = linear_space(n, ell)
        elif kind is GroupKind.SP:
            space = standard_symplectic_space(n, ell)
        else:
            space = hermitian_space(n, ell)
        t0 = time.time()
        gens = standard_generators(kind, space)
        order = bsgs_order(gens, space)
        dt = time.time() - t0
        worst = max(worst, dt)
        assert order == classical_order(kind, n, ell), (kind, n, ell, order)
        assert dt < 60.0
    print(f"ACCEPTANCE 2: PASS - {len(cases)} exact order agreements, "
          f"slowest case {worst:.1f}s")


# --------------------------------------------------------------------- 3


def test_acceptance_3_bruhat_selftest():
    ell = 5
    atlas = GroupAtlas(_sl_generators(4, ell), 4, ell)
    rng = random.Random(SEED)
    failures = 0
    for _ in range(1000):
        g = atlas.random_element(rng)
        f = bruhat_decompose(g, ell)
        if not np.array_equal(f.recompose(ell), g):
            failures += 1
    assert failures == 0
    print("ACCEPTANCE 3: PASS - 1000/1000 seeded SL4(Z/5) elements "
          "recompose exactly")


# --------------------------------------------------------------------- 4


def test_acceptance_4_covers_suite():
    t0 = time.time()
    for g in range(1, 51):
        sigs = enumerate_signatures(g)
        assert len(sigs) == len(enumerate_inertia_types(g))
        for s in sigs:
            assert s.r + s.s == g
            assert g - 1 <= 3 * s.r <= 2 * g + 1
            assert g - 1 <= 3 * s.s <= 2 * g + 1
    tri = sweep_delta11(3, 12)
    assert len(tri) == sum(len(enumerate_signatures(g)) for g in range(4, 13))
    hyp = sweep_delta11(2, 12)
    assert [r["g"] for r in hyp] == list(range(3, 13))
    dt = time.time() - t0
    assert dt < 5.0
    print(f"ACCEPTANCE 4: PASS - signatures to g=50 and {len(tri)}+{len(hyp)} "
          f"validated witnesses in {dt:.2f}s")


# --------------------------------------------------------------------- 5


def test_acceptance_5_counting_oracle_equivalence():
    t0 = time.time()
    from monodromy.curves import count_points

    checked = 0
    for i in range(25):
        c = sample_hyper(1, 13, SEED + i)
        assert count_points(c, 1) == brute_count_points(c, 1)
        checked += 1
    for i in range(25):
        c = sample_hyper(2, 13, SEED + i)
        for k in (1, 2):
            assert count_points(c, k) == brute_count_points(c, k)
        checked += 1
    for t in (InertiaType(3, (4, 1)), InertiaType(3, (1, 4))):
        for i in range(25):
            c = sample_tri(t, 13, SEED + i)
            for k in (1, 2, 3):
                assert 13**k <= 2200
                assert count_points(c, k) == brute_count_points(c, k)
            checked += 1
    dt = time.time() - t0
    assert checked == 100
    assert dt < 120.0
    print(f"ACCEPTANCE 5: PASS - 100 curves, formulaic counts equal "
          f"enumeration on every F_p^k in {dt:.1f}s")


# --------------------------------------------------------------------- 6


def test_acceptance_6_weil_invariants():
    for family, make in (
        ("hyperelliptic", lambda i: sample_hyper(2, 101, SEED + i)),
        ("trielliptic", lambda i: sample_tri(InertiaType(3, (4, 1)), 13, SEED + i)),
    ):
        for i in range(500):
            curve = make(i)
            L = lpoly(curve)
            g, p, a = L.g, L.p, L.coeffs
            for j in range(g + 1):
                assert a[2 * g - j] == p ** (g - j) * a[j]
            mags = np.abs(L.weil_numbers())
            assert np.max(np.abs(mags - p**0.5)) < 1e-6
    print("ACCEPTANCE 6: PASS - functional equation exact and root "
          "magnitudes at sqrt(p) for 500 curves per family")


# --------------------------------------------------------------------- 7, 8


@pytest.fixture(scope="module")
def hyper_g1_l3():
    emp = empirical_histogram(HyperFamily(1), 1009, 3, 2000, SEED)
    theo = theoretical_histogram(SpTarget(1), 3, 1009 % 3, ("enumerate",))
    return emp, theo


@pytest.fixture(scope="module")
def hyper_g1_l5():
    emp2000 = empirical_histogram(HyperFamily(1), 1009, 5, 2000, SEED)
    tail = empirical_histogram(HyperFamily(1), 1009, 5, 2000, SEED + 2000)
    emp4000 = emp2000.merge(tail)
    theo = theoretical_histogram(SpTarget(1), 5, 1009 % 5, ("enumerate",))
    return emp2000, emp4000, theo


@pytest.fixture(scope="module")
def hyper_g2_l3():
    emp = empirical_histogram(HyperFamily(2), 101, 3, 3000, SEED, workers=2)
    theo = theoretical_histogram(SpTarget(2), 3, 101 % 3, ("enumerate",))
    return emp, theo


@pytest.fixture(scope="module")
def tri_l7():
    emp = empirical_histogram(TriFamily(4, 1), 13, 7, 500, SEED)
    theo = theoretical_histogram(SuTarget(3), 7, 13 % 7, ("enumerate",))
    return emp, theo


def test_acceptance_7_support_containment(hyper_g1_l3, hyper_g1_l5,
                                          hyper_g2_l3, tri_l7):
    t0 = time.time()
    emp3, theo3 = hyper_g1_l3
    assert support_violation_scan(emp3, theo3) == []
    emp5, _, theo5 = hyper_g1_l5
    assert support_violation_scan(emp5, theo5) == []
    emp2, theo2 = hyper_g2_l3
    assert support_violation_scan(emp2, theo2) == []
    empt, theot = tri_l7
    assert support_violation_scan(empt, theot) == []
    passes = sum(v for k, v in empt.counts.items()
                 if split_unitary_predicate(k, 7, 13)[0])
    assert passes == empt.total == 500
    print(f"ACCEPTANCE 7: PASS - empty violation scans on all four runs; "
          f"split predicate 500/500 (scan time {time.time()-t0:.1f}s)")


def test_acceptance_8_equidistribution(hyper_g1_l3, hyper_g1_l5, hyper_g2_l3):
    _, emp4000, theo5 = hyper_g1_l5
    assert emp4000.total == 4000
    rep5 = compare(emp4000, theo5)
    assert rep5.total_variation <= 0.10

    emp3, theo3 = hyper_g1_l3
    rep3 = compare(emp3, theo3)
    assert rep3.coverage == 1.0

    emp2, theo2 = hyper_g2_l3
    rep2 = compare(emp2, theo2)
    gap = abs(rep2.irreducible_fraction_empirical
              - rep2.irreducible_fraction_theoretical)
    assert gap <= 0.05
    print(f"ACCEPTANCE 8: PASS - tv={rep5.total_variation:.4f} (<=0.10), "
          f"coverage={rep3.coverage}, irreducible gap={gap:.4f} (<=0.05)")


# --------------------------------------------------------------------- 9


def _strip_meta(text: str) -> dict:
    obj = json.loads(text)
    obj.pop("meta", None)
    return obj


def test_acceptance_9_determinism(tmp_path):
    runs = {
        "sweep": ["covers", "sweep", "--d", "3", "--g-max", "8"],
        "verify": ["groups", "verify-generation", "--kind", "sl",
                   "--dims", "1,1,1", "--ell", "5"],
        "empirical": ["mono", "empirical", "--family", "tri", "--d1", "4",
                      "--d2", "1", "--p", "13", "--ell", "7", "--n", "60",
                      "--seed", str(SEED)],
        "theoretical": ["mono", "theoretical", "--kind", "sp", "--g", "1",
                        "--ell", "5", "--m", "2", "--mode", "sample",
                        "--n", "500", "--seed", "3"],
    }
    for name, argv in runs.items():
        a, b = tmp_path / f"{name}_a.json", tmp_path / f"{name}_b.json"
        assert cli_main(argv + ["-o", str(a), "--no-meta"]) == 0
        assert cli_main(argv + ["-o", str(b), "--no-meta"]) == 0
        assert a.read_bytes() == b.read_bytes(), name
        # with metadata attached, stripping it restores byte equality
        am, bm = tmp_path / f"{name}_am.json", tmp_path / f"{name}_bm.json"
        assert cli_main(argv + ["-o", str(am)]) == 0
        assert cli_main(argv + ["-o", str(bm)]) == 0
        assert _strip_meta(am.read_text()) == _strip_meta(bm.read_text())

    # worker counts 1 and 4 produce identical bytes
    base = ["mono", "empirical", "--family", "hyper", "--g", "1", "--p", "101",
            "--ell", "3", "--n", "80", "--seed", "4", "--no-meta"]
    w1, w4 = tmp_path / "w1.json", tmp_path / "w4.json"
    assert cli_main(base + ["--workers", "1", "-o", str(w1)]) == 0
    assert cli_main(base + ["--workers", "4", "-o", str(w4)]) == 0
    assert w1.read_bytes() == w4.read_bytes()
    print("ACCEPTANCE 9: PASS - byte-identical reruns (meta stripped) and "
          "worker-count invariance")
