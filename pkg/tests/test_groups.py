import numpy as np
import pytest

from monodromy.bsgs import GroupAtlas
from monodromy.groups import (
    FormKind,
    GroupKind,
    block_embed,
    bsgs_order,
    build_atlas,
    classical_order,
    discover_su_generators,
    eis_det,
    eis_to_block,
    form_multiplier,
    hermitian_space,
    linear_space,
    split_embed,
    standard_generators,
    standard_symplectic_space,
    su_generator_table,
    symplectic_similitude,
    unitary_similitude,
    verify_generation,
)
from monodromy.matrices import det_mod, identity, inv_mod
from monodromy.residues import EisensteinResidue, classify_prime


def test_standard_symplectic_space_shape():
    sp = standard_symplectic_space(1, 5)
    assert np.array_equal(sp.gram_array(), np.array([[0, 1], [4, 0]]))
    for g, ell in [(1, 3), (2, 5), (3, 3)]:
        space = standard_symplectic_space(g, ell)
        J = space.gram_array()
        assert np.array_equal(J.T % ell, (-J) % ell)
        assert np.array_equal((J @ J) % ell, (-identity(2 * g)) % ell)


def test_symplectic_space_rejects_ell_2():
    with pytest.raises(ValueError):
        standard_symplectic_space(2, 2)


def test_form_multiplier_basics():
    sp = standard_symplectic_space(2, 7)
    assert form_multiplier(identity(4), sp) == 1
    assert form_multiplier(3 * identity(4), sp) == 9 % 7
    bad = identity(4)
    bad[0, 2] = 1  # skews one hyperbolic pair against the other
    assert form_multiplier(bad, sp) is None
    bad2 = identity(4)
    bad2[0, 0] = 2  # rescales only half of a hyperbolic pair
    assert form_multiplier(bad2, sp) is None


def test_form_multiplier_on_random_sp_product():
    import random

    sp = standard_symplectic_space(2, 3)
    gens = standard_generators(GroupKind.SP, sp)
    rng = random.Random(4)
    m = identity(4)
    for _ in range(12):
        m = (m @ gens[rng.randrange(len(gens))]) % 3
    assert form_multiplier(m, sp) == 1


@pytest.mark.parametrize("kind,n,ell,expected", [
    (GroupKind.SL, 2, 5, 120),
    (GroupKind.SL, 3, 5, 372000),
    (GroupKind.SP, 2, 3, 51840),
    (GroupKind.SU, 3, 5, 378000),
])
def test_classical_order_values(kind, n, ell, expected):
    assert classical_order(kind, n, ell) == expected


def test_sp2_coincides_with_sl2():
    for ell in (3, 5, 7):
        space = standard_symplectic_space(1, ell)
        gens = standard_generators(GroupKind.SP, space)
        assert bsgs_order(gens, space) == classical_order(GroupKind.SL, 2, ell)


def test_generators_satisfy_predicates():
    sp = standard_symplectic_space(2, 5)
    for M in standard_generators(GroupKind.SP, sp):
        assert det_mod(M, 5) == 1
        assert form_multiplier(M, sp) == 1
    hs = hermitian_space(2, 5)
    one = EisensteinResidue.one(hs.modulus)
    for M in standard_generators(GroupKind.SU, hs):
        assert eis_det(M) == one
        assert form_multiplier(M, hs) == one


def test_su_refuses_ramified():
    with pytest.raises(ValueError):
        hermitian_space(2, 3)


def test_su_requires_inert_for_hermitian_space():
    with pytest.raises(ValueError):
        hermitian_space(2, 7)


def test_su_table_entries_regenerate():
    table = su_generator_table()
    assert "2,5" in table and "3,5" in table
    fresh = discover_su_generators(2, 5, seed=0)
    stored = table["2,5"]
    assert len(fresh) == len(stored)
    m = classify_prime(5)
    for mat, smat in zip(fresh, stored):
        for row, srow in zip(mat, smat):
            assert [list(x.pair) for x in row] == srow


@pytest.mark.parametrize("kind,n,ell", [
    (GroupKind.SL, 2, 5),
    (GroupKind.SL, 3, 5),
    (GroupKind.SP, 1, 13),
    (GroupKind.SP, 2, 3),
    (GroupKind.SU, 2, 5),
])
def test_bsgs_order_matches_formula_quick(kind, n, ell):
    if kind is GroupKind.SL:
        space = linear_space(n, ell)
    elif kind is GroupKind.SP:
        space = standard_symplectic_space(n, ell)
    else:
        space = hermitian_space(n, ell)
    gens = standard_generators(kind, space)
    assert bsgs_order(gens, space) == classical_order(kind, n, ell)


def test_bsgs_order_identity_only():
    space = linear_space(3, 5)
    assert bsgs_order([identity(3)], space) == 1


def test_block_embed_preserves_det_and_form():
    m = np.array([[1, 1], [0, 1]])
    e = block_embed(m, (0, 1), (1, 1, 1))
    assert e.shape == (3, 3)
    assert det_mod(e, 5) == det_mod(m, 5)
    assert np.array_equal(block_embed(identity(2), (1, 2), (1, 1, 1)), identity(3))

    # symplectic: embedded generator keeps multiplier 1 on the 6-dim space
    g12 = standard_generators(GroupKind.SP, standard_symplectic_space(2, 3))
    full = standard_symplectic_space(3, 3)
    for M in g12:
        E = block_embed(M, (0, 1), (2, 2, 2))
        assert form_multiplier(E, full) == 1


def test_block_embed_dimension_mismatch():
    with pytest.raises(ValueError):
        block_embed(identity(3), (0, 1), (1, 1, 1))


def test_split_embed_properties():
    tau = np.array([[1, 2, 0], [0, 1, 1], [1, 0, 1]]) % 7
    M = split_embed(tau, 7)
    assert det_mod(M, 7) == 1
    assert np.array_equal(split_embed(identity(3), 7), identity(6))
    # cross pairing: t(tau x) . ((t tau)^-1 y) = tx . y
    x = np.array([1, 2, 3])
    y = np.array([4, 5, 6])
    assert int((tau @ x) @ (M[3:, 3:] @ y)) % 7 == int(x @ y) % 7


def test_split_embed_rejects_inert():
    with pytest.raises(ValueError):
        split_embed(identity(2), 5)


def test_split_embed_commutes_with_swap_inverse_transpose():
    tau = np.array([[2, 1], [1, 1]])
    M = split_embed(tau, 7)
    g = 2
    swap = np.zeros((2 * g, 2 * g), dtype=np.int64)
    swap[:g, g:] = identity(g)
    swap[g:, :g] = identity(g)
    conj = (swap @ M @ swap) % 7
    assert np.array_equal(conj, inv_mod(M.T, 7))


def test_similitude_representatives():
    sp = standard_symplectic_space(2, 5)
    s = symplectic_similitude(sp, 3)
    assert form_multiplier(s, sp) == 3
    hs = hermitian_space(2, 5)
    u = unitary_similitude(hs, 2)
    assert form_multiplier(u, hs) == EisensteinResidue.from_int(hs.modulus, 2)


def test_eis_to_block_is_ring_homomorphism():
    m = classify_prime(5)
    a = EisensteinResidue(m, (2, 3))
    b = EisensteinResidue(m, (4, 1))
    A = ((a,),)
    B = ((b,),)
    from monodromy.groups import eis_matmul

    assert np.array_equal(
        (eis_to_block(A, m) @ eis_to_block(B, m)) % 5,
        eis_to_block(eis_matmul(A, B), m),
    )


def test_verify_generation_sl_small():
    rep = verify_generation(GroupKind.SL, (1, 1, 1), 5)
    assert rep.equal and rep.order_generated == 372000


def test_verify_generation_refuses_su_ramified():
    with pytest.raises(ValueError):
        verify_generation(GroupKind.SU, (1, 1, 1), 3)


def test_verify_generation_domain_guard():
    with pytest.raises(Exception):
        verify_generation(GroupKind.SP, (3, 3, 3), 13, domain_limit=10**6)
