"""Matrix groups with forms over residue rings: standard generators,
membership predicates, block embeddings, exact orders, and the generation
certifier for sums of three formed subspaces.

Symplectic and special linear groups live over Z/l directly.  Special
unitary groups over an inert l live over the quadratic Eisenstein
extension; their elements are converted to 2n x 2n matrices over Z/l
(the regular representation of the extension) before any permutation-
domain computation.  For split l the unitary group is parameterized by
SL_g(Z/l) through tau -> (tau, transpose-inverse of tau).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Optional

import numpy as np

from .bsgs import GroupAtlas
from .matrices import identity, inv_mod
from .residues import (
    EisensteinResidue,
    PrimeModulus,
    Splitting,
    classify_prime,
)

__all__ = [
    "FormKind",
    "GroupKind",
    "FormedSpace",
    "GenerationReport",
    "standard_symplectic_space",
    "hermitian_space",
    "linear_space",
    "form_multiplier",
    "standard_generators",
    "classical_order",
    "bsgs_order",
    "build_atlas",
    "block_embed",
    "split_embed",
    "symplectic_similitude",
    "unitary_similitude",
    "verify_generation",
    "discover_su_generators",
    "su_generator_table",
]


class FormKind(Enum):
    SYMPLECTIC = "symplectic"
    HERMITIAN = "hermitian"
    NONE = "none"


class GroupKind(Enum):
    SL = "sl"
    SP = "sp"
    SU = "su"


@dataclass(frozen=True)
class FormedSpace:
    """A free module of rank dim over Z/l or the Eisenstein ring, with an
    optional Gram matrix.  Hermitian spaces carry the signature pair as a
    reporting label only; it does not change the finite group."""

    modulus: PrimeModulus
    dim: int
    kind: FormKind
    gram: Optional[tuple] = None  # tuple-of-tuples; entries int or EisensteinResidue
    signature: Optional[tuple] = None

    @property
    def ell(self) -> int:
        return self.modulus.ell

    @property
    def is_eisenstein(self) -> bool:
        return self.kind is FormKind.HERMITIAN

    def gram_array(self) -> np.ndarray:
        return np.asarray(self.gram, dtype=np.int64) % self.ell


def standard_symplectic_space(g: int, ell: int) -> FormedSpace:
    """Dimension 2g with Gram the block diagonal of g copies of
    [[0, 1], [-1, 0]]."""
    if g < 1:
        raise ValueError("g must be >= 1")
    modulus = classify_prime(ell)
    if ell == 2:
        raise ValueError("symplectic machinery requires an odd prime")
    gram = np.zeros((2 * g, 2 * g), dtype=np.int64)
    for i in range(g):
        gram[2 * i, 2 * i + 1] = 1
        gram[2 * i + 1, 2 * i] = ell - 1
    return FormedSpace(modulus, 2 * g, FormKind.SYMPLECTIC,
                       tuple(map(tuple, gram.tolist())))


def linear_space(n: int, ell: int) -> FormedSpace:
    if n < 1:
        raise ValueError("n must be >= 1")
    return FormedSpace(classify_prime(ell), n, FormKind.NONE)


def hermitian_space(g: int, ell: int, signature: Optional[tuple] = None) -> FormedSpace:
    """Rank g over the inert Eisenstein extension with identity Gram."""
    if g < 1:
        raise ValueError("g must be >= 1")
    modulus = classify_prime(ell)
    if modulus.splitting is Splitting.RAMIFIED:
        raise ValueError("unitary operations refuse the ramified prime 3")
    if modulus.splitting is not Splitting.INERT:
        raise ValueError(
            "hermitian spaces are built over inert primes; split primes go "
            "through the SL parameterization (split_embed)")
    one = EisensteinResidue.one(modulus)
    zero = EisensteinResidue.zero(modulus)
    gram = tuple(tuple(one if i == j else zero for j in range(g)) for i in range(g))
    return FormedSpace(modulus, g, FormKind.HERMITIAN, gram, signature)


# --------------------------------------------------------------------------
# Eisenstein matrices: tuple-of-tuples of EisensteinResidue


def eis_identity(modulus: PrimeModulus, n: int):
    one = EisensteinResidue.one(modulus)
    zero = EisensteinResidue.zero(modulus)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def eis_matmul(A, B):
    n = len(A)
    m = len(B[0])
    k = len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def eis_conj_transpose(A):
    n = len(A)
    m = len(A[0])
    return tuple(tuple(A[j][i].conj() for j in range(n)) for i in range(m))


def eis_scale(A, c: EisensteinResidue):
    return tuple(tuple(x * c for x in row) for row in A)


def eis_det(A) -> EisensteinResidue:
    n = len(A)
    if n == 1:
        return A[0][0]
    modulus = A[0][0].modulus
    acc = EisensteinResidue.zero(modulus)
    for j in range(n):
        minor = tuple(row[:j] + row[j + 1:] for row in A[1:])
        term = A[0][j] * eis_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def eis_to_block(A, modulus: PrimeModulus) -> np.ndarray:
    """Regular representation over Z/l: entry a + b*w becomes the 2x2 block
    [[a, -b], [b, a - b]] acting on (1, w) coordinates."""
    if modulus.splitting is Splitting.SPLIT:
        raise ValueError("block conversion is for inert/ramified moduli")
    n = len(A)
    ell = modulus.ell
    out = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            a, b = A[i][j].pair
            out[2 * i, 2 * j] = a
            out[2 * i, 2 * j + 1] = (-b) % ell
            out[2 * i + 1, 2 * j] = b
            out[2 * i + 1, 2 * j + 1] = (a - b) % ell
    return out


# --------------------------------------------------------------------------
# form multipliers


def form_multiplier(M, space: FormedSpace):
    """The scalar m with (adjoint of M) . gram . M = m . gram, or None when
    M is not a similitude of the space's form."""
    if space.kind is FormKind.NONE:
        raise ValueError("space carries no form")
    if space.kind is FormKind.SYMPLECTIC:
        M = np.asarray(M, dtype=np.int64) % space.ell
        if M.shape != (space.dim, space.dim):
            raise ValueError("dimension mismatch")
        J = space.gram_array()
        A = (M.T @ J @ M) % space.ell
        i, j = 0, 1  # gram[0, 1] = 1 in the standard basis
        m = int(A[i, j]) % space.ell
        if np.array_equal(A, (m * J) % space.ell):
            return m
        return None
    # hermitian
    if len(M) != space.dim:
        raise ValueError("dimension mismatch")
    A = eis_matmul(eis_matmul(eis_conj_transpose(M), space.gram), M)
    m = A[0][0]
    if m != m.conj():
        return None
    expected = eis_scale(space.gram, m)
    if A == expected:
        return m
    return None


# --------------------------------------------------------------------------
# standard generators


def _sl_generators(n: int, ell: int):
    if n == 1:
        return []
    out = []
    for i in range(n - 1):
        E = identity(n)
        E[i, i + 1] = 1
        out.append(E % ell)
        E = identity(n)
        E[i + 1, i] = 1
        out.append(E % ell)
    return out


def _sp_generators(space: FormedSpace):
    """Symplectic transvections x -> x + <x, v> v for v running over the
    standard basis and all pairwise sums of basis vectors."""
    n = space.dim
    ell = space.ell
    J = space.gram_array()
    dirs = [np.eye(n, dtype=np.int64)[i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = np.zeros(n, dtype=np.int64)
            v[i] = 1
            v[j] = 1
            dirs.append(v)
    out = []
    for v in dirs:
        w = (J.T @ v) % ell  # row functional x -> <x, v>
        T = (identity(n) + np.outer(v, w)) % ell
        out.append(T)
    return out


def _su_table_key(g: int, ell: int) -> str:
    return f"{g},{ell}"


@lru_cache(maxsize=1)
def su_generator_table() -> dict:
    """Frozen table of unitary transvection generators keyed by (g, ell)."""
    path = resources.files("monodromy").joinpath("data/su_generators.json")
    with path.open("r", encoding="utf-8") as fh:
        return json.load(fh)


def _isotropic_vectors(modulus: PrimeModulus, g: int):
    """Nonzero isotropic vectors for the identity Hermitian form, first
    nonzero coordinate normalized to 1, in deterministic order."""
    ell = modulus.ell
    elements = [EisensteinResidue(modulus, (a, b))
                for a in range(ell) for b in range(ell)]
    one = EisensteinResidue.one(modulus)
    zero = EisensteinResidue.zero(modulus)

    def rec(prefix, started):
        if len(prefix) == g:
            if started and sum(x.norm() for x in prefix) % ell == 0:
                yield tuple(prefix)
            return
        if not started:
            yield from rec(prefix + [zero], False)
            yield from rec(prefix + [one], True)
        else:
            for x in elements:
                yield from rec(prefix + [x], True)

    yield from rec([], False)


def _unitary_transvection(modulus: PrimeModulus, v, c: EisensteinResidue):
    """I + c v v* for isotropic v and trace-zero c: determinant one and
    form multiplier one by construction."""
    g = len(v)
    rows = []
    for i in range(g):
        row = []
        for j in range(g):
            x = c * v[i] * v[j].conj()
            if i == j:
                x = x + EisensteinResidue.one(modulus)
            row.append(x)
        rows.append(tuple(row))
    return tuple(rows)


def discover_su_generators(g: int, ell: int, seed: int = 0, max_gens: int = 12):
    """Seeded search for SU generators among unitary transvections,
    validated by exact order against the classical formula."""
    space = hermitian_space(g, ell)
    modulus = space.modulus
    if g == 1:
        return []
    iso = list(_isotropic_vectors(modulus, g))
    rng = random.Random(seed)
    rng.shuffle(iso)
    c = EisensteinResidue.omega(modulus).scale(2) + EisensteinResidue.one(modulus)
    assert c.conj() == -c  # trace zero
    target = classical_order(GroupKind.SU, g, ell)
    gens = []
    for v in iso:
        T = _unitary_transvection(modulus, v, c)
        assert form_multiplier(T, space) == EisensteinResidue.one(modulus)
        assert eis_det(T) == EisensteinResidue.one(modulus)
        gens.append(T)
        if len(gens) < 2:
            continue
        blocks = [eis_to_block(M, modulus) for M in gens]
        atlas = GroupAtlas(blocks, 2 * g, ell)
        if atlas.order == target:
            return gens
        if len(gens) >= max_gens:
            raise RuntimeError(
                f"no generating transvection set of size <= {max_gens} "
                f"found for SU_{g}(l={ell})")
    raise RuntimeError(f"isotropic vectors exhausted for SU_{g}(l={ell})")


def _su_generators(space: FormedSpace):
    g, ell = space.dim, space.ell
    table = su_generator_table()
    key = _su_table_key(g, ell)
    if key in table:
        modulus = space.modulus
        return [
            tuple(tuple(EisensteinResidue(modulus, tuple(p)) for p in row)
                  for row in mat)
            for mat in table[key]
        ]
    return discover_su_generators(g, ell)


def standard_generators(kind: GroupKind, space: FormedSpace):
    """Generators with determinant one and form multiplier one (where a
    form exists).  SL: elementary transvections.  Sp: symplectic
    transvections.  SU: unitary transvections from the frozen table."""
    if kind is GroupKind.SL:
        if space.kind is not FormKind.NONE:
            raise ValueError("SL generators need a formless space")
        return _sl_generators(space.dim, space.ell)
    if kind is GroupKind.SP:
        if space.kind is not FormKind.SYMPLECTIC:
            raise ValueError("Sp generators need a symplectic space")
        return _sp_generators(space)
    if kind is GroupKind.SU:
        if space.kind is not FormKind.HERMITIAN:
            raise ValueError("SU generators need a hermitian space")
        if space.modulus.splitting is Splitting.RAMIFIED:
            raise ValueError("unitary operations refuse the ramified prime 3")
        return _su_generators(space)
    raise ValueError(f"unknown kind {kind!r}")


# --------------------------------------------------------------------------
# classical orders and the BSGS engine


def classical_order(kind: GroupKind, n: int, ell: int) -> int:
    """|SL_n(l)|, |Sp_2g(l)| (n = g), or |SU_n(l^2)| by the standard
    product formulas."""
    q = ell
    if kind is GroupKind.SL:
        o = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            o *= q**i - 1
        return o
    if kind is GroupKind.SP:
        g = n
        o = q ** (g * g)
        for i in range(1, g + 1):
            o *= q ** (2 * i) - 1
        return o
    if kind is GroupKind.SU:
        o = q ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            o *= q**i - (-1) ** i
        return o
    raise ValueError(f"unknown kind {kind!r}")


def build_atlas(gens, space: FormedSpace, domain_limit: int = 20_000_000) -> GroupAtlas:
    """BSGS atlas for matrices over Z/l; Eisenstein matrices are first
    converted to their 2n x 2n block representation."""
    if gens and not isinstance(gens[0], np.ndarray):
        blocks = [eis_to_block(M, space.modulus) for M in gens]
        return GroupAtlas(blocks, 2 * space.dim, space.ell, domain_limit)
    return GroupAtlas(gens, space.dim, space.ell, domain_limit)


def bsgs_order(gens, space: FormedSpace) -> int:
    """Exact order of the group generated by gens; deterministic given the
    input order of gens."""
    return build_atlas(gens, space).order


# --------------------------------------------------------------------------
# embeddings


def block_embed(M: np.ndarray, parts: tuple, dims: tuple) -> np.ndarray:
    """Extend M, acting on the two summands selected by parts, by the
    identity on the complementary summand of the three-part splitting."""
    i, j = parts
    if i == j or not (0 <= i < 3 and 0 <= j < 3):
        raise ValueError("parts must be two distinct indices in 0..2")
    M = np.asarray(M, dtype=np.int64)
    total = sum(dims)
    offs = [sum(dims[:t]) for t in range(3)]
    idx = list(range(offs[i], offs[i] + dims[i])) + list(range(offs[j], offs[j] + dims[j]))
    if M.shape != (len(idx), len(idx)):
        raise ValueError(f"matrix of size {M.shape} does not act on summands of total dim {len(idx)}")
    out = identity(total)
    out[np.ix_(idx, idx)] = M
    return out


def eis_block_embed(M, parts: tuple, dims: tuple, modulus: PrimeModulus):
    i, j = parts
    offs = [sum(dims[:t]) for t in range(3)]
    idx = list(range(offs[i], offs[i] + dims[i])) + list(range(offs[j], offs[j] + dims[j]))
    total = sum(dims)
    out = [list(row) for row in eis_identity(modulus, total)]
    for a, ia in enumerate(idx):
        for b, jb in enumerate(idx):
            out[ia][jb] = M[a][b]
    return tuple(tuple(row) for row in out)


def split_embed(tau: np.ndarray, ell: int) -> np.ndarray:
    """tau -> block diagonal (tau, transpose-inverse of tau), the unitary
    group's image on the two eigenspace summands for a split prime."""
    modulus = classify_prime(ell)
    if modulus.splitting is not Splitting.SPLIT:
        raise ValueError(f"{ell} is not split (need l = 1 mod 3)")
    tau = np.asarray(tau, dtype=np.int64) % ell
    g = tau.shape[0]
    dual = inv_mod(tau.T, ell)
    out = np.zeros((2 * g, 2 * g), dtype=np.int64)
    out[:g, :g] = tau
    out[g:, g:] = dual
    return out


# --------------------------------------------------------------------------
# similitude representatives


def symplectic_similitude(space: FormedSpace, m: int) -> np.ndarray:
    """Fixed representative with multiplier m: diag(m, 1) on each
    hyperbolic pair of the standard basis."""
    if space.kind is not FormKind.SYMPLECTIC:
        raise ValueError("need a symplectic space")
    m %= space.ell
    if m == 0:
        raise ValueError("multiplier must be a unit")
    g = space.dim // 2
    out = identity(space.dim)
    for i in range(g):
        out[2 * i, 2 * i] = m
    assert form_multiplier(out, space) == m
    return out


def unitary_similitude(space: FormedSpace, m: int):
    """c . I with norm(c) = m, the inert-side similitude of multiplier m;
    c chosen as the lexicographically least pair."""
    if space.kind is not FormKind.HERMITIAN:
        raise ValueError("need a hermitian space")
    modulus = space.modulus
    ell = space.ell
    m %= ell
    if m == 0:
        raise ValueError("multiplier must be a unit")
    for a in range(ell):
        for b in range(ell):
            c = EisensteinResidue(modulus, (a, b))
            if c.norm() == m:
                return eis_scale(eis_identity(modulus, space.dim), c)
    raise AssertionError("norm map onto units is surjective")


# --------------------------------------------------------------------------
# generation certification


@dataclass(frozen=True)
class GenerationReport:
    kind: str
    dims: tuple
    ell: int
    splitting: str
    order_generated: int
    order_target: int
    equal: bool

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "dims": list(self.dims),
            "ell": self.ell,
            "splitting": self.splitting,
            "order_generated": self.order_generated,
            "order_target": self.order_target,
            "equal": self.equal,
        }


def verify_generation(kind: GroupKind, unit_dims: tuple, ell: int,
                      domain_limit: int = 1_000_000) -> GenerationReport:
    """Generate H from the embedded groups of the first-two and last-two
    summands and compare its exact BSGS order with the classical order of
    the full group."""
    g1, g2, g3 = unit_dims
    if min(g1, g2, g3) < 1:
        raise ValueError("summand dimensions must be >= 1")
    modulus = classify_prime(ell)
    if ell == 2:
        raise ValueError("odd primes only")
    g = g1 + g2 + g3

    if kind is GroupKind.SL:
        dims = (g1, g2, g3)
        gens12 = _sl_generators(g1 + g2, ell)
        gens23 = _sl_generators(g2 + g3, ell)
        embedded = [block_embed(M, (0, 1), dims) for M in gens12]
        embedded += [block_embed(M, (1, 2), dims) for M in gens23]
        atlas = GroupAtlas(embedded, g, ell, domain_limit)
        target = classical_order(GroupKind.SL, g, ell)
        return GenerationReport("sl", unit_dims, ell, modulus.splitting.value,
                                atlas.order, target, atlas.order == target)

    if kind is GroupKind.SP:
        dims = (2 * g1, 2 * g2, 2 * g3)
        gens12 = _sp_generators(standard_symplectic_space(g1 + g2, ell))
        gens23 = _sp_generators(standard_symplectic_space(g2 + g3, ell))
        embedded = [block_embed(M, (0, 1), dims) for M in gens12]
        embedded += [block_embed(M, (1, 2), dims) for M in gens23]
        full = standard_symplectic_space(g, ell)
        for M in embedded:
            assert form_multiplier(M, full) == 1
        atlas = GroupAtlas(embedded, 2 * g, ell, domain_limit)
        target = classical_order(GroupKind.SP, g, ell)
        return GenerationReport("sp", unit_dims, ell, modulus.splitting.value,
                                atlas.order, target, atlas.order == target)

    if kind is GroupKind.SU:
        if modulus.splitting is Splitting.RAMIFIED:
            raise ValueError("unitary operations refuse the ramified prime 3")
        if modulus.splitting is Splitting.INERT:
            dims = (g1, g2, g3)
            gens12 = _su_generators(hermitian_space(g1 + g2, ell))
            gens23 = _su_generators(hermitian_space(g2 + g3, ell))
            full = hermitian_space(g, ell)
            embedded = [eis_block_embed(M, (0, 1), dims, modulus) for M in gens12]
            embedded += [eis_block_embed(M, (1, 2), dims, modulus) for M in gens23]
            one = EisensteinResidue.one(modulus)
            for M in embedded:
                assert form_multiplier(M, full) == one
            blocks = [eis_to_block(M, modulus) for M in embedded]
            atlas = GroupAtlas(blocks, 2 * g, ell, domain_limit)
            target = classical_order(GroupKind.SU, g, ell)
            return GenerationReport("su", unit_dims, ell, modulus.splitting.value,
                                    atlas.order, target, atlas.order == target)
        # split: the unitary group is SL_g through the eigenspace
        # parameterization; certify generation of the embedded image
        dims = (g1, g2, g3)
        gens12 = _sl_generators(g1 + g2, ell)
        gens23 = _sl_generators(g2 + g3, ell)
        taus = [block_embed(M, (0, 1), dims) for M in gens12]
        taus += [block_embed(M, (1, 2), dims) for M in gens23]
        embedded = [split_embed(t, ell) for t in taus]
        atlas = GroupAtlas(embedded, 2 * g, ell, domain_limit)
        target = classical_order(GroupKind.SL, g, ell)
        return GenerationReport("su", unit_dims, ell, modulus.splitting.value,
                                atlas.order, target, atlas.order == target)

    raise ValueError(f"unknown kind {kind!r}")
