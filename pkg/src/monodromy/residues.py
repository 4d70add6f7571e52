"""Arithmetic in Z/l, in the Eisenstein residue ring Z[w]/l (w a primitive
cube root of unity), and in small extension fields F_{p^k} used for point
counting.

All values are immutable; every operation is pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

__all__ = [
    "Splitting",
    "PrimeModulus",
    "EisensteinResidue",
    "ExtField",
    "classify_prime",
    "is_prime",
    "build_ext_field",
    "cube_root_count",
]


def is_prime(n: int) -> bool:
    """Trial-division primality test; adequate at the scales used here."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Splitting(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class PrimeModulus:
    """A prime l together with its behaviour in Z[w]."""

    ell: int
    splitting: Splitting

    def omega_residue(self) -> int:
        """Smallest primitive cube root of unity mod l (split moduli only)."""
        if self.splitting is not Splitting.SPLIT:
            raise ValueError(f"no cube root of unity in Z/{self.ell}")
        for w in range(2, self.ell):
            if (w * w + w + 1) % self.ell == 0:
                return w
        raise AssertionError("unreachable: split prime without cube root")


def classify_prime(ell: int) -> PrimeModulus:
    """Tag a prime by its splitting in Z[w]: split iff l = 1 mod 3, inert
    iff l = 2 mod 3, ramified iff l = 3."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if ell == 3:
        tag = Splitting.RAMIFIED
    elif ell % 3 == 1:
        tag = Splitting.SPLIT
    else:
        tag = Splitting.INERT
    return PrimeModulus(ell, tag)


class EisensteinResidue:
    """Element of Z[w] tensor Z/l.

    Inert and ramified moduli store the pair (a, b) meaning a + b*w with
    w^2 + w + 1 = 0.  Split moduli store the idempotent coordinates (u, v)
    on the two factors of Z/l + Z/l; conjugation swaps them.
    """

    __slots__ = ("modulus", "pair")

    def __init__(self, modulus: PrimeModulus, pair):
        ell = modulus.ell
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "pair", (pair[0] % ell, pair[1] % ell))

    def __setattr__(self, *a):
        raise AttributeError("EisensteinResidue is immutable")

    @classmethod
    def from_int(cls, modulus: PrimeModulus, n: int) -> "EisensteinResidue":
        if modulus.splitting is Splitting.SPLIT:
            return cls(modulus, (n, n))
        return cls(modulus, (n, 0))

    @classmethod
    def zero(cls, modulus: PrimeModulus) -> "EisensteinResidue":
        return cls.from_int(modulus, 0)

    @classmethod
    def one(cls, modulus: PrimeModulus) -> "EisensteinResidue":
        return cls.from_int(modulus, 1)

    @classmethod
    def omega(cls, modulus: PrimeModulus) -> "EisensteinResidue":
        if modulus.splitting is Splitting.SPLIT:
            w = modulus.omega_residue()
            return cls(modulus, (w, (-1 - w) % modulus.ell))
        return cls(modulus, (0, 1))

    def _check_same(self, other: "EisensteinResidue"):
        if not isinstance(other, EisensteinResidue):
            raise TypeError(f"expected EisensteinResidue, got {type(other)!r}")
        if other.modulus != self.modulus:
            raise ValueError("mixed moduli")

    def __add__(self, other):
        self._check_same(other)
        a, b = self.pair
        c, d = other.pair
        return EisensteinResidue(self.modulus, (a + c, b + d))

    def __neg__(self):
        a, b = self.pair
        return EisensteinResidue(self.modulus, (-a, -b))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check_same(other)
        a, b = self.pair
        c, d = other.pair
        if self.modulus.splitting is Splitting.SPLIT:
            return EisensteinResidue(self.modulus, (a * c, b * d))
        # (a + bw)(c + dw) with w^2 = -1 - w
        return EisensteinResidue(self.modulus, (a * c - b * d, a * d + b * c - b * d))

    def conj(self) -> "EisensteinResidue":
        a, b = self.pair
        if self.modulus.splitting is Splitting.SPLIT:
            return EisensteinResidue(self.modulus, (b, a))
        return EisensteinResidue(self.modulus, (a - b, -b))

    def norm(self) -> int:
        """x * conj(x), which lands in Z/l."""
        prod = self * self.conj()
        u, v = prod.pair
        if self.modulus.splitting is Splitting.SPLIT:
            assert u == v
            return u
        assert v == 0
        return u

    def is_zero(self) -> bool:
        return self.pair == (0, 0)

    def is_unit(self) -> bool:
        return self.norm() % self.modulus.ell != 0

    def inv(self) -> "EisensteinResidue":
        n = self.norm()
        ell = self.modulus.ell
        if n % ell == 0:
            raise ZeroDivisionError(f"{self!r} is a zero divisor or zero")
        ninv = pow(n, -1, ell)
        c = self.conj()
        return EisensteinResidue(self.modulus, (c.pair[0] * ninv, c.pair[1] * ninv))

    def scale(self, n: int) -> "EisensteinResidue":
        return EisensteinResidue(self.modulus, (self.pair[0] * n, self.pair[1] * n))

    def __eq__(self, other):
        return (
            isinstance(other, EisensteinResidue)
            and other.modulus == self.modulus
            and other.pair == self.pair
        )

    def __hash__(self):
        return hash((self.modulus, self.pair))

    def __repr__(self):
        return f"Eis({self.pair[0]},{self.pair[1]} mod {self.modulus.ell};{self.modulus.splitting.value})"


# --------------------------------------------------------------------------
# extension fields F_{p^k}, k <= 3


@dataclass(frozen=True)
class ExtField:
    """F_{p^k} presented as F_p[x] modulo a monic rootless polynomial.

    Elements are coefficient tuples of length k (ascending powers).  The
    scalar operations below are deliberately simple; bulk work goes through
    the *_array methods, which operate on (N, k) integer arrays.
    """

    p: int
    k: int
    modulus: tuple  # length k+1, ascending, monic

    @property
    def cardinality(self) -> int:
        return self.p**self.k

    def zero(self):
        return (0,) * self.k

    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def embed(self, n: int):
        return (n % self.p,) + (0,) * (self.k - 1)

    def elements(self):
        """All field elements in a fixed deterministic order."""
        for tup in itertools.product(range(self.p), repeat=self.k):
            yield tup

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        k, p = self.k, self.p
        if k == 1:
            return ((a[0] * b[0]) % p,)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        red = _reduction_rows(self)
        out = prod[:k]
        for i in range(k, 2 * k - 1):
            c = prod[i]
            if c:
                row = red[i - k]
                for j in range(k):
                    out[j] += c * row[j]
        return tuple(v % p for v in out)

    def pow(self, a, e: int):
        result = self.one()
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    # ---- vectorized layer ----------------------------------------------

    def elements_array(self) -> np.ndarray:
        """(q, k) array of all elements, rows in elements() order."""
        q = self.cardinality
        idx = np.arange(q)
        cols = []
        for i in range(self.k):
            cols.append((idx // self.p ** (self.k - 1 - i)) % self.p)
        return np.stack(cols, axis=1).astype(np.int64)

    def embed_array(self, values) -> np.ndarray:
        values = np.asarray(values, dtype=np.int64) % self.p
        out = np.zeros((len(values), self.k), dtype=np.int64)
        out[:, 0] = values
        return out

    def mul_array(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        k, p = self.k, self.p
        if k == 1:
            return (A * B) % p
        prod = np.zeros((A.shape[0], 2 * k - 1), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod[:, i + j] += A[:, i] * B[:, j]
        prod %= p
        out = prod[:, :k].copy()
        red = _reduction_rows(self)
        for i in range(k, 2 * k - 1):
            out += prod[:, i : i + 1] * np.asarray(red[i - k], dtype=np.int64)
        return out % p

    def pow_array(self, A: np.ndarray, e: int) -> np.ndarray:
        result = np.zeros_like(A)
        result[:, 0] = 1
        base = A % self.p
        while e:
            if e & 1:
                result = self.mul_array(result, base)
            base = self.mul_array(base, base)
            e >>= 1
        return result

    def norm_array(self, A: np.ndarray) -> np.ndarray:
        """Norms down to F_p: product of the k Frobenius conjugates.
        Frobenius acts linearly on coefficient vectors."""
        if self.k == 1:
            return A[:, 0] % self.p
        F = _frobenius_matrix(self)
        acc = A % self.p
        conj = A % self.p
        for _ in range(self.k - 1):
            conj = conj @ F % self.p
            acc = self.mul_array(acc, conj)
        assert not acc[:, 1:].any(), "norm must land in the prime field"
        return acc[:, 0]


@lru_cache(maxsize=None)
def _frobenius_matrix(field: ExtField) -> np.ndarray:
    """Rows i = coefficients of (x^p)^i, so that vec(c) @ F = vec(c^p)."""
    xp = field.pow((0, 1) + (0,) * (field.k - 2), field.p)
    rows = [field.one()]
    for _ in range(field.k - 1):
        rows.append(field.mul(rows[-1], xp))
    return np.array(rows, dtype=np.int64)


@lru_cache(maxsize=None)
def _character_tables(p: int):
    """Fiber-count tables over F_p: squares[v] = #{y in F_p : y^2 = v}
    and cubes[v] = #{y in F_p : y^3 = v}."""
    v = np.arange(p, dtype=np.int64)
    sq = np.bincount((v * v) % p, minlength=p)
    cubes = np.bincount((v * v % p) * v % p, minlength=p)
    return sq, cubes


@lru_cache(maxsize=None)
def _reduction_rows(field: ExtField):
    """Rows expressing x^k .. x^{2k-2} in terms of 1, x, .., x^{k-1}."""
    p, k, modulus = field.p, field.k, field.modulus
    rows = []
    # x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
    cur = [(-c) % p for c in modulus[:k]]
    rows.append(tuple(cur))
    for _ in range(k - 2):
        # multiply current row by x and reduce
        nxt = [0] + cur[:-1]
        top = cur[-1]
        if top:
            for j in range(k):
                nxt[j] = (nxt[j] + top * rows[0][j]) % p
        cur = [c % p for c in nxt]
        rows.append(tuple(cur))
    return tuple(rows)


def _poly_has_root(coeffs, p: int) -> bool:
    for x in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % p
        if acc == 0:
            return True
    return False


@lru_cache(maxsize=None)
def build_ext_field(p: int, k: int) -> ExtField:
    """Deterministic field constructor.

    For k in {2, 3} the modulus is the lexicographically least monic
    polynomial (ordered by ascending coefficient tuple) with no root in
    F_p, which is irreducible at these degrees.  k = 1 yields F_p itself.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= k <= 3:
        raise ValueError(f"extension degree {k} outside supported range 1..3")
    if k == 1:
        return ExtField(p, 1, (0, 1))
    for coeffs in itertools.product(range(p), repeat=k):
        poly = coeffs + (1,)
        if not _poly_has_root(poly, p):
            return ExtField(p, k, poly)
    raise AssertionError("unreachable: no rootless monic polynomial found")


def cube_root_count(field: ExtField, c) -> int:
    """Number of y in the field with y^3 = c.

    Returns 1 for c = 0.  When q = 2 mod 3 cubing is a bijection, so the
    count is always 1; the same holds for p = 3, where cubing is the
    Frobenius.  When q = 1 mod 3 the count is 3 if c is a cube and 0
    otherwise, detected by c^((q-1)/3).
    """
    if all(x % field.p == 0 for x in c):
        return 1
    q = field.cardinality
    if q % 3 != 1:
        return 1
    t = field.pow(c, (q - 1) // 3)
    return 3 if t == field.one() else 0


def cube_count_array(field: ExtField, C: np.ndarray) -> np.ndarray:
    """Vectorized #{y : y^3 = c} over rows of C.  For p = 1 mod 3 the
    cubic character restricts through the norm, c^((q-1)/3) =
    N(c)^((p-1)/3), and the F_p fiber-count table answers uniformly
    (value 1 exactly at c = 0)."""
    q = field.cardinality
    if q % 3 != 1:
        return np.ones(C.shape[0], dtype=np.int64)
    if field.p % 3 == 1:
        _, cubes = _character_tables(field.p)
        return cubes[field.norm_array(C)].astype(np.int64)
    # p = 2 mod 3 with even degree: no norm descent, use the power test
    t = field.pow_array(C, (q - 1) // 3)
    one = np.zeros(field.k, dtype=np.int64)
    one[0] = 1
    out = np.where(np.all(t == one, axis=1), 3, 0)
    zero = ~np.any(C % field.p != 0, axis=1)
    return np.where(zero, 1, out)


def square_count_array(field: ExtField, C: np.ndarray) -> np.ndarray:
    """Vectorized #{y : y^2 = c}.  The quadratic character restricts
    through the norm, and the F_p fiber-count table answers uniformly
    (value 1 exactly at c = 0)."""
    if field.p == 2:
        raise ValueError("quadratic fiber counts need odd characteristic")
    sq, _ = _character_tables(field.p)
    return sq[field.norm_array(C)].astype(np.int64)
