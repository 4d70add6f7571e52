"""Polynomials over Z/l as ascending coefficient tuples, with complete
factorization for degrees up to about seven: root stripping plus trial
division by the exhaustively tabulated irreducible quadratics and cubics.
A remainder of degree d with no factor of degree <= d/2 is irreducible,
so this covers every polynomial the package produces (degree <= 2g <= 6).
"""

from __future__ import annotations

from functools import lru_cache

__all__ = [
    "poly_normalize",
    "poly_degree",
    "poly_mul",
    "poly_divmod",
    "poly_eval",
    "poly_roots",
    "irreducible_monics",
    "factor_monic",
    "is_irreducible",
]


def poly_normalize(f, ell: int) -> tuple:
    f = [c % ell for c in f]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return tuple(f)


def poly_degree(f) -> int:
    return len(f) - 1


def poly_mul(f, g, ell: int) -> tuple:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly_normalize(out, ell)


def poly_divmod(f, g, ell: int):
    f = list(poly_normalize(f, ell))
    g = poly_normalize(g, ell)
    if g == (0,):
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(g[-1], -1, ell)
    dg = len(g) - 1
    q = [0] * max(1, len(f) - dg)
    while len(f) - 1 >= dg and any(f):
        shift = len(f) - 1 - dg
        c = (f[-1] * inv_lead) % ell
        if c == 0:
            f.pop()
            continue
        q[shift] = c
        for i, b in enumerate(g):
            f[shift + i] = (f[shift + i] - c * b) % ell
        while len(f) > 1 and f[-1] == 0:
            f.pop()
    return poly_normalize(q, ell), poly_normalize(f, ell)


def poly_eval(f, x: int, ell: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % ell
    return acc


def poly_roots(f, ell: int):
    return [x for x in range(ell) if poly_eval(f, x, ell) == 0]


@lru_cache(maxsize=None)
def irreducible_monics(ell: int, d: int) -> tuple:
    """All monic irreducible polynomials of degree d over Z/l; for
    d in {2, 3} irreducibility is exactly rootlessness."""
    if d == 1:
        return tuple((c, 1) for c in range(ell))
    if d not in (2, 3):
        raise ValueError("tables only for degree 1..3")
    out = []
    def gen(prefix):
        if len(prefix) == d:
            poly = tuple(prefix) + (1,)
            if not poly_roots(poly, ell):
                out.append(poly)
            return
        for c in range(ell):
            gen(prefix + [c])
    gen([])
    return tuple(out)


def factor_monic(f, ell: int):
    """Complete factorization of a monic polynomial of degree <= 7 into
    monic irreducibles: list of (factor, multiplicity), sorted."""
    f = poly_normalize(f, ell)
    if f[-1] != 1:
        raise ValueError("monic polynomial required")
    if poly_degree(f) > 7:
        raise ValueError("factorization supported up to degree 7")
    factors = {}
    rem = f
    for d in (1, 2, 3):
        if poly_degree(rem) < d:
            break
        for p in irreducible_monics(ell, d):
            while poly_degree(rem) >= d:
                q, r = poly_divmod(rem, p, ell)
                if r != (0,):
                    break
                factors[p] = factors.get(p, 0) + 1
                rem = q
    if poly_degree(rem) >= 1:
        # no factor of degree <= 3 and degree <= 7: irreducible
        factors[rem] = factors.get(rem, 0) + 1
    return sorted(factors.items())


def is_irreducible(f, ell: int) -> bool:
    fac = factor_monic(f, ell)
    return len(fac) == 1 and fac[0][1] == 1 and fac[0][0] == poly_normalize(f, ell)
