"""Deterministic Schreier-Sims for matrix groups over Z/l.

The group acts on the module (Z/l)^n; points of the permutation domain are
nonzero vectors encoded as integers.  Base points are chosen greedily as
the first standard basis vector moved by the element being inserted (a
non-identity matrix always moves some basis vector).  Orbits only ever
extend, never rebuild, so transversal entries and the processed-pair
bookkeeping stay valid as strong generators accumulate; this keeps the
construction exact and reproducible for a fixed generator order.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from .matrices import SingularMatrixError, identity, inv_mod

__all__ = ["GroupAtlas", "DomainTooLargeError"]


class DomainTooLargeError(ValueError):
    pass


class _Level:
    __slots__ = ("point", "own", "eff", "closed_upto", "orbit", "orbit_order",
                 "processed")

    def __init__(self, point: int, u_identity):
        self.point = point
        self.own = []          # generators first installed at this level
        self.eff = []          # all generators of this level and deeper; append-only
        self.closed_upto = 0   # orbit is closed under eff[:closed_upto]
        self.orbit = {point: (u_identity, u_identity)}  # point -> (u, u_inv)
        self.orbit_order = [point]
        self.processed = set()  # certified (point, eff_index) Schreier pairs


class GroupAtlas:
    """A matrix group with a base and strong generating set.

    Supports exact order, membership, uniform random elements, and
    transversal enumeration.  Construction is deterministic given the
    order of the input generators.
    """

    def __init__(self, gens: Iterable[np.ndarray], dim: int, ell: int,
                 domain_limit: int = 20_000_000):
        self.dim = dim
        self.ell = ell
        if ell**dim > domain_limit:
            raise DomainTooLargeError(
                f"permutation domain {ell}^{dim} exceeds limit {domain_limit}")
        self._radix = np.array([ell**i for i in range(dim)], dtype=np.int64)
        self._id = identity(dim)
        self._id.flags.writeable = False
        self._id_bytes = self._id.tobytes()
        self._vecs: dict[int, np.ndarray] = {}
        self.levels: list[_Level] = []
        self.generators = []
        for g in gens:
            g = np.asarray(g, dtype=np.int64) % ell
            try:
                g_inv = inv_mod(g, ell)
            except SingularMatrixError:
                raise SingularMatrixError("generator is not invertible") from None
            g.flags.writeable = False
            g_inv.flags.writeable = False
            self.generators.append(g)
            if self._insert(g, g_inv, 0) is not None:
                self._verify_chain()
        self.cached_order = self._order()

    # ---- point encoding ----------------------------------------------------

    def _encode(self, vec: np.ndarray) -> int:
        return int(np.dot(vec % self.ell, self._radix))

    def _decode(self, point: int) -> np.ndarray:
        vec = self._vecs.get(point)
        if vec is None:
            vec = (point // self._radix) % self.ell
            vec.flags.writeable = False
            self._vecs[point] = vec
        return vec

    def _apply(self, g: np.ndarray, point: int) -> int:
        return self._encode(g @ self._decode(point))

    def _is_id(self, g: np.ndarray) -> bool:
        return g.tobytes() == self._id_bytes

    def _first_moved(self, g: np.ndarray) -> int:
        # a non-identity matrix moves some standard basis vector (one of its
        # columns differs from the identity's), so this scan always succeeds
        for i in range(self.dim):
            if not np.array_equal(g[:, i] % self.ell, self._id[:, i]):
                return int(self._radix[i])
        raise AssertionError("identity passed to _first_moved")

    # ---- chain construction --------------------------------------------

    def _sift_from(self, g, g_inv, start: int):
        """Reduce g through levels >= start; returns (residue pair, level)
        where level is where progress stopped (len(levels) if fully sifted)."""
        h, h_inv = g, g_inv
        for idx in range(start, len(self.levels)):
            lvl = self.levels[idx]
            b = self._apply(h, lvl.point)
            if b == lvl.point:
                continue
            hit = lvl.orbit.get(b)
            if hit is None:
                return (h, h_inv), idx
            u, u_inv = hit
            h = (u_inv @ h) % self.ell
            h_inv = (h_inv @ u) % self.ell
        return (h, h_inv), len(self.levels)

    def _extend_orbit(self, i: int):
        """Close level i's orbit under its current effective generators,
        keeping existing transversal entries untouched."""
        lvl = self.levels[i]
        eff = lvl.eff
        frontier = []
        if lvl.closed_upto < len(eff):
            new_gens = eff[lvl.closed_upto:]
            for b in list(lvl.orbit_order):
                self._orbit_step(lvl, b, new_gens, frontier)
            lvl.closed_upto = len(eff)
        qi = 0
        while qi < len(frontier):
            b = frontier[qi]
            qi += 1
            self._orbit_step(lvl, b, eff, frontier)

    def _orbit_step(self, lvl, b, gens, frontier):
        u_b, u_b_inv = lvl.orbit[b]
        for g, g_inv in gens:
            c = self._apply(g, b)
            if c not in lvl.orbit:
                u = (g @ u_b) % self.ell
                u_inv = (u_b_inv @ g_inv) % self.ell
                u.flags.writeable = False
                u_inv.flags.writeable = False
                lvl.orbit[c] = (u, u_inv)
                lvl.orbit_order.append(c)
                frontier.append(c)

    def _insert(self, g, g_inv, min_level: int) -> Optional[int]:
        """Sift g from min_level and install the residue as a new strong
        generator; returns the level it landed at, or None if g sifted."""
        (h, h_inv), stuck = self._sift_from(g, g_inv, min_level)
        if self._is_id(h):
            return None
        if stuck == len(self.levels):
            self.levels.append(_Level(self._first_moved(h), self._id))
        h.flags.writeable = False
        h_inv.flags.writeable = False
        pair = (h, h_inv)
        self.levels[stuck].own.append(pair)
        for m in range(stuck + 1):
            self.levels[m].eff.append(pair)
            self._extend_orbit(m)
        return stuck

    def _verify_chain(self):
        """Process Schreier generators bottom-up until the chain is closed."""
        i = len(self.levels) - 1
        while i >= 0:
            jumped = self._process_level(i)
            i = i - 1 if jumped is None else jumped

    def _process_level(self, i: int) -> Optional[int]:
        lvl = self.levels[i]
        for b in lvl.orbit_order:
            u_b, u_b_inv = lvl.orbit[b]
            for gi in range(len(lvl.eff)):
                if (b, gi) in lvl.processed:
                    continue
                s, s_inv = lvl.eff[gi]
                c = self._apply(s, b)
                u_c, u_c_inv = lvl.orbit[c]
                w = (u_c_inv @ s @ u_b) % self.ell
                if self._is_id(w):
                    lvl.processed.add((b, gi))
                    continue
                w_inv = (u_b_inv @ s_inv @ u_c) % self.ell
                landed = self._insert(w, w_inv, i + 1)
                if landed is None:
                    lvl.processed.add((b, gi))
                    continue
                # re-verify from the insertion level; this pair is retried
                # once the deeper chain is closed again
                return landed
        return None

    # ---- queries ---------------------------------------------------------

    def _order(self) -> int:
        n = 1
        for lvl in self.levels:
            n *= len(lvl.orbit_order)
        return n

    @property
    def order(self) -> int:
        return self.cached_order

    def base(self):
        return [self._decode(lvl.point) for lvl in self.levels]

    def strong_generators(self):
        return [g for lvl in self.levels for g, _ in lvl.own]

    def sift(self, M: np.ndarray):
        M = np.asarray(M, dtype=np.int64) % self.ell
        M_inv = inv_mod(M, self.ell)
        (h, _), stuck = self._sift_from(M, M_inv, 0)
        return h, stuck

    def contains(self, M: np.ndarray) -> bool:
        try:
            h, stuck = self.sift(M)
        except SingularMatrixError:
            return False
        return stuck == len(self.levels) and self._is_id(h)

    def random_element(self, rng) -> np.ndarray:
        """Uniform over the group: product of uniformly chosen transversal
        representatives along the stabilizer chain."""
        g = self._id
        for lvl in self.levels:
            b = lvl.orbit_order[rng.randrange(len(lvl.orbit_order))]
            g = (g @ lvl.orbit[b][0]) % self.ell
        return g

    def transversals(self):
        """Per-level transversal matrices in deterministic orbit order."""
        return [[lvl.orbit[b][0] for b in lvl.orbit_order] for lvl in self.levels]

    def check_schreier_closure(self) -> bool:
        """Re-sift every Schreier generator; True iff the chain is closed.
        Used by the test suite as an independent consistency audit."""
        for i, lvl in enumerate(self.levels):
            for b in lvl.orbit_order:
                u_b, u_b_inv = lvl.orbit[b]
                for s, s_inv in lvl.eff:
                    c = self._apply(s, b)
                    u_c, u_c_inv = lvl.orbit[c]
                    w = (u_c_inv @ s @ u_b) % self.ell
                    w_inv = (u_b_inv @ s_inv @ u_c) % self.ell
                    (h, _), stuck = self._sift_from(w, w_inv, i + 1)
                    if not (stuck == len(self.levels) and self._is_id(h)):
                        return False
        return True
