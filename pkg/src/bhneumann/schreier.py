"""Deterministic stabilizer chains for permutation groups.

The chain stores, per level, a base point, the orbit of that point under
the generators attached so far, and inverse transversal representatives.
Generator attachment is cumulative: an element attached at level j fixes
the base points of all earlier levels, so it also acts on their orbits
and is attached to every level up to j.  Two facts carry the module:

* The product of the orbit sizes never exceeds the group order, because
  distinct transversal words are distinct group elements.
* Once that product equals the true group order, every orbit is the full
  stabilizer orbit and the base is complete, so sifting is a sound
  membership test.

Everything is deterministic: insertion order, orbit growth order and the
verification sweep are all fixed functions of the input.
"""

from __future__ import annotations

import math

import numpy as np

from .perm import Permutation, is_even, make_generators

__all__ = [
    "StabilizerChain",
    "build_chain",
    "group_order",
    "contains",
    "verify_alt_generation",
]


def _invert_table(p: np.ndarray) -> np.ndarray:
    out = np.empty(p.size, dtype=np.int32)
    out[p] = np.arange(p.size, dtype=np.int32)
    return out


class _Level:
    __slots__ = ("point", "orbit_pos", "pts", "inv_reps", "gens", "ginvs")

    def __init__(self, point: int, degree: int):
        self.point = point
        self.orbit_pos = np.full(degree, -1, dtype=np.int64)
        self.orbit_pos[point] = 0
        self.pts: list[int] = [point]
        self.inv_reps: dict[int, np.ndarray] = {
            point: np.arange(degree, dtype=np.int32)
        }
        self.gens: list[np.ndarray] = []
        self.ginvs: list[np.ndarray] = []

    def _admit(self, x: int, y: int, gi: np.ndarray) -> None:
        # u_y = g u_x, so the stored inverse is u_x^-1 composed after g^-1
        self.orbit_pos[y] = len(self.pts)
        self.pts.append(y)
        self.inv_reps[y] = self.inv_reps[x][gi]

    def extend_with(self, g: np.ndarray, gi: np.ndarray) -> None:
        """Grow the orbit after attaching one more generator.

        One vectorized step of the new generator over the known orbit,
        then closure of any new points under the whole cumulative set.
        """
        pts_arr = np.fromiter(self.pts, dtype=np.int64, count=len(self.pts))
        images = g[pts_arr]
        fresh = pts_arr[self.orbit_pos[images] < 0]
        frontier: list[int] = []
        for x in fresh:
            y = int(g[x])
            self._admit(int(x), y, gi)
            frontier.append(y)
        while frontier:
            x = frontier.pop()
            for g2, gi2 in zip(self.gens, self.ginvs):
                y = int(g2[x])
                if self.orbit_pos[y] < 0:
                    self._admit(x, y, gi2)
                    frontier.append(y)


class StabilizerChain:
    """See the module docstring for the data layout and invariants."""

    def __init__(self, degree: int, base_hint: list[int] | None = None):
        if degree < 1:
            raise ValueError("degree must be positive")
        self.degree = degree
        self.levels: list[_Level] = []
        self.complete = False
        self._idt = np.arange(degree, dtype=np.int32)
        self._base_hint = list(base_hint) if base_hint else []

    def order(self) -> int:
        out = 1
        for lv in self.levels:
            out *= len(lv.pts)
        return out

    def base(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def _sift(self, p: np.ndarray, start: int = 0):
        """Reduce p through the transversals; (residue, level) or (None, _)."""
        for li in range(start, len(self.levels)):
            lv = self.levels[li]
            x = int(p[lv.point])
            if x == lv.point:
                continue
            if lv.orbit_pos[x] < 0:
                return p, li
            p = lv.inv_reps[x][p]
        if (p == self._idt).all():
            return None, len(self.levels)
        return p, len(self.levels)

    def _add_gen_at(self, li: int, p: np.ndarray) -> None:
        if li == len(self.levels):
            point = -1
            if li < len(self._base_hint):
                cand = self._base_hint[li]
                if p[cand] != cand:
                    point = cand
            if point < 0:
                point = int(np.nonzero(p != self._idt)[0][0])
            self.levels.append(_Level(point, self.degree))
        pi = _invert_table(p)
        for k in range(li + 1):
            lv = self.levels[k]
            lv.gens.append(p)
            lv.ginvs.append(pi)
            lv.extend_with(p, pi)

    def _insert(self, p: np.ndarray) -> None:
        p = np.ascontiguousarray(p, dtype=np.int32)
        residue, li = self._sift(p)
        if residue is not None:
            self._add_gen_at(li, residue)

    def _verify_sweep(self, target: int | None = None) -> None:
        """Deterministic completion: check every Schreier generator.

        Works bottom up; a surviving residue is attached at its level
        and the sweep restarts there.  With a target order the sweep
        stops as soon as the orbit product reaches it.
        """
        li = len(self.levels) - 1
        while li >= 0:
            if target is not None and self.order() == target:
                self.complete = True
                return
            lv = self.levels[li]
            added = False
            xi = 0
            while xi < len(lv.pts) and not added:
                x = lv.pts[xi]
                ux = _invert_table(lv.inv_reps[x])
                gi = 0
                while gi < len(lv.gens):
                    g = lv.gens[gi]
                    y = int(g[x])
                    schreier = lv.inv_reps[y][g[ux]]
                    residue, rl = self._sift(schreier, li + 1)
                    if residue is not None:
                        self._add_gen_at(rl, residue)
                        li = rl
                        added = True
                        break
                    gi += 1
                xi += 1
            if not added:
                li -= 1
        self.complete = True


def build_chain(
    generators: list[Permutation],
    *,
    known_order: int | None = None,
    base_hint: list[int] | None = None,
) -> StabilizerChain:
    """Deterministic stabilizer chain for the group the inputs generate.

    known_order may be passed when the exact order is certain from
    structure theory; the build then stops as soon as the transversal
    product reaches it, which is sound because the product can never
    exceed the true order.  Passing a wrong, too small value would end
    the build early and break membership tests, so only certain
    knowledge belongs here.  Without it the chain is completed by the
    full verification sweep, which is exact but meant for small degrees.
    """
    if not generators:
        raise ValueError("at least one generator is required")
    degree = generators[0].degree
    for g in generators:
        if g.degree != degree:
            raise ValueError("generators must share one degree")
    chain = StabilizerChain(degree, base_hint=base_hint)
    for g in generators:
        chain._insert(g.images)
        if known_order is not None and chain.order() == known_order:
            chain.complete = True
            return chain
    chain._verify_sweep(known_order)
    return chain


def group_order(chain: StabilizerChain) -> int:
    """Exact order as a Python integer (arbitrary precision)."""
    return chain.order()


def contains(chain: StabilizerChain, p: Permutation) -> bool:
    """Membership by sifting.  The chain must be complete."""
    if not chain.complete:
        raise ValueError("membership needs a completed chain")
    if p.degree != chain.degree:
        raise ValueError("degree mismatch")
    residue, _ = chain._sift(np.ascontiguousarray(p.images, dtype=np.int32))
    return residue is None


def verify_alt_generation(d: int, r1: int, r2: int) -> bool:
    """Whether the standard pair generates the full alternating group.

    Both generators are even permutations (a d-cycle of odd length and a
    3-cycle), so d!/2 bounds the order from above and reaching it from
    below certifies equality.  For r1 == r2 == r the chain is seeded
    deterministically along the base 0, r, 2r, ...: conjugating the
    3-cycle by the (j*r)-th power of the full cycle gives the 3-cycle at
    (j*r, (j+1)*r, (j+2)*r), and together these fill every stabilizer
    orbit, so the orbit product hits d!/2 after about d insertions with
    no verification sweep at all.
    """
    alpha, beta = make_generators(d, r1, r2)
    if not (is_even(alpha) and is_even(beta)):
        return False
    target = math.factorial(d) // 2
    if r1 != r2:
        chain = build_chain([alpha, beta], known_order=target)
        return group_order(chain) == target
    r = r1
    idx = np.arange(d, dtype=np.int64)
    beta_t = beta.images.astype(np.int64)
    chain = StabilizerChain(d, base_hint=[(k * r) % d for k in range(d - 2)])
    chain._insert(alpha.images)
    for j in range(1, d - 2):
        shift = (j * r) % d
        sigma = ((beta_t[(idx - shift) % d] + shift) % d).astype(np.int32)
        chain._insert(sigma)
        if chain.order() == target:
            chain.complete = True
            return True
    chain._insert(beta.images)
    if chain.order() == target:
        chain.complete = True
        return True
    chain._verify_sweep(target)
    return chain.order() == target
