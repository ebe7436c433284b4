"""Affine semigroups NA: membership, holes, face primes and monomial ideals."""

from __future__ import annotations

import sys
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import FullConeFace, MembershipBoundError, WindowTooSmall
from .lattice import (ConeData, Face, IntVec, box_contains, box_points, cube,
                      region_box, union_box, zero_sets)

# Candidate conductor bounds tried in order before giving up.
_BOUND_LADDER = (0, 1, 2, 3, 4, 6, 8, 12, 16, 24, 32)


class Semigroup:
    """The semigroup NA generated by the columns of an integer matrix.

    On construction a bound ``membership_bound`` B is certified: every
    lattice point whose support-function values are all >= B lies in NA.
    B = 0 exactly when NA is normal.  Certification only needs finitely
    many points because a point that cannot step down by any generator
    while staying in {h >= B} is trapped in a bounded region, one for each
    minimal facet set meeting the cone only at the origin.
    """

    def __init__(self, cone: ConeData | Sequence[Sequence[int]]):
        self.cone = cone if isinstance(cone, ConeData) else ConeData(cone)
        self.generators: tuple[IntVec, ...] = self.cone.columns
        self._memo: dict[IntVec, bool] = {}
        self.membership_bound = self._certify_bound()
        self.normal = self.membership_bound == 0

    # -- membership ---------------------------------------------------------

    def _certify_bound(self) -> int:
        for bound in _BOUND_LADDER:
            if all(self._search(p, None) for p in self._certificate_points(bound)):
                return bound
        raise MembershipBoundError(
            f"no membership bound up to {_BOUND_LADDER[-1]} could be certified")

    def _certificate_points(self, bound: int):
        cone = self.cone
        m = len(cone.facets)
        for zs in zero_sets(cone):
            upper = {i: bound + cone.max_heights[i - 1] - 1 for i in zs}
            box = region_box(cone, [bound] * m, upper)
            for p in box_points(box):
                p = tuple(int(x) for x in p)
                h = cone.heights(p)
                if all(x >= bound for x in h) and all(h[i - 1] <= c for i, c in upper.items()):
                    yield p

    def _search(self, m: IntVec, bound: int | None) -> bool:
        """Depth-first search for a decomposition of m into generators."""
        if not any(m):
            return True
        hit = self._memo.get(m)
        if hit is not None:
            return hit
        h = self.cone.heights(m)
        if min(h) < 0:
            return False
        if bound is not None and min(h) >= bound:
            return True
        result = False
        for a in self.generators:
            rest = tuple(x - y for x, y in zip(m, a))
            if self._search(rest, bound):
                result = True
                break
        self._memo[m] = result
        return result

    def member(self, m: Sequence[int]) -> bool:
        m = tuple(int(x) for x in m)
        if len(m) != self.cone.k:
            raise ValueError(f"point has length {len(m)}, expected {self.cone.k}")
        h = self.cone.heights(m)
        if min(h) < 0:
            return False
        if min(h) >= self.membership_bound:
            return True
        depth = sum(abs(x) for x in m) + 100
        if depth > sys.getrecursionlimit() - 50:
            sys.setrecursionlimit(depth + 200)
        return self._search(m, self.membership_bound)

    def member_mask(self, points: np.ndarray) -> np.ndarray:
        """Vectorised ``member`` over the rows of an integer array."""
        hv = self.cone.heights_array(points)
        ok = (hv >= 0).all(axis=1)
        if self.normal or len(points) == 0:
            return ok
        unsure = np.flatnonzero(ok & (hv < self.membership_bound).any(axis=1))
        for i in unsure:
            ok[i] = self.member(points[i])
        return ok

    def saturation_mask(self, points: np.ndarray) -> np.ndarray:
        return (self.cone.heights_array(points) >= 0).all(axis=1)

    # -- holes and classification ------------------------------------------

    def holes(self, window: Sequence[tuple[int, int]]) -> set[IntVec]:
        pts = box_points(window)
        bad = self.saturation_mask(pts) & ~self.member_mask(pts)
        return {tuple(int(x) for x in p) for p in pts[bad]}

    def certified_window(self) -> list[tuple[int, int]]:
        """Smallest cube the classification needs to see."""
        r = 2 * (self.membership_bound + self.cone.max_coordinate) + 1
        return cube(r, self.cone.k)

    def classify(self, window: Sequence[tuple[int, int]] | None = None) -> dict[str, bool]:
        """Normal and scored flags.

        Scored means every hole lies on a facet-parallel section
        {h_i = c} of the saturation made up entirely of holes; this is
        checked on the window, which must contain ``certified_window``.
        """
        need = self.certified_window()
        if window is None:
            window = need
        elif not box_contains(window, need):
            raise WindowTooSmall(f"classification needs a window containing {need}")
        if self.normal:
            return {"normal": True, "scored": True}
        pts = box_points(window)
        sat = self.saturation_mask(pts)
        hv = self.cone.heights_array(pts)
        hole = sat & ~self.member_mask(pts)
        scored = True
        for idx in np.flatnonzero(hole):
            ok = False
            for i in range(len(self.cone.facets)):
                section = sat & (hv[:, i] == hv[idx, i])
                if hole[section].all():
                    ok = True
                    break
            if not ok:
                scored = False
                break
        return {"normal": False, "scored": scored}

    # -- faces --------------------------------------------------------------

    def face_prime_exponents(self, face: Face):
        """Predicate for the exponents of the face prime P_face."""
        if face.is_full_cone:
            raise FullConeFace("the full cone does not define a prime ideal")
        rows = [self.cone.facets[i - 1] for i in sorted(face.facet_set)]

        def predicate(m: Sequence[int]) -> bool:
            return self.member(m) and any(h(m) != 0 for h in rows)
        return predicate

    @cached_property
    def interior(self) -> "MonomialIdeal":
        return interior_ideal(self)

    def __repr__(self):
        return f"Semigroup({[list(r) for r in self.cone.rows]})"


class MonomialIdeal:
    """A radical monomial ideal J = intersection of face primes.

    The stored faces form an antichain: a face contained in another
    listed face is redundant, since avoiding the larger face is the
    stronger condition.
    """

    def __init__(self, semigroup: Semigroup, faces: Iterable[Face], name: str | None = None):
        faces = list(dict.fromkeys(faces))
        if not faces:
            raise ValueError("a radical monomial ideal needs at least one face")
        for f in faces:
            if f.is_full_cone:
                raise FullConeFace("the full cone is not a proper face")
        # face1 is inside face2 iff facet_set1 contains facet_set2
        keep = [f for f in faces
                if not any(g is not f and f.facet_set > g.facet_set for g in faces)]
        self.semigroup = semigroup
        self.faces: tuple[Face, ...] = tuple(sorted(keep, key=lambda f: sorted(f.facet_set)))
        self.name = name
        self._rows = [np.array(sorted(i - 1 for i in f.facet_set)) for f in self.faces]

    @classmethod
    def from_facet_sets(cls, semigroup: Semigroup, facet_sets: Iterable[Iterable[int]],
                        name: str | None = None) -> "MonomialIdeal":
        return cls(semigroup, [semigroup.cone.face(s) for s in facet_sets], name)

    def contains(self, m: Sequence[int]) -> bool:
        if not self.semigroup.member(m):
            return False
        h = self.semigroup.cone.heights(m)
        return all(any(h[i - 1] != 0 for i in f.facet_set) for f in self.faces)

    __contains__ = contains

    def mask(self, points: np.ndarray) -> np.ndarray:
        ok = self.semigroup.member_mask(points)
        hv = self.semigroup.cone.heights_array(points)
        for rows in self._rows:
            ok &= (hv[:, rows] != 0).any(axis=1)
        return ok

    def generator_window(self) -> list[tuple[int, int]]:
        """A box certified to contain every minimal monomial generator."""
        cone = self.semigroup.cone
        b = max(self.semigroup.membership_bound, 1)
        boxes = [region_box(cone, [0] * len(cone.facets),
                            {i: b + cone.max_heights[i - 1] - 1 for i in zs})
                 for zs in zero_sets(cone)]
        return union_box(boxes)

    @cached_property
    def minimal_generators(self) -> tuple[IntVec, ...]:
        return tuple(minimal_monomial_generators(self))

    def label(self) -> str:
        if self.name:
            return self.name
        return " & ".join("P" + f.label() for f in self.faces)

    def __repr__(self):
        return f"MonomialIdeal({self.label()})"


def interior_ideal(semigroup: Semigroup) -> MonomialIdeal:
    """The ideal of monomials off every facet."""
    cone = semigroup.cone
    return MonomialIdeal(semigroup, [cone.face([f.index]) for f in cone.facets], "interior")


def minimal_monomial_generators(ideal: MonomialIdeal,
                                window: Sequence[tuple[int, int]] | None = None) -> list[IntVec]:
    """Minimal monomial generators, sorted lexicographically."""
    need = ideal.generator_window()
    if window is not None and not box_contains(window, need):
        raise WindowTooSmall(f"generators are only certified inside {need}")
    pts = box_points(need)
    inside = pts[ideal.mask(pts)]
    gens = []
    for p in inside:
        p = tuple(int(x) for x in p)
        if not any(ideal.contains(tuple(x - y for x, y in zip(p, a)))
                   for a in ideal.semigroup.generators):
            gens.append(p)
    return sorted(gens)


def omega_principal(semigroup: Semigroup) -> bool:
    """Whether the interior ideal has a single minimal generator."""
    return len(semigroup.interior.minimal_generators) == 1


def member(semigroup: Semigroup, m: Sequence[int]) -> bool:
    return semigroup.member(m)


def ideal_member(ideal: MonomialIdeal, m: Sequence[int]) -> bool:
    return ideal.contains(m)
