"""Brute-force vanishing ideals, used to cross-check the stratification.

The oracle shares no search code with ``dops``.  It enumerates B(d) in a
cube, proposes affine lines through every pair of nearby points, keeps a
line when it still meets B(d) far outside the window, then grows accepted
spaces one accepted step at a time.  The ideal is the intersection of the
vanishing ideals of the maximal spaces and of the leftover points.  The
normals of each space come from an integer nullspace, not from facets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .lattice import IntVec, box_points, canonical_line, cube, integer_nullspace, rref
from .semigroup import MonomialIdeal, Semigroup
from .theta import FactoredGenerator, LinearForm, ThetaIdeal


class _Region:
    """Membership in B(d), built directly from the semigroup and ideal masks."""

    def __init__(self, semigroup: Semigroup, ideal: MonomialIdeal,
                 source: str, target: str, d: Sequence[int]):
        self.semigroup = semigroup
        self.ideal = ideal
        self.source = source
        self.target = target
        self.d = np.asarray(d, dtype=np.int64)

    def _in(self, tag: str, pts: np.ndarray) -> np.ndarray:
        return self.semigroup.member_mask(pts) if tag == "SEMIGROUP" else self.ideal.mask(pts)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        moved = pts + self.d
        omega = self.semigroup.member_mask(pts) & ~self.semigroup.member_mask(moved)
        return omega | (self._in(self.source, pts) & ~self._in(self.target, moved))


@dataclass(frozen=True)
class _Space:
    base: IntVec
    steps: tuple[IntVec, ...]
    normals: tuple[IntVec, ...]
    values: tuple[int, ...]

    @property
    def key(self) -> tuple:
        return self.normals, self.values

    def contains_point(self, p: Sequence[int]) -> bool:
        return all(sum(a * b for a, b in zip(n, p)) == v for n, v in zip(self.normals, self.values))

    def contains(self, other: "_Space") -> bool:
        return self.contains_point(other.base) and all(
            sum(a * b for a, b in zip(n, s)) == 0 for n in self.normals for s in other.steps)


def _make_space(base: IntVec, steps: Sequence[IntVec], k: int) -> _Space:
    normals = integer_nullspace(list(steps), k)
    red, _ = rref(normals)
    canon = []
    for row in red:
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        canon.append(tuple(int(x * den) for x in row))
    canon = [canonical_line(n) for n in canon]
    values = tuple(sum(a * b for a, b in zip(n, base)) for n in canon)
    return _Space(tuple(base), tuple(steps), tuple(canon), values)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class VanishingOracle:
    """Brute-force I(B(d)) for one ring, ideal and (source, target) pair."""

    def __init__(self, semigroup: Semigroup, ideal: MonomialIdeal | None = None):
        self.semigroup = semigroup
        self.ideal = ideal if ideal is not None else semigroup.interior
        self.k = semigroup.cone.k
        self.reach = 2 * max(max(abs(x) for x in a) for a in semigroup.generators)

    def radius(self, d: Sequence[int]) -> int:
        cone = self.semigroup.cone
        hd = max((abs(f(d)) for f in cone.facets), default=0)
        return 2 * (hd + self.semigroup.membership_bound + cone.max_coordinate)

    def _far(self, radius: int) -> list[int]:
        j = 4 * radius + 8
        return [j, j + 1, j + 2, 2 * j + 1]

    def spaces(self, region: _Region, radius: int) -> tuple[list[_Space], np.ndarray]:
        """Maximal accepted spaces and the leftover points of B(d) in the cube."""
        k = self.k
        pts = box_points(cube(radius, k))
        pts = pts[region(pts)]
        if len(pts) == 0:
            return [], pts
        far = self._far(radius)
        size = 2 * radius + 1
        grid = np.zeros((size,) * k, dtype=bool)
        grid[tuple((pts + radius).T)] = True

        def in_window(q: np.ndarray) -> np.ndarray:
            inside = (np.abs(q) <= radius).all(axis=1)
            out = np.zeros(len(q), dtype=bool)
            out[inside] = grid[tuple((q[inside] + radius).T)]
            return out

        # lines through pairs of nearby points of B(d)
        lines: dict[tuple, _Space] = {}
        steps: set[IntVec] = set()
        for delta in box_points(cube(self.reach, k)):
            if not delta.any() or canonical_line(delta) != tuple(int(x) for x in delta):
                continue
            firsts = pts[in_window(pts + delta)]
            if len(firsts) == 0:
                continue
            d_t = tuple(int(x) for x in delta)
            u = np.array(canonical_line(d_t))
            seen: dict[tuple, np.ndarray] = {}
            for p in firsts:
                inv = tuple(int(x) for x in (np.outer(u, p) - np.outer(p, u))[np.triu_indices(k, 1)])
                seen.setdefault(inv, p)
            for sign in (1, -1):
                step = sign * delta
                reps = np.array(list(seen.values()))
                probe = (reps[:, None, :] + np.array(far)[None, :, None] * step).reshape(-1, k)
                ok = region(probe).reshape(len(reps), len(far)).all(axis=1)
                for p in reps[ok]:
                    base = tuple(int(x) for x in p)
                    space = _make_space(base, [tuple(int(x) for x in step)], k)
                    lines.setdefault(space.key, space)
                    steps.add(tuple(int(x) for x in step))

        accepted: dict[tuple, _Space] = dict(lines)
        layer = list(lines.values())
        step_arr = np.array(sorted(steps), dtype=np.int64) if steps else np.zeros((0, k), np.int64)
        for dim in range(2, k):
            grown: dict[tuple, _Space] = {}
            for space in layer:
                if any(g.contains(space) for g in grown.values()):
                    continue
                basis = np.array(space.steps)
                normals = np.array(space.normals)
                fresh = step_arr[(step_arr @ normals.T != 0).any(axis=1)]
                if len(fresh) == 0:
                    continue
                combos = np.array(list(product(far, repeat=dim)), dtype=np.int64)
                # probe base + sum c_j w_j over the grid for every candidate step
                stacked = np.concatenate(
                    [np.broadcast_to(basis, (len(fresh),) + basis.shape), fresh[:, None, :]], axis=1)
                probe = np.einsum("ij,sjk->sik", combos, stacked) + np.array(space.base)
                ok = region(probe.reshape(-1, k)).reshape(len(fresh), len(combos)).all(axis=1)
                for w in fresh[ok]:
                    new = _make_space(space.base, list(space.steps) + [tuple(int(x) for x in w)], k)
                    if new.key not in grown:
                        grown[new.key] = new
                    break
            accepted.update(grown)
            layer = list(grown.values())
            if not layer:
                break

        spaces = list(accepted.values())
        maximal = [s for s in spaces
                   if not any(t is not s and len(t.steps) > len(s.steps) and t.contains(s)
                              for t in spaces)]
        covered = np.zeros(len(pts), dtype=bool)
        for s in maximal:
            n = np.array(s.normals)
            covered |= (pts @ n.T == np.array(s.values)).all(axis=1)
        return sorted(maximal, key=lambda s: (-len(s.steps), s.key)), pts[~covered]

    def ideal_of(self, spaces: Sequence[_Space], points: np.ndarray) -> ThetaIdeal:
        k = self.k
        hyper = [s for s in spaces if len(s.steps) == k - 1]
        forms = tuple(LinearForm(s.normals[0], -s.values[0]) for s in hyper)
        result = ThetaIdeal(k, [FactoredGenerator(forms, None, k)])
        for s in spaces:
            if len(s.steps) < k - 1:
                prime = ThetaIdeal(k, [LinearForm(n, -v) for n, v in zip(s.normals, s.values)])
                result = result.intersect(prime)
        for p in points:
            prime = ThetaIdeal(k, [LinearForm(tuple(int(i == j) for j in range(k)), -int(p[i]))
                                   for i in range(k)])
            result = result.intersect(prime)
        return result

    def region(self, source: str, target: str, d: Sequence[int]) -> _Region:
        return _Region(self.semigroup, self.ideal, source, target, d)

    def vanishing_ideal(self, source: str, target: str, d: Sequence[int],
                        radius: int | None = None) -> ThetaIdeal:
        region = self.region(source, target, d)
        radius = self.radius(d) if radius is None else radius
        return self.ideal_of(*self.spaces(region, radius))


def brute_vanishing_ideal(semigroup: Semigroup, ideal: MonomialIdeal | None,
                          source: str, target: str, d: Sequence[int],
                          radius: int | None = None) -> ThetaIdeal:
    return VanishingOracle(semigroup, ideal).vanishing_ideal(source, target, d, radius)


@dataclass
class VerifyReport:
    passed: bool
    stable: bool
    oracle: ThetaIdeal
    differing_generator: FactoredGenerator | None = None
    witness: IntVec | None = None

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def verify_piece(piece_ideal: ThetaIdeal, semigroup: Semigroup, ideal: MonomialIdeal | None,
                 source: str, target: str, d: Sequence[int],
                 radius: int | None = None) -> VerifyReport:
    """Compare an ideal with the oracle; on failure report a witness.

    The witness is the first point of B(d) in the cube where some
    generator of the checked ideal does not vanish.
    """
    oracle = VanishingOracle(semigroup, ideal)
    radius = oracle.radius(d) if radius is None else radius
    truth = oracle.vanishing_ideal(source, target, d, radius)
    wide = oracle.vanishing_ideal(source, target, d, 2 * radius)
    stable = truth.equals(wide)
    same = piece_ideal.equals(truth)
    report = VerifyReport(same and stable, stable, truth)
    if same:
        return report
    report.differing_generator = next(
        (g for g in piece_ideal.generators if not truth.contains(g)),
        next((g for g in truth.generators if not piece_ideal.contains(g)), None))
    region = oracle.region(source, target, d)
    pts = box_points(cube(radius, oracle.k))
    for p in pts[region(pts)]:
        p = tuple(int(x) for x in p)
        if any(g(p) != 0 for g in piece_ideal.generators):
            report.witness = p
            break
    return report
