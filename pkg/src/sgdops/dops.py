"""Graded pieces of D(R_A), the idealizer I(J), D(R_A, J) and J D(R_A).

Every piece in degree d has the form t^d * I(B) where I(B) is the ideal
of polynomials in theta vanishing on a set B of lattice points:

* D(R_A)_d      B = Omega(d) = {m in NA : m + d not in NA}
* I(J)_d        B = Omega(d) union {m in J : m + d not in J}
* D(R_A, J)_d   B = {m in NA : m + d not in J}

The Zariski closure of B is a finite union of affine spaces
p + span(face), each cut out by fixing the values of the support
functions of the facets containing that face.  ``stratify`` finds those
spaces by probing translates p + N(A on face) inside B, largest faces
first, and the resulting ideal is

    (product of the hyperplane forms) * (intersection of the smaller primes).

That product formula is valid because no hyperplane factor lies in any of
the smaller primes (otherwise the smaller stratum would be inside the
hyperplane and already covered).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .errors import ContainmentViolation, UnstableStratification
from .lattice import ConeData, Face, IntVec, box_points, cube, rank
from .semigroup import MonomialIdeal, Semigroup, omega_principal
from .theta import FactoredGenerator, LinearForm, ThetaIdeal, descending_factorial

_PROBE_ROWS = 250_000   # chunk size for vectorised probing
_MAX_GRID = 4096        # largest full probe grid before falling back to a sparse one


class Which(str, enum.Enum):
    D = "D"
    II = "II"
    DRJ = "DRJ"
    JD = "JD"


class SetTag(str, enum.Enum):
    SEMIGROUP = "SEMIGROUP"
    IDEAL_J = "IDEAL_J"


@dataclass(frozen=True)
class VanishingSpec:
    """B(d) = Omega(d) union {m in source : m + d not in target}."""

    source: SetTag
    target: SetTag
    degree: IntVec


SPEC_TAGS = {
    Which.D: (SetTag.SEMIGROUP, SetTag.SEMIGROUP),
    Which.II: (SetTag.IDEAL_J, SetTag.IDEAL_J),
    Which.DRJ: (SetTag.SEMIGROUP, SetTag.IDEAL_J),
}


def spec_for(which: Which | str, d: Sequence[int]) -> VanishingSpec:
    source, target = SPEC_TAGS[Which(which)]
    return VanishingSpec(source, target, tuple(int(x) for x in d))


@dataclass(frozen=True)
class Stratum:
    """The affine space {h_i = c_i for the facets i containing a face}."""

    face: Face
    values: tuple[int, ...]  # one per facet in sorted(face.facet_set)

    @property
    def facets(self) -> tuple[int, ...]:
        return tuple(sorted(self.face.facet_set))

    @property
    def dim(self) -> int:
        return self.face.dim

    def forms(self, cone: ConeData) -> list[LinearForm]:
        """Independent linear forms h_i - c_i cutting out the stratum."""
        chosen: list[LinearForm] = []
        for i, c in zip(self.facets, self.values):
            normal = cone.facets[i - 1].normal
            if rank([f.coeffs for f in chosen] + [normal]) > len(chosen):
                chosen.append(LinearForm(normal, -c))
        return chosen

    def key(self) -> tuple:
        return (tuple(sorted(self.face.facet_set)), self.values)

    def describe(self) -> str:
        return ", ".join(f"h{i} = {c}" for i, c in zip(self.facets, self.values))


@dataclass
class GradedPiece:
    degree: IntVec
    which: Which
    ideal: ThetaIdeal
    strata: tuple[Stratum, ...] | None = None


@dataclass
class QuotientPiece:
    degree: IntVec
    numerator: ThetaIdeal
    denominator: ThetaIdeal
    is_zero: bool


@dataclass
class DivergenceReport:
    window: list[tuple[int, int]]
    differing: list[IntVec] = field(default_factory=list)

    @property
    def all_equal(self) -> bool:
        return not self.differing

    @property
    def verdict(self) -> str:
        return "ALL_EQUAL" if self.all_equal else f"DIFFER({len(self.differing)})"


class OperatorRing:
    """Graded pieces for a semigroup ring R_A and a radical monomial ideal J."""

    def __init__(self, semigroup: Semigroup, ideal: MonomialIdeal | None = None):
        self.semigroup = semigroup
        self.cone = semigroup.cone
        self.ideal = ideal if ideal is not None else semigroup.interior
        self.k = self.cone.k
        self._cache: dict[tuple, GradedPiece] = {}

    # -- B(d) -----------------------------------------------------------------

    def _mask(self, tag: SetTag, points: np.ndarray) -> np.ndarray:
        if tag is SetTag.SEMIGROUP:
            return self.semigroup.member_mask(points)
        return self.ideal.mask(points)

    def vanishing_mask(self, spec: VanishingSpec, points: np.ndarray) -> np.ndarray:
        shifted = points + np.asarray(spec.degree, dtype=np.int64)
        member = self.semigroup.member_mask(points)
        out = member & ~self.semigroup.member_mask(shifted)
        if spec.source is SetTag.SEMIGROUP and spec.target is SetTag.SEMIGROUP:
            return out
        return out | (self._mask(spec.source, points) & ~self._mask(spec.target, shifted))

    def default_radius(self, d: Sequence[int]) -> int:
        reach = max((abs(x) for x in self.cone.heights(d)), default=0)
        return 2 * (reach + self.semigroup.membership_bound + self.cone.max_coordinate)

    def probe_depth(self, d: Sequence[int]) -> int:
        reach = max((abs(x) for x in self.cone.heights(d)), default=0)
        return reach + self.semigroup.membership_bound + 2

    def required_vanishing(self, spec: VanishingSpec, radius: int | None = None) -> np.ndarray:
        """Points of B(d) in the cube of the given radius, as an array."""
        if radius is None:
            radius = self.default_radius(spec.degree)
        pts = box_points(cube(radius, self.k))
        pts = pts[self.semigroup.saturation_mask(pts)]
        return pts[self.vanishing_mask(spec, pts)]

    # -- stratification --------------------------------------------------------

    def _offsets(self, face: Face, depth: int) -> np.ndarray:
        gens = np.array([self.cone.columns[j] for j in face.generators], dtype=np.int64)
        g = len(gens)
        steps = list(range(depth + 1))
        if len(steps) ** g > _MAX_GRID:
            steps = sorted({0, 1, 2, 3, depth // 2, depth})
        coeffs = np.array(list(product(steps, repeat=g)), dtype=np.int64)
        return np.unique(coeffs @ gens, axis=0)

    def _strata(self, spec: VanishingSpec, radius: int, depth: int) -> list[Stratum]:
        pts = self.required_vanishing(spec, radius)
        if len(pts) == 0:
            return []
        heights = self.cone.heights_array(pts)
        covered = np.zeros(len(pts), dtype=bool)
        strata: list[Stratum] = []
        for face in self.cone.faces:
            if face.dim == 0 or face.dim == self.k:
                continue
            todo = np.flatnonzero(~covered)
            if len(todo) == 0:
                break
            rows = [i - 1 for i in sorted(face.facet_set)]
            offsets = self._offsets(face, depth)
            passed = np.zeros(len(todo), dtype=bool)
            chunk = max(1, _PROBE_ROWS // len(offsets))
            for start in range(0, len(todo), chunk):
                idx = todo[start:start + chunk]
                probes = (pts[idx][:, None, :] + offsets[None, :, :]).reshape(-1, self.k)
                ok = self.vanishing_mask(spec, probes).reshape(len(idx), len(offsets))
                passed[start:start + chunk] = ok.all(axis=1)
            if not passed.any():
                continue
            keys = np.unique(heights[todo[passed]][:, rows], axis=0)
            for key in keys:
                strata.append(Stratum(face, tuple(int(x) for x in key)))
                covered |= (heights[:, rows] == key).all(axis=1)
        zero = self.cone.zero_face
        for i in np.flatnonzero(~covered):
            strata.append(Stratum(zero, tuple(int(x) for x in heights[i])))
        return sorted(strata, key=lambda s: (-s.dim, s.key()))

    def stratify(self, spec: VanishingSpec, radius: int | None = None,
                 check: bool = True) -> list[Stratum]:
        """Strata of the Zariski closure of B(d), checked by window doubling."""
        if radius is None:
            radius = self.default_radius(spec.degree)
        depth = self.probe_depth(spec.degree)
        strata = self._strata(spec, radius, depth)
        if check:
            wide = self._strata(spec, 2 * radius, 2 * depth)
            if {s.key() for s in wide} != {s.key() for s in strata}:
                raise UnstableStratification(
                    f"degree {spec.degree}: strata at radius {radius} and {2 * radius} differ")
        return strata

    def ideal_of_strata(self, strata: Iterable[Stratum]) -> ThetaIdeal:
        strata = list(strata)
        hyper = [s for s in strata if s.dim == self.k - 1]
        lower = [s for s in strata if s.dim < self.k - 1]
        forms = sorted((f for s in hyper for f in s.forms(self.cone)),
                       key=lambda f: (self._facet_of(f), -f.shift))
        product_gen = FactoredGenerator(tuple(forms), None, self.k)
        result = ThetaIdeal.unit(self.k)
        for s in lower:
            result = result.intersect(ThetaIdeal(self.k, s.forms(self.cone)))
        return result.times(product_gen)

    def _facet_of(self, form: LinearForm) -> int:
        for f in self.cone.facets:
            if f.normal == form.coeffs:
                return f.index
        return len(self.cone.facets) + 1

    def graded_piece(self, spec: VanishingSpec, radius: int | None = None,
                     check: bool = True, which: Which | None = None) -> GradedPiece:
        strata = self.stratify(spec, radius, check)
        if which is None:
            which = next(w for w, tags in SPEC_TAGS.items()
                         if tags == (spec.source, spec.target))
        return GradedPiece(spec.degree, which, self.ideal_of_strata(strata), tuple(strata))

    # -- the four families ----------------------------------------------------

    def closed_form_D(self, d: Sequence[int]) -> ThetaIdeal:
        """prod over h_i(d) < 0 of (h_i, h_i(-d) - 1)!, valid for normal rings."""
        gen = FactoredGenerator((), None, self.k)
        for f in self.cone.facets:
            v = f(d)
            if v < 0:
                gen = gen * descending_factorial(LinearForm(f.normal), -v - 1)
        return ThetaIdeal(self.k, [gen])

    def D(self, d: Sequence[int]) -> GradedPiece:
        d = tuple(int(x) for x in d)
        key = (Which.D, d)
        if key not in self._cache:
            if self.semigroup.normal:
                piece = GradedPiece(d, Which.D, self.closed_form_D(d))
            else:
                piece = self.graded_piece(spec_for(Which.D, d), which=Which.D)
            self._cache[key] = piece
        return self._cache[key]

    def _pipeline(self, which: Which, d: Sequence[int]) -> GradedPiece:
        d = tuple(int(x) for x in d)
        key = (which, d)
        if key not in self._cache:
            self._cache[key] = self.graded_piece(spec_for(which, d), which=which)
        return self._cache[key]

    def idealizer(self, d: Sequence[int]) -> GradedPiece:
        return self._pipeline(Which.II, d)

    def drj(self, d: Sequence[int]) -> GradedPiece:
        return self._pipeline(Which.DRJ, d)

    def jd(self, d: Sequence[int]) -> GradedPiece:
        """Sum over minimal generators g of J of D(R_A)_{d - g}."""
        d = tuple(int(x) for x in d)
        key = (Which.JD, d)
        if key not in self._cache:
            gens = []
            for g in self.ideal.minimal_generators:
                gens.extend(self.D(tuple(a - b for a, b in zip(d, g))).ideal.generators)
            self._cache[key] = GradedPiece(d, Which.JD, ThetaIdeal(self.k, gens))
        return self._cache[key]

    def piece(self, which: Which | str, d: Sequence[int]) -> GradedPiece:
        which = Which(which)
        return {Which.D: self.D, Which.II: self.idealizer,
                Which.DRJ: self.drj, Which.JD: self.jd}[which](d)

    def quotient(self, d: Sequence[int]) -> QuotientPiece:
        num = self.idealizer(d).ideal
        den = self.drj(d).ideal
        if not den.issubset(num):
            raise ContainmentViolation(f"D(R,J) is not inside I(J) in degree {tuple(d)}")
        return QuotientPiece(tuple(d), num, den, num.equals(den))

    def compare(self, window: Sequence[tuple[int, int]]) -> DivergenceReport:
        """Degrees of the window where J D(R_A) and D(R_A, J) differ."""
        report = DivergenceReport(list(window))
        for d in degrees(window):
            if not self.jd(d).ideal.equals(self.drj(d).ideal):
                report.differing.append(d)
        return report

    def containment_chain(self, d: Sequence[int]) -> list[str]:
        """Names of the failing links of JD <= DRJ <= I(J) <= D."""
        chain = [("JD", self.jd(d)), ("DRJ", self.drj(d)),
                 ("II", self.idealizer(d)), ("D", self.D(d))]
        return [f"{a} <= {b}" for (a, pa), (b, pb) in zip(chain, chain[1:])
                if not pa.ideal.issubset(pb.ideal)]


def degrees(window: Sequence[tuple[int, int]]) -> list[IntVec]:
    """All integer degrees of a box, in lexicographic order."""
    return [tuple(int(x) for x in p) for p in box_points(window)]


@lru_cache(maxsize=None)
def _interior_ring(semigroup: Semigroup) -> OperatorRing:
    return OperatorRing(semigroup, semigroup.interior)


# -- functional interface ---------------------------------------------------------

def required_vanishing(ring: OperatorRing, spec: VanishingSpec,
                       radius: int | None = None) -> set[IntVec]:
    return {tuple(int(x) for x in p) for p in ring.required_vanishing(spec, radius)}


def stratify(ring: OperatorRing, spec: VanishingSpec, radius: int | None = None) -> list[Stratum]:
    return ring.stratify(spec, radius)


def graded_piece(ring: OperatorRing, spec: VanishingSpec, radius: int | None = None) -> GradedPiece:
    return ring.graded_piece(spec, radius)


def graded_D(ring: OperatorRing, d: Sequence[int]) -> GradedPiece:
    return ring.D(d)


def graded_idealizer(ring: OperatorRing, d: Sequence[int]) -> GradedPiece:
    return ring.idealizer(d)


def graded_DRJ(ring: OperatorRing, d: Sequence[int]) -> GradedPiece:
    return ring.drj(d)


def graded_JD(ring: OperatorRing, d: Sequence[int]) -> GradedPiece:
    return ring.jd(d)


def quotient_piece(ring: OperatorRing, d: Sequence[int]) -> QuotientPiece:
    return ring.quotient(d)


def compare_JD_DRJ(ring: OperatorRing, window: Sequence[tuple[int, int]]) -> DivergenceReport:
    return ring.compare(window)


def gorenstein_probe(semigroup: Semigroup, window: Sequence[tuple[int, int]]) -> dict[str, bool]:
    """Principality of the interior ideal next to JD = D(R,J) on a window.

    The two flags are computed independently; their agreement is an
    empirical check, not a proof.  The interior ideal is the canonical
    module only for normal rings, so ``equivalence_applies`` is false
    otherwise and ``agree`` is then informational.
    """
    ring = _interior_ring(semigroup)
    principal = omega_principal(semigroup)
    equal = ring.compare(window).all_equal
    return {"omega_principal": principal, "jd_equals_drj_on_window": equal,
            "agree": principal == equal, "equivalence_applies": semigroup.normal}
