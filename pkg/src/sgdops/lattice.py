"""Integer cone geometry: facets, faces and primitive support functions.

Everything here is exact.  Linear algebra runs over ``Fraction`` and
integer vectors are kept as plain tuples so they hash and compare cheaply.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations, product
from math import ceil, floor, gcd
from typing import Iterable, Sequence

import numpy as np

from .errors import LatticeNotFull, NotFullDimensional, NotPointed

IntVec = tuple[int, ...]


# ---------------------------------------------------------------------------
# exact linear algebra helpers
# ---------------------------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        lead = mat[r][c]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def primitive(vec: Iterable) -> IntVec:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    vec = [Fraction(x) for x in vec]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in vec), 1)
    ints = [int(x * den) for x in vec]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def integer_nullspace(rows: Sequence[Sequence], ncols: int) -> list[IntVec]:
    """Primitive integer basis of {x : rows . x = 0}."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(red, pivots):
            vec[p] = -row[f]
        basis.append(primitive(vec))
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Unique solution of a square nonsingular system, else None."""
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def canonical_line(vec: Sequence[int]) -> IntVec:
    """Primitive vector with first nonzero entry positive."""
    p = primitive(vec)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    return p


def bounding_box(ineqs: Sequence[tuple[Sequence[int], int]], k: int
                 ) -> list[tuple[int, int]]:
    """Integer bounding box of the bounded polyhedron {x : n.x >= b}.

    Vertices are enumerated by brute force over k-subsets of the
    constraints, which is plenty at the sizes this package deals with.
    """
    lo = [None] * k
    hi = [None] * k
    for subset in combinations(ineqs, k):
        sol = solve([n for n, _ in subset], [b for _, b in subset])
        if sol is None:
            continue
        if any(sum(Fraction(a) * x for a, x in zip(n, sol)) < b for n, b in ineqs):
            continue
        for i, x in enumerate(sol):
            lo[i] = x if lo[i] is None else min(lo[i], x)
            hi[i] = x if hi[i] is None else max(hi[i], x)
    if any(v is None for v in lo):
        return []
    return [(floor(a), ceil(b)) for a, b in zip(lo, hi)]


def box_points(box: Sequence[tuple[int, int]]) -> np.ndarray:
    """All integer points of a coordinate box as an (n, k) int64 array."""
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in box]
    if any(len(ax) == 0 for ax in axes):
        return np.zeros((0, len(box)), dtype=np.int64)
    grid = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grid], axis=1)


def cube(radius: int, k: int) -> list[tuple[int, int]]:
    return [(-radius, radius)] * k


# ---------------------------------------------------------------------------
# cone data
# ---------------------------------------------------------------------------

class Sign(enum.Enum):
    NEG = -1
    ZERO = 0
    POS = 1

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class SupportFunction:
    """Primitive integral support function of one facet."""

    normal: IntVec
    index: int  # 1-based position in the deterministic facet order

    def __call__(self, point: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.normal, point))

    @property
    def name(self) -> str:
        return f"h{self.index}"


@dataclass(frozen=True)
class Face:
    """A face, identified by the set of all facets containing it."""

    facet_set: frozenset[int]  # 1-based facet indices
    dim: int
    generators: tuple[int, ...] = field(compare=False)  # column indices on the face

    @property
    def is_full_cone(self) -> bool:
        return not self.facet_set

    def label(self) -> str:
        if not self.facet_set:
            return "cone"
        return "{" + ",".join(str(i) for i in sorted(self.facet_set)) + "}"


ChamberSignature = tuple[Sign, ...]


class ConeData:
    """The cone R>=0 A with its facets and face lattice.

    ``columns`` holds the semigroup generators a_1, ..., a_l.
    """

    def __init__(self, matrix: Sequence[Sequence[int]]):
        rows = [tuple(int(x) for x in row) for row in matrix]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        if len({len(r) for r in rows}) != 1:
            raise ValueError("matrix rows have different lengths")
        self.k = len(rows)
        self.ell = len(rows[0])
        self.rows = tuple(rows)
        self.columns: tuple[IntVec, ...] = tuple(zip(*rows))
        if any(not any(c) for c in self.columns):
            raise ValueError("matrix has a zero column")
        status = check_lattice_and_pointed(self.rows)
        if rank(self.columns) < self.k:
            raise NotFullDimensional(
                f"columns span a cone of dimension {rank(self.columns)} < {self.k}")
        if not status["zza_full"]:
            raise LatticeNotFull("columns do not generate Z^k")
        if not status["pointed"]:
            raise NotPointed("cone contains a line")
        self.facets: tuple[SupportFunction, ...] = tuple(
            SupportFunction(n, i + 1) for i, n in enumerate(_facet_normals(self.columns, self.k)))

    @cached_property
    def normals(self) -> np.ndarray:
        return np.array([f.normal for f in self.facets], dtype=np.int64)

    @cached_property
    def generator_heights(self) -> tuple[IntVec, ...]:
        """h_i(a_j) for every facet i and column j."""
        return tuple(tuple(f(c) for c in self.columns) for f in self.facets)

    @cached_property
    def max_heights(self) -> IntVec:
        return tuple(max(row) for row in self.generator_heights)

    @cached_property
    def max_coordinate(self) -> int:
        return max(abs(x) for c in self.columns for x in c)

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        return tuple(face_lattice(self))

    def face(self, facet_set: Iterable[int]) -> Face:
        """Look up the face whose containing-facet set is ``facet_set``."""
        key = frozenset(facet_set)
        for f in self.faces:
            if f.facet_set == key:
                return f
        closure = self.closure(key)
        raise ValueError(f"{sorted(key)} is not the facet set of a face "
                         f"(its closure is {sorted(closure)})")

    def closure(self, facet_set: Iterable[int]) -> frozenset[int]:
        """All facets containing the face cut out by ``facet_set``."""
        facet_set = set(facet_set)
        on = [j for j in range(self.ell)
              if all(self.generator_heights[i - 1][j] == 0 for i in facet_set)]
        return frozenset(f.index for f in self.facets
                         if all(self.generator_heights[f.index - 1][j] == 0 for j in on))

    @cached_property
    def zero_face(self) -> Face:
        return self.face(f.index for f in self.facets)

    def heights(self, point: Sequence[int]) -> IntVec:
        return tuple(f(point) for f in self.facets)

    def heights_array(self, points: np.ndarray) -> np.ndarray:
        return points @ self.normals.T

    def in_cone(self, point: Sequence[int]) -> bool:
        return all(h >= 0 for h in self.heights(point))

    def __repr__(self):
        return f"ConeData({[list(r) for r in self.rows]})"


def check_lattice_and_pointed(matrix: Sequence[Sequence[int]]) -> dict[str, bool]:
    """Whether the columns generate Z^k and whether their cone is pointed.

    Z^k is generated iff the gcd of the maximal minors is 1, which is the
    same as every Smith elementary divisor being 1.  The cone is pointed
    iff the facet normals span R^k (their common kernel is the lineality
    space); a cone without facets is all of R^k.
    """
    rows = [tuple(r) for r in matrix]
    k = len(rows)
    cols = list(zip(*rows))
    if rank(cols) < k:
        return {"zza_full": False, "pointed": False}
    return {"zza_full": lattice_index(rows) == 1,
            "pointed": rank(_facet_normals(cols, k)) == k}


def lattice_index(matrix: Sequence[Sequence[int]]) -> int:
    """Index [Z^k : ZA] as the gcd of all maximal minors (0 if rank-deficient)."""
    rows = [tuple(r) for r in matrix]
    k = len(rows)
    cols = list(zip(*rows))
    g = 0
    for subset in combinations(cols, k):
        g = gcd(g, _det([list(c) for c in subset]))
        if g == 1:
            break
    return g


def _det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    red = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if red[i][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            red[c], red[p] = red[p], red[c]
            det = -det
        det *= red[c][c]
        for i in range(c + 1, n):
            f = red[i][c] / red[c][c]
            red[i] = [a - f * b for a, b in zip(red[i], red[c])]
    return int(det)


def _facet_normals(columns: Sequence[IntVec], k: int) -> list[IntVec]:
    """Facet normals by brute force over (k-1)-subsets of columns."""
    found = set()
    for subset in combinations(columns, k - 1):
        if rank(subset) != k - 1:
            continue
        null = integer_nullspace(subset, k)
        if len(null) != 1:
            continue
        n = null[0]
        vals = [sum(a * b for a, b in zip(n, c)) for c in columns]
        if all(v >= 0 for v in vals):
            found.add(n)
        elif all(v <= 0 for v in vals):
            found.add(tuple(-x for x in n))
    return sorted(found)


def facets(cone_or_matrix) -> list[SupportFunction]:
    """Support functions of all facets in lexicographic order of normals."""
    cone = cone_or_matrix if isinstance(cone_or_matrix, ConeData) else ConeData(cone_or_matrix)
    return list(cone.facets)


def face_lattice(cone: ConeData) -> list[Face]:
    """Every face (the full cone included), largest dimension first."""
    faces = {}
    indices = [f.index for f in cone.facets]
    for r in range(len(indices) + 1):
        for subset in combinations(indices, r):
            closed = cone.closure(subset)
            if closed in faces:
                continue
            gens = tuple(j for j in range(cone.ell)
                         if all(cone.generator_heights[i - 1][j] == 0 for i in closed))
            dim = rank([cone.columns[j] for j in gens]) if gens else 0
            faces[closed] = Face(closed, dim, gens)
    return sorted(faces.values(), key=lambda f: (-f.dim, sorted(f.facet_set)))


def chamber_signature(cone: ConeData, d: Sequence[int]) -> ChamberSignature:
    if len(d) != cone.k:
        raise ValueError(f"degree has length {len(d)}, expected {cone.k}")
    return tuple(Sign((h > 0) - (h < 0)) for h in cone.heights(d))


def signature_string(sig: ChamberSignature) -> str:
    return "".join({Sign.NEG: "-", Sign.ZERO: "0", Sign.POS: "+"}[s] for s in sig)


def zero_sets(cone: ConeData) -> list[frozenset[int]]:
    """Minimal facet sets T whose common face holds no generator.

    For such T the region {0 <= h_i <= c_i for i in T} of the cone is
    bounded, which is what the certified bounds in ``semigroup`` rely on.
    """
    idx = [f.index for f in cone.facets]
    found: list[frozenset[int]] = []
    for r in range(1, len(idx) + 1):
        for subset in combinations(idx, r):
            s = frozenset(subset)
            if any(t <= s for t in found):
                continue
            if all(any(cone.generator_heights[i - 1][j] > 0 for i in s)
                   for j in range(cone.ell)):
                found.append(s)
    return found


def region_box(cone: ConeData, lower: Sequence[int], upper: dict[int, int]
               ) -> list[tuple[int, int]]:
    """Bounding box of {h_j >= lower_j for all j, h_i <= upper_i for i in upper}."""
    ineqs = [(f.normal, lower[f.index - 1]) for f in cone.facets]
    ineqs += [(tuple(-x for x in cone.facets[i - 1].normal), -c) for i, c in upper.items()]
    return bounding_box(ineqs, cone.k)


def union_box(boxes: Iterable[Sequence[tuple[int, int]]]) -> list[tuple[int, int]]:
    boxes = [b for b in boxes if b]
    if not boxes:
        return []
    k = len(boxes[0])
    return [(min(b[i][0] for b in boxes), max(b[i][1] for b in boxes)) for i in range(k)]


def box_contains(outer: Sequence[tuple[int, int]], inner: Sequence[tuple[int, int]]) -> bool:
    return all(a <= c and d <= b for (a, b), (c, d) in zip(outer, inner))


def all_signatures(k_facets: int) -> list[ChamberSignature]:
    return [tuple(s) for s in product(list(Sign), repeat=k_facets)]
