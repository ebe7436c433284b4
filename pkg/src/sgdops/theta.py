"""Exact polynomials in theta_1..theta_k and ideals of Q[theta].

Graded pieces are almost always products of linear forms h - c, so
generators keep their factorisation next to the expanded polynomial.
Ideal comparisons first strip the linear factors common to every
generator; Q[theta] is a domain, so this does not change the answer,
and it keeps Buchberger's algorithm on small residual ideals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce as fold
from math import gcd
from typing import Iterable, Sequence

from . import groebner as gb
from .lattice import integer_nullspace

Exp = tuple[int, ...]
Number = int | Fraction


class ThetaPoly:
    """An immutable polynomial with rational coefficients."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: dict[Exp, Number] | None = None):
        self.nvars = nvars
        self.terms: dict[Exp, Fraction] = {
            e: Fraction(c) for e, c in (terms or {}).items() if c}
        self._hash = None

    # constructors
    @classmethod
    def const(cls, nvars: int, c: Number) -> "ThetaPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "ThetaPoly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def linear(cls, coeffs: Sequence[Number], shift: Number = 0) -> "ThetaPoly":
        n = len(coeffs)
        terms: dict[Exp, Number] = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = c
        if shift:
            terms[(0,) * n] = shift
        return cls(n, terms)

    # arithmetic
    def _coerce(self, other) -> "ThetaPoly":
        if isinstance(other, ThetaPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ThetaPoly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return ThetaPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return ThetaPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ThetaPoly(self.nvars, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        terms: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return ThetaPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ThetaPoly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ThetaPoly.const(self.nvars, other)
        return isinstance(other, ThetaPoly) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # inspection
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __call__(self, point: Sequence[Number]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    evaluate = __call__

    def leading(self, key=gb.grevlex) -> tuple[Exp, Fraction]:
        return gb.leading(self.terms, key)

    def monic(self) -> "ThetaPoly":
        if not self.terms:
            return self
        return ThetaPoly(self.nvars, gb.monic(self.terms, gb.grevlex))

    def exact_div(self, other: "ThetaPoly") -> "ThetaPoly | None":
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading()
        p = dict(self.terms)
        quot: dict[Exp, Fraction] = {}
        while p:
            e = max(p, key=gb.grevlex)
            if not gb.divides(lm, e):
                return None
            shift = tuple(a - b for a, b in zip(e, lm))
            c = p[e] / lc
            quot[shift] = c
            gb._sub_scaled(p, other.terms, c, shift)
        return ThetaPoly(self.nvars, quot)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"theta{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=gb.grevlex, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"ThetaPoly({self.to_string()})"


@dataclass(frozen=True)
class LinearForm:
    """The affine form coeffs . theta + shift with integer data."""

    coeffs: tuple[int, ...]
    shift: int = 0

    def __post_init__(self):
        if not any(self.coeffs):
            raise ValueError("a linear form needs a nonzero coefficient")

    @property
    def nvars(self) -> int:
        return len(self.coeffs)

    @cached_property
    def key(self) -> tuple[tuple[int, ...], int]:
        """Representative of the form up to a nonzero scalar."""
        g = fold(gcd, self.coeffs, abs(self.shift))
        c = [x // g for x in self.coeffs]
        s = self.shift // g
        if next(x for x in c if x) < 0:
            c = [-x for x in c]
            s = -s
        return tuple(c), s

    @cached_property
    def poly(self) -> ThetaPoly:
        return ThetaPoly.linear(self.coeffs, self.shift)

    def __call__(self, point: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.coeffs, point)) + self.shift

    def shifted(self, delta: int) -> "LinearForm":
        return LinearForm(self.coeffs, self.shift + delta)

    @classmethod
    def from_poly(cls, p: ThetaPoly) -> "LinearForm":
        if p.degree != 1:
            raise ValueError(f"{p} is not linear")
        coeffs = [Fraction(0)] * p.nvars
        shift = Fraction(0)
        for e, c in p.terms.items():
            if any(e):
                coeffs[e.index(1)] = c
            else:
                shift = c
        den = fold(lambda a, b: a * b // gcd(a, b),
                   [x.denominator for x in coeffs] + [shift.denominator], 1)
        return cls(tuple(int(x * den) for x in coeffs), int(shift * den))

    def __str__(self):
        return self.poly.to_string()


def descending_factorial(h: LinearForm, n: int) -> "FactoredGenerator":
    """(h, n)! = h (h-1) ... (h-n); the empty product when n < 0."""
    return FactoredGenerator(tuple(h.shifted(-i) for i in range(n + 1)), nvars=h.nvars)


@dataclass(frozen=True)
class FactoredGenerator:
    """A product of linear forms times an optional polynomial cofactor."""

    factors: tuple[LinearForm, ...] = ()
    cofactor: ThetaPoly | None = None
    nvars: int = 0

    def __post_init__(self):
        n = self.nvars
        if not n:
            if self.factors:
                n = self.factors[0].nvars
            elif self.cofactor is not None:
                n = self.cofactor.nvars
            object.__setattr__(self, "nvars", n)

    @classmethod
    def of(cls, p: "ThetaPoly | FactoredGenerator | LinearForm") -> "FactoredGenerator":
        if isinstance(p, FactoredGenerator):
            return p
        if isinstance(p, LinearForm):
            return cls((p,), nvars=p.nvars)
        if p.degree == 1:
            return cls((LinearForm.from_poly(p),), nvars=p.nvars)
        if p.is_constant() and not p.is_zero():
            return cls((), None, p.nvars)
        return cls((), p, p.nvars)

    @cached_property
    def expanded(self) -> ThetaPoly:
        out = self.cofactor if self.cofactor is not None else ThetaPoly.const(self.nvars, 1)
        for f in self.factors:
            out = out * f.poly
        return out

    @property
    def fully_factored(self) -> bool:
        return self.cofactor is None or self.cofactor.is_constant()

    @cached_property
    def factor_keys(self) -> Counter:
        return Counter(f.key for f in self.factors)

    def is_zero(self) -> bool:
        return self.cofactor is not None and self.cofactor.is_zero()

    def is_unit(self) -> bool:
        return not self.factors and (self.cofactor is None or
                                     (self.cofactor.is_constant() and not self.cofactor.is_zero()))

    def __mul__(self, other: "FactoredGenerator") -> "FactoredGenerator":
        other = FactoredGenerator.of(other)
        if self.cofactor is None:
            cof = other.cofactor
        elif other.cofactor is None:
            cof = self.cofactor
        else:
            cof = self.cofactor * other.cofactor
        return FactoredGenerator(self.factors + other.factors, cof, self.nvars or other.nvars)

    def without(self, keys: Counter) -> tuple["FactoredGenerator", Counter]:
        """Drop factors whose keys are listed; returns the leftover keys."""
        need = Counter(keys)
        kept = []
        for f in self.factors:
            if need[f.key] > 0:
                need[f.key] -= 1
            else:
                kept.append(f)
        return FactoredGenerator(tuple(kept), self.cofactor, self.nvars), +need

    def __call__(self, point) -> Fraction:
        v = Fraction(1) if self.cofactor is None else self.cofactor(point)
        for f in self.factors:
            if not v:
                break
            v *= f(point)
        return v


Generator = ThetaPoly | FactoredGenerator | LinearForm


def _common_keys(gens: Sequence[FactoredGenerator]) -> Counter:
    if not gens:
        return Counter()
    common = gens[0].factor_keys
    for g in gens[1:]:
        common = common & g.factor_keys
        if not common:
            break
    return common


class ThetaIdeal:
    """A finitely generated ideal of Q[theta_1..theta_k]."""

    def __init__(self, nvars: int, generators: Iterable[Generator] = ()):
        self.nvars = nvars
        gens = [FactoredGenerator.of(g) for g in generators]
        self.generators: tuple[FactoredGenerator, ...] = tuple(
            g for g in gens if not g.is_zero())

    @classmethod
    def unit(cls, nvars: int) -> "ThetaIdeal":
        return cls(nvars, [FactoredGenerator((), None, nvars)])

    @classmethod
    def zero(cls, nvars: int) -> "ThetaIdeal":
        return cls(nvars, [])

    @classmethod
    def principal(cls, g: Generator, nvars: int | None = None) -> "ThetaIdeal":
        g = FactoredGenerator.of(g)
        return cls(nvars or g.nvars, [g])

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.generators

    @cached_property
    def _split(self) -> tuple[Counter, tuple[FactoredGenerator, ...]]:
        common = _common_keys(self.generators)
        return common, tuple(g.without(common)[0] for g in self.generators)

    @property
    def content(self) -> Counter:
        """Keys of linear factors shared by all generators (with multiplicity)."""
        return self._split[0]

    @cached_property
    def groebner(self) -> tuple[ThetaPoly, ...]:
        """Reduced Groebner basis (grevlex, theta1 > ... > thetak)."""
        if self.is_zero():
            return ()
        common, _ = self._split
        shared = ThetaPoly.const(self.nvars, 1)
        for key, mult in common.items():
            shared = shared * LinearForm(*key).poly ** mult
        # G * (basis of the residual) is already a basis of G * residual
        seed = [(shared * b).terms for b in self._residual_basis]
        return tuple(ThetaPoly(self.nvars, p) for p in gb.groebner_basis(seed))

    @cached_property
    def _residual_basis(self) -> tuple[ThetaPoly, ...]:
        _, rest = self._split
        if any(g.is_unit() for g in rest):
            return (ThetaPoly.const(self.nvars, 1),)
        return tuple(ThetaPoly(self.nvars, p)
                     for p in gb.groebner_basis([g.expanded.terms for g in rest]))

    def is_unit(self) -> bool:
        if self.is_zero() or self.content:
            return False
        return self._residual_basis[0].is_constant()

    def is_principal_factored(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].fully_factored

    # -- membership and comparison ---------------------------------------------

    def contains(self, f: Generator) -> bool:
        f = FactoredGenerator.of(f)
        if f.is_zero():
            return True
        if self.is_zero():
            return False
        common, rest = self._split
        f, missing = f.without(common)
        if missing:
            poly = f.expanded
            for key, mult in missing.items():
                divisor = LinearForm(*key).poly
                for _ in range(mult):
                    poly = poly.exact_div(divisor)
                    if poly is None:
                        return False
            f = FactoredGenerator.of(poly)
        if any(g.is_unit() for g in rest):
            return True
        if len(rest) == 1:
            r = rest[0]
            if r.fully_factored and f.fully_factored:
                return not (r.factor_keys - f.factor_keys)
            return f.expanded.exact_div(r.expanded) is not None
        basis = self._residual_basis
        return not gb.normal_form(f.expanded.terms, [b.terms for b in basis])

    __contains__ = contains

    def issubset(self, other: "ThetaIdeal") -> bool:
        return all(other.contains(g) for g in self.generators)

    __le__ = issubset

    def equals(self, other: "ThetaIdeal") -> bool:
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        common = _common_keys(self.generators + other.generators)
        mine = [g.without(common)[0] for g in self.generators]
        theirs = [g.without(common)[0] for g in other.generators]
        if len(mine) == 1 and len(theirs) == 1 and mine[0].fully_factored \
                and theirs[0].fully_factored:
            return mine[0].factor_keys == theirs[0].factor_keys
        return _reduced(mine) == _reduced(theirs)

    def __eq__(self, other):
        return isinstance(other, ThetaIdeal) and self.equals(other)

    __hash__ = None

    # -- constructions ---------------------------------------------------------

    def __add__(self, other: "ThetaIdeal") -> "ThetaIdeal":
        return ThetaIdeal(self.nvars, self.generators + other.generators)

    def times(self, g: Generator) -> "ThetaIdeal":
        g = FactoredGenerator.of(g)
        return ThetaIdeal(self.nvars, [g * x for x in self.generators])

    def intersect(self, other: "ThetaIdeal") -> "ThetaIdeal":
        """Intersection, via t*I + (1-t)*J and elimination of t."""
        if self.is_zero() or other.is_zero():
            return ThetaIdeal.zero(self.nvars)
        common = _common_keys(self.generators + other.generators)
        shared = FactoredGenerator(
            tuple(LinearForm(*key) for key, m in sorted(common.items()) for _ in range(m)),
            None, self.nvars)
        mine = [g.without(common)[0] for g in self.generators]
        theirs = [g.without(common)[0] for g in other.generators]
        if any(g.is_unit() for g in mine):
            return ThetaIdeal(self.nvars, theirs).times(shared)
        if any(g.is_unit() for g in theirs):
            return ThetaIdeal(self.nvars, mine).times(shared)
        if len(mine) == 1 and len(theirs) == 1 and mine[0].fully_factored \
                and theirs[0].fully_factored:
            a, b = mine[0], theirs[0]
            extra, _ = b.without(a.factor_keys)
            lcm_gen = FactoredGenerator(a.factors + extra.factors, None, self.nvars)
            return ThetaIdeal(self.nvars, [lcm_gen]).times(shared)
        polys = []
        for g in mine:
            polys.append({(1,) + e: c for e, c in g.expanded.terms.items()})
        for g in theirs:
            t = g.expanded.terms
            q = {(0,) + e: c for e, c in t.items()}
            for e, c in t.items():
                q[(1,) + e] = -c
            polys.append(q)
        basis = gb.groebner_basis(polys, gb.eliminate_first)
        kept = [ThetaPoly(self.nvars, {e[1:]: c for e, c in p.items()})
                for p in basis if all(e[0] == 0 for e in p)]
        return ThetaIdeal(self.nvars, [_factor_if_linear(p) for p in kept]).times(shared)

    def generators_expanded(self) -> list[ThetaPoly]:
        return [g.expanded for g in self.generators]

    def __repr__(self):
        return f"ThetaIdeal({[str(g.expanded) for g in self.generators]})"


def _factor_if_linear(p: ThetaPoly) -> FactoredGenerator:
    return FactoredGenerator.of(p)


def _reduced(gens: Sequence[FactoredGenerator]) -> tuple[ThetaPoly, ...]:
    if any(g.is_unit() for g in gens):
        return (ThetaPoly.const(gens[0].nvars, 1),)
    nvars = gens[0].nvars
    return tuple(ThetaPoly(nvars, p) for p in gb.groebner_basis([g.expanded.terms for g in gens]))


# -- module-level operations -----------------------------------------------------

def groebner(ideal: ThetaIdeal) -> tuple[ThetaPoly, ...]:
    return ideal.groebner


def ideal_membership(f: Generator, ideal: ThetaIdeal) -> bool:
    return ideal.contains(f)


def ideal_equal(a: ThetaIdeal, b: ThetaIdeal) -> bool:
    return a.equals(b)


def ideal_sum(a: ThetaIdeal, b: ThetaIdeal) -> ThetaIdeal:
    return a + b


def ideal_intersection(a: ThetaIdeal, b: ThetaIdeal) -> ThetaIdeal:
    return a.intersect(b)


def eval_poly(f: Generator, m: Sequence[int]) -> Fraction:
    return FactoredGenerator.of(f)(m)


def vanishing_ideal_of_stratum(base: Sequence[int], directions: Sequence[Sequence[int]]
                               ) -> ThetaIdeal:
    """Ideal of the affine span base + span(directions)."""
    k = len(base)
    normals = integer_nullspace(list(directions), k) if directions else \
        [tuple(int(i == j) for j in range(k)) for i in range(k)]
    forms = [LinearForm(n, -sum(a * b for a, b in zip(n, base))) for n in normals]
    return ThetaIdeal(k, forms)
