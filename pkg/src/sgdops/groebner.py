"""Buchberger's algorithm over Q on sparse dict polynomials.

A polynomial is a ``dict`` from exponent tuples to nonzero ``Fraction``
coefficients.  Monomial orders are given as sort keys: a larger key means
a larger monomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

Exp = tuple[int, ...]
Poly = dict[Exp, Fraction]
OrderKey = Callable[[Exp], tuple]


def grevlex(e: Exp) -> tuple:
    """Graded reverse lexicographic key with x1 > x2 > ... > xn."""
    return (sum(e), tuple(-x for x in reversed(e)))


def eliminate_first(e: Exp) -> tuple:
    """Block order: the first variable beats everything, grevlex after."""
    return (e[0], grevlex(e[1:]))


def leading(p: Poly, key: OrderKey) -> tuple[Exp, Fraction]:
    e = max(p, key=key)
    return e, p[e]


def divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def monic(p: Poly, key: OrderKey) -> Poly:
    _, c = leading(p, key)
    if c == 1:
        return p
    return {e: v / c for e, v in p.items()}


def _sub_scaled(p: Poly, q: Poly, coeff: Fraction, shift: Exp) -> None:
    """In place: p -= coeff * x^shift * q."""
    for e, v in q.items():
        m = tuple(a + b for a, b in zip(e, shift))
        nv = p.get(m, 0) - coeff * v
        if nv:
            p[m] = nv
        else:
            p.pop(m, None)


def reduce(f: Poly, basis: Sequence[tuple[Exp, Poly]], key: OrderKey) -> Poly:
    """Full normal form of f modulo a list of (leading exponent, monic poly)."""
    p = dict(f)
    rem: Poly = {}
    while p:
        e = max(p, key=key)
        c = p[e]
        for lm, g in basis:
            if divides(lm, e):
                _sub_scaled(p, g, c, tuple(a - b for a, b in zip(e, lm)))
                break
        else:
            rem[e] = c
            del p[e]
    return rem


def _spoly(f: tuple[Exp, Poly], g: tuple[Exp, Poly]) -> Poly:
    (lf, pf), (lg, pg) = f, g
    m = lcm(lf, lg)
    s: Poly = {}
    for e, v in pf.items():
        s[tuple(a + b - c for a, b, c in zip(e, m, lf))] = v
    _sub_scaled(s, pg, Fraction(1), tuple(a - b for a, b in zip(m, lg)))
    return s


def groebner_basis(polys: Iterable[Poly], key: OrderKey = grevlex) -> list[Poly]:
    """Reduced Groebner basis, monic, sorted by decreasing leading monomial.

    Pairs are processed smallest lcm first; Buchberger's coprime criterion
    and the chain criterion discard pairs that are known to reduce to 0.
    """
    basis: list[tuple[Exp, Poly]] = []
    for p in polys:
        r = reduce(p, basis, key)
        if r:
            r = monic(r, key)
            basis.append((leading(r, key)[0], r))
    if any(not any(lm) for lm, _ in basis):
        nvars = len(basis[0][0])
        return [{(0,) * nvars: Fraction(1)}]

    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pending:
        i, j = min(pending, key=lambda ij: (key(lcm(basis[ij[0]][0], basis[ij[1]][0])), ij))
        pending.discard((i, j))
        li, lj = basis[i][0], basis[j][0]
        m = lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if any(l not in (i, j) and divides(basis[l][0], m)
               and (min(i, l), max(i, l)) not in pending
               and (min(j, l), max(j, l)) not in pending
               for l in range(len(basis))):
            continue
        r = reduce(_spoly(basis[i], basis[j]), basis, key)
        if not r:
            continue
        r = monic(r, key)
        lr = leading(r, key)[0]
        if not any(lr):
            nvars = len(lr)
            return [{(0,) * nvars: Fraction(1)}]
        n = len(basis)
        basis.append((lr, r))
        pending.update((l, n) for l in range(n))
    return _reduce_basis(basis, key)


def _reduce_basis(basis: list[tuple[Exp, Poly]], key: OrderKey) -> list[Poly]:
    minimal = [(lm, p) for idx, (lm, p) in enumerate(basis)
               if not any(divides(lo, lm) and (lo != lm or jdx < idx)
                          for jdx, (lo, _) in enumerate(basis) if jdx != idx)]
    out = []
    for idx, (lm, p) in enumerate(minimal):
        others = [b for jdx, b in enumerate(minimal) if jdx != idx]
        r = {lm: p[lm]}
        tail = {e: v for e, v in p.items() if e != lm}
        r.update(reduce(tail, others, key))
        out.append(monic(r, key))
    out.sort(key=lambda p: key(leading(p, key)[0]), reverse=True)
    return out


def normal_form(f: Poly, gb: Sequence[Poly], key: OrderKey = grevlex) -> Poly:
    basis = [(leading(g, key)[0], g) for g in gb]
    return reduce(f, basis, key)
