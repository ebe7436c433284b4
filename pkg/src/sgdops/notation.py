"""Text rendering and parsing of theta polynomials.

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER ("/" NUMBER)? | NAME | "df(" expr "," INT ")" | "(" expr ")"
    NAME   := theta<i> | h<i>

``df(x, n)`` is the descending factorial x(x-1)...(x-n).  Support
function names ``h<i>`` are only available when facets are supplied.
Products of linear pieces keep their factorisation when parsed.
"""

from __future__ import annotations

import re
from collections import defaultdict
from fractions import Fraction
from typing import Sequence

from .errors import ParseError
from .theta import FactoredGenerator, LinearForm, ThetaIdeal, ThetaPoly


class Notation:
    """Names for theta variables and for the support functions of a cone."""

    def __init__(self, nvars: int, normals: Sequence[Sequence[int]] = ()):
        self.nvars = nvars
        self.normals = [tuple(n) for n in normals]
        self.var_names = [f"theta{i + 1}" for i in range(nvars)]

    # -- rendering --------------------------------------------------------------

    def _base(self, coeffs: tuple[int, ...]) -> tuple[str, int] | None:
        """(name, sign) if coeffs is plus or minus a support function."""
        for i, n in enumerate(self.normals):
            if coeffs == n:
                return f"h{i + 1}", 1
            if coeffs == tuple(-x for x in n):
                return f"h{i + 1}", -1
        return None

    def linear(self, form: LinearForm) -> str:
        base = self._base(form.coeffs)
        if base is None:
            return form.poly.to_string(self.var_names)
        name, sign = base
        head = name if sign > 0 else f"-{name}"
        if form.shift > 0:
            return f"{head} + {form.shift}"
        if form.shift < 0:
            return f"{head} - {-form.shift}"
        return head

    def factored(self, gen: FactoredGenerator) -> str:
        """Descending-factorial runs become df(x, n); other factors stay linear."""
        groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
        order: list[tuple[int, ...]] = []
        for f in gen.factors:
            if f.coeffs not in groups:
                order.append(f.coeffs)
            groups[f.coeffs].append(f.shift)
        pieces = []
        for coeffs in order:
            shifts = sorted(groups[coeffs], reverse=True)
            runs: list[list[int]] = []
            for s in shifts:
                if runs and runs[-1][-1] - 1 == s:
                    runs[-1].append(s)
                else:
                    runs.append([s])
            for run in runs:
                top = LinearForm(coeffs, run[0])
                text = self.linear(top)
                if len(run) > 1:
                    pieces.append(f"df({text},{len(run) - 1})")
                elif len(gen.factors) > 1 or gen.cofactor is not None:
                    pieces.append(f"({text})" if " " in text else text)
                else:
                    pieces.append(text)
        if gen.cofactor is not None and not (gen.cofactor.is_constant()
                                             and gen.cofactor(()) == 1):
            text = gen.cofactor.to_string(self.var_names)
            pieces.append(f"({text})" if pieces and " " in text else text)
        return "*".join(pieces) if pieces else "1"

    def expanded(self, gen: FactoredGenerator | ThetaPoly) -> str:
        poly = gen.expanded if isinstance(gen, FactoredGenerator) else gen
        return poly.to_string(self.var_names)

    def ideal(self, ideal: ThetaIdeal) -> str:
        if ideal.is_zero():
            return "<0>"
        return "<" + ", ".join(self.factored(g) for g in ideal.generators) + ">"

    # -- parsing ----------------------------------------------------------------

    def parse(self, text: str) -> FactoredGenerator:
        return _Parser(text, self).run()

    def parse_ideal(self, texts: Sequence[str]) -> ThetaIdeal:
        return ThetaIdeal(self.nvars, [self.parse(t) for t in texts])


_TOKEN = re.compile(r"\s*(?:(\d+)|(df)\s*\(|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text: str, notation: Notation):
        self.text = text
        self.notation = notation
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            num, df, name, sym = m.groups()
            where = m.start(m.lastindex)
            if num is not None:
                self.tokens.append(("num", num, where))
            elif df is not None:
                self.tokens.append(("df", "df(", where))
            elif name is not None:
                self.tokens.append(("name", name, where))
            else:
                self.tokens.append(("sym", sym, where))
            pos = m.end()
        self.i = 0

    def error(self, message: str) -> ParseError:
        where = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        return ParseError(f"{message} at column {where + 1} in {self.text!r}")

    def peek(self, value: str | None = None) -> bool:
        if self.i >= len(self.tokens):
            return False
        return value is None or self.tokens[self.i][1] == value

    def take(self, value: str | None = None) -> tuple[str, str, int]:
        if not self.peek(value):
            raise self.error(f"expected {value!r}" if value else "unexpected end")
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def run(self) -> FactoredGenerator:
        if not self.tokens:
            raise self.error("empty expression")
        value = self.expr()
        if self.i != len(self.tokens):
            raise self.error("trailing input")
        return value

    def _poly(self, g: FactoredGenerator) -> ThetaPoly:
        return g.expanded if g.nvars else ThetaPoly.const(self.notation.nvars, 1)

    def _wrap(self, p: ThetaPoly) -> FactoredGenerator:
        if p.degree == 1:
            return FactoredGenerator.of(p)
        return FactoredGenerator((), p, self.notation.nvars)

    def expr(self) -> FactoredGenerator:
        value = self.term()
        while self.peek("+") or self.peek("-"):
            op = self.take()[1]
            rhs = self.term()
            a, b = value.expanded, rhs.expanded
            value = self._wrap(a + b if op == "+" else a - b)
        return value

    def term(self) -> FactoredGenerator:
        value = self.unary()
        while self.peek("*"):
            self.take("*")
            value = value * self.unary()
        return value

    def unary(self) -> FactoredGenerator:
        if self.peek("-"):
            self.take("-")
            inner = self.unary()
            return inner * FactoredGenerator((), ThetaPoly.const(self.notation.nvars, -1),
                                             self.notation.nvars)
        return self.power()

    def power(self) -> FactoredGenerator:
        base = self.atom()
        if self.peek("^"):
            self.take("^")
            if not self.peek() or self.tokens[self.i][0] != "num":
                raise self.error("exponent must be a nonnegative integer")
            _, text, _ = self.take()
            out = FactoredGenerator((), None, self.notation.nvars)
            for _ in range(int(text)):
                out = out * base
            return out
        return base

    def atom(self) -> FactoredGenerator:
        n = self.notation.nvars
        if not self.peek():
            raise self.error("unexpected end")
        kind, text, _ = self.tokens[self.i]
        if kind == "num":
            self.take()
            value = Fraction(int(text))
            if self.peek("/"):
                self.take("/")
                kind2, den, _ = self.take()
                if kind2 != "num":
                    raise self.error("expected a denominator")
                value /= int(den)
            return FactoredGenerator((), ThetaPoly.const(n, value), n)
        if kind == "df":
            self.take()
            inner = self.expr()
            self.take(",")
            neg = self.peek("-")
            if neg:
                self.take("-")
            kind2, count, _ = self.take()
            if kind2 != "num":
                raise self.error("df needs an integer length")
            self.take(")")
            length = -int(count) if neg else int(count)
            poly = inner.expanded
            if poly.degree != 1:
                raise self.error("df needs a linear first argument")
            form = LinearForm.from_poly(poly)
            return FactoredGenerator(tuple(form.shifted(-i) for i in range(length + 1)), None, n)
        if kind == "name":
            m = re.fullmatch(r"(theta|h)(\d+)", text)
            if not m:
                raise self.error(f"unknown name {text!r}")
            idx = int(m.group(2)) - 1
            if m.group(1) == "theta":
                if not 0 <= idx < n:
                    raise self.error(f"{text} out of range")
                coeffs = tuple(int(i == idx) for i in range(n))
            else:
                if not 0 <= idx < len(self.notation.normals):
                    raise self.error(f"{text} is not a support function here")
                coeffs = self.notation.normals[idx]
            self.take()
            return FactoredGenerator((LinearForm(coeffs),), None, n)
        if text == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        raise self.error(f"unexpected {text!r}")
