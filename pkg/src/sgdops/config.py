"""Ring configuration files.

One ``key = value`` pair per line; ``#`` starts a comment.  Keys::

    name      = a3                      # free text label
    matrix    = [[1,1,1,1],[0,1,2,3]]   # k rows, one column per generator
    ideal     = interior                # or a list of facet sets: [[1],[2],[3,4]]
    window    = 5                       # cube radius, or a box [[-3,3],[-9,9]]
    variables = s, t                    # optional display names

Facet indices are 1-based and follow the order printed by ``sgdops analyze``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError, SgdopsError
from .lattice import cube
from .semigroup import MonomialIdeal, Semigroup

KEYS = ("name", "matrix", "ideal", "window", "variables")


@dataclass
class RingConfig:
    matrix: list[list[int]]
    ideal: str | list[list[int]] = "interior"
    window: list[tuple[int, int]] | None = None
    name: str = ""
    variables: list[str] = field(default_factory=list)

    @property
    def k(self) -> int:
        return len(self.matrix)

    def semigroup(self) -> Semigroup:
        return Semigroup(self.matrix)

    def monomial_ideal(self, semigroup: Semigroup) -> MonomialIdeal:
        if self.ideal == "interior":
            return semigroup.interior
        m = len(semigroup.cone.facets)
        bad = sorted({i for face in self.ideal for i in face if not 1 <= i <= m})
        if bad:
            raise ConfigError(f"facet indices {bad} out of range 1..{m}")
        try:
            return MonomialIdeal.from_facet_sets(semigroup, self.ideal)
        except (KeyError, ValueError, SgdopsError) as exc:
            raise ConfigError(f"bad ideal {self.ideal}: {exc}") from exc


def _json(text: str, line: int, column: int):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed list: {exc.msg}", line, column + exc.colno - 1) from exc


def _int_rows(value, what: str, line: int, column: int) -> list[list[int]]:
    if (not isinstance(value, list) or not value
            or not all(isinstance(r, list) and r and all(type(x) is int for x in r) for r in value)):
        raise ConfigError(f"{what} must be a nonempty list of nonempty integer lists", line, column)
    return value


def parse_config(text: str) -> RingConfig:
    values: dict[str, tuple[str, int, int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if not body.strip():
            continue
        if "=" not in body:
            col = len(body) - len(body.lstrip()) + 1
            raise ConfigError("expected 'key = value'", lineno, col)
        key_part, value_part = body.split("=", 1)
        key = key_part.strip()
        key_col = len(key_part) - len(key_part.lstrip()) + 1
        if key not in KEYS:
            raise ConfigError(f"unknown key {key!r}", lineno, key_col)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno, key_col)
        value = value_part.strip()
        value_col = len(key_part) + 2 + len(value_part) - len(value_part.lstrip())
        if not value:
            raise ConfigError(f"empty value for {key!r}", lineno, value_col)
        values[key] = (value, lineno, value_col)

    if "matrix" not in values:
        raise ConfigError("missing required key 'matrix'")
    text_m, line_m, col_m = values["matrix"]
    matrix = _int_rows(_json(text_m, line_m, col_m), "matrix", line_m, col_m)
    if len({len(r) for r in matrix}) != 1:
        raise ConfigError("matrix rows have different lengths", line_m, col_m)
    cfg = RingConfig(matrix=matrix)

    if "name" in values:
        cfg.name = values["name"][0]
    if "variables" in values:
        text_v, line_v, col_v = values["variables"]
        names = [v.strip() for v in text_v.split(",")]
        if len(names) != cfg.k or not all(n.isidentifier() for n in names):
            raise ConfigError(f"variables needs {cfg.k} comma-separated names", line_v, col_v)
        cfg.variables = names
    if "ideal" in values:
        text_i, line_i, col_i = values["ideal"]
        if text_i == "interior":
            cfg.ideal = "interior"
        else:
            cfg.ideal = _int_rows(_json(text_i, line_i, col_i), "ideal", line_i, col_i)
    if "window" in values:
        text_w, line_w, col_w = values["window"]
        w = _json(text_w, line_w, col_w)
        if type(w) is int and w >= 0:
            cfg.window = cube(w, cfg.k)
        else:
            rows = _int_rows(w, "window", line_w, col_w) if isinstance(w, list) else None
            if (rows is None or len(rows) != cfg.k
                    or not all(len(r) == 2 and r[0] <= r[1] for r in rows)):
                raise ConfigError(f"window must be a radius or {cfg.k} pairs [lo, hi]",
                                  line_w, col_w)
            cfg.window = [tuple(r) for r in rows]
    return cfg


def load_config(path: str | Path) -> RingConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from exc
    cfg = parse_config(text)
    if not cfg.name:
        cfg.name = path.stem
    return cfg
