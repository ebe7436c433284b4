"""Command line interface: ``sgdops analyze|piece|compare|chambers|selftest``.

Exit codes: 0 success, 1 usage, parse or invalid-ring error, 2 computation
error, 3 selftest or verification failure.
"""

from __future__ import annotations

import json
import sys
import time
from pathlib import Path

import click

from . import figures
from .config import RingConfig, load_config
from .dops import OperatorRing, Which, degrees, gorenstein_probe
from .errors import (ConfigError, LatticeNotFull, NotFullDimensional, NotPointed, ParseError,
                     SgdopsError)
from .lattice import ConeData, cube
from .notation import Notation
from .oracle import verify_piece
from .semigroup import omega_principal
from .theta import LinearForm, ThetaIdeal

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_SELFTEST = 0, 1, 2, 3

SPEC_NAMES = {Which.D: ("SEMIGROUP", "SEMIGROUP"),
              Which.II: ("IDEAL_J", "IDEAL_J"),
              Which.DRJ: ("SEMIGROUP", "IDEAL_J")}


class Session:
    """A parsed configuration together with its ring objects."""

    def __init__(self, cfg: RingConfig):
        self.cfg = cfg
        self.semigroup = cfg.semigroup()
        self.cone: ConeData = self.semigroup.cone
        self.ideal = cfg.monomial_ideal(self.semigroup)
        self.ring = OperatorRing(self.semigroup, self.ideal)
        self.notation = Notation(self.cone.k, [f.normal for f in self.cone.facets])

    def monomial(self, exps) -> str:
        names = self.cfg.variables or [f"t{i + 1}" for i in range(self.cone.k)]
        parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
        return "*".join(parts) if parts else "1"

    def default_window(self, radius: int | None, small: bool = False):
        if radius is not None:
            return cube(radius, self.cone.k)
        if small or self.cfg.window is None:
            return cube(2 if self.cone.k <= 2 else 1, self.cone.k)
        return self.cfg.window

    def record(self, d, which: str, ideal: ThetaIdeal) -> dict:
        nt = self.notation
        return {"degree": list(d), "which": which,
                "generators_factored": [nt.factored(g) for g in ideal.generators],
                "generators_expanded": [nt.expanded(g) for g in ideal.generators],
                "groebner": [nt.expanded(p) for p in ideal.groebner]}


def _session(path: str) -> Session:
    return Session(load_config(path))


def _parse_degree(text: str, k: int) -> tuple[int, ...]:
    try:
        d = tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise click.BadParameter(f"degree must be integers, got {text!r}", param_hint="-d")
    if len(d) != k:
        raise click.BadParameter(f"degree needs {k} entries, got {len(d)}", param_hint="-d")
    return d


def _emit(obj, as_json: bool, text: str) -> None:
    click.echo(json.dumps(obj, ensure_ascii=False) if as_json else text)


@click.group()
@click.version_option(package_name="sgdops")
def cli():
    """Graded pieces of D(R_A), I(J), D(R_A, J) and J D(R_A)."""


@cli.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--window", type=int, default=None, help="Cube radius for the equality probe.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def analyze(config, window, as_json):
    """Facets, faces, classification and interior ideal of a ring."""
    s = _session(config)
    cone, sg = s.cone, s.semigroup
    flags = sg.classify()
    names = s.notation.var_names
    facet_rows = [{"name": f.name, "normal": list(f.normal),
                   "form": LinearForm(f.normal).poly.to_string(names)} for f in cone.facets]
    face_rows = [{"facets": sorted(f.facet_set), "dim": f.dim} for f in cone.faces]
    omega = sg.interior.minimal_generators
    probe = gorenstein_probe(sg, s.default_window(window, small=True))
    data = {"name": s.cfg.name, "k": cone.k, "ell": cone.ell, "facets": facet_rows,
            "faces": face_rows, "normal": flags["normal"], "scored": flags["scored"],
            "membership_bound": sg.membership_bound,
            "omega_generators": [list(g) for g in omega],
            "omega_principal": omega_principal(sg),
            "ideal": s.ideal.label(),
            "ideal_generators": [list(g) for g in s.ideal.minimal_generators],
            "gorenstein_probe": probe}
    lines = [f"ring {s.cfg.name}: k = {cone.k}, l = {cone.ell}"]
    lines += [f"  {r['name']} = {r['form']}" for r in facet_rows]
    lines.append("faces:")
    lines += [f"  dim {f.dim}: {f.label()}" for f in cone.faces]
    lines.append(f"normal = {str(flags['normal']).lower()}, scored = {str(flags['scored']).lower()}"
                 f", membership bound = {sg.membership_bound}")
    lines.append("omega = <" + ", ".join(s.monomial(g) for g in omega) + ">"
                 + (" principal" if data["omega_principal"] else " not principal"))
    lines.append(f"J = {s.ideal.label()} = <"
                 + ", ".join(s.monomial(g) for g in s.ideal.minimal_generators) + ">")
    lines.append(f"gorenstein probe: omega principal = {str(probe['omega_principal']).lower()}, "
                 f"JD = D(R,J) on window = {str(probe['jd_equals_drj_on_window']).lower()}, "
                 f"agree = {str(probe['agree']).lower()}"
                 + ("" if probe["equivalence_applies"] else " (ring not normal: informational)"))
    _emit(data, as_json, "\n".join(lines))


@cli.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("-d", "degree", required=True, help="Degree, e.g. '-1 2' or '-1,2'.")
@click.option("--which", type=click.Choice(["D", "II", "DRJ", "JD", "QUOT"]), default="D")
@click.option("--verify", is_flag=True, help="Cross-check against the brute-force oracle.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def piece(config, degree, which, verify, as_json):
    """One graded piece t^d * I."""
    s = _session(config)
    d = _parse_degree(degree, s.cone.k)
    nt = s.notation
    failed = False
    if which == "QUOT":
        q = s.ring.quotient(d)
        data = {"degree": list(d), "which": "QUOT", "is_zero": q.is_zero,
                "numerator": s.record(d, "II", q.numerator),
                "denominator": s.record(d, "DRJ", q.denominator)}
        text = (f"degree {d} QUOT: numerator {nt.ideal(q.numerator)} / "
                f"denominator {nt.ideal(q.denominator)}" + (" = 0" if q.is_zero else ""))
        checks = [(Which.II, q.numerator, d), (Which.DRJ, q.denominator, d)]
    else:
        w = Which(which)
        ideal = s.ring.piece(w, d).ideal
        data = s.record(d, which, ideal)
        text = f"degree {d} {which}: {nt.ideal(ideal)}\n  expanded: " + "; ".join(
            data["generators_expanded"])
        if w is Which.JD:
            # J D(R_A) is a sum of shifted D pieces; check each summand
            shifted = [tuple(a - b for a, b in zip(d, g)) for g in s.ideal.minimal_generators]
            checks = [(Which.D, s.ring.D(e).ideal, e) for e in shifted]
        else:
            checks = [(w, ideal, d)]
    if verify:
        statuses = []
        for cw, cideal, cd in checks:
            rep = verify_piece(cideal, s.semigroup, s.ideal, *SPEC_NAMES[cw], cd)
            statuses.append({"which": cw.value, "degree": list(cd), "status": rep.status,
                             "stable": rep.stable,
                             "witness": list(rep.witness) if rep.witness else None})
            failed |= not rep.passed
        data["verify"] = statuses
        text += "\n" + "\n".join(
            f"  verify {v['which']} {tuple(v['degree'])}: {v['status']}"
            + (f" witness {tuple(v['witness'])}" if v["witness"] else "") for v in statuses)
    _emit(data, as_json, text)
    if failed:
        raise SystemExit(EXIT_SELFTEST)


@cli.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--window", type=int, default=None, help="Cube radius; default from the config.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def compare(config, window, as_json):
    """Degrees where J D(R_A) and D(R_A, J) differ."""
    s = _session(config)
    box = s.default_window(window)
    report = s.ring.compare(box)
    nt = s.notation
    rows = [{"degree": list(d), "JD": s.record(d, "JD", s.ring.jd(d).ideal),
             "DRJ": s.record(d, "DRJ", s.ring.drj(d).ideal)} for d in report.differing]
    data = {"window": [list(b) for b in box], "verdict": report.verdict,
            "differing": rows}
    lines = [f"window {box}: {report.verdict}"]
    for d in report.differing:
        lines.append(f"  {d}: JD {nt.ideal(s.ring.jd(d).ideal)}  DRJ {nt.ideal(s.ring.drj(d).ideal)}")
    _emit(data, as_json, "\n".join(lines))


@cli.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--emit", type=click.Choice(["svg", "tikz"]), default="svg")
@click.option("-o", "output", type=click.Path(dir_okay=False), default=None,
              help="Output file; standard output if omitted.")
@click.option("--window", type=int, default=None, help="Cube radius; default from the config.")
def chambers(config, emit, output, window):
    """Chamber picture of a two-dimensional ring."""
    s = _session(config)
    if s.cone.k != 2:
        raise click.UsageError("chamber pictures need a ring with k = 2")
    box = s.default_window(window)
    text = (figures.svg if emit == "svg" else figures.tikz)(s.cone, s.ideal, box)
    if output:
        Path(output).write_text(text, encoding="utf-8")
        click.echo(f"wrote {output}")
    else:
        click.echo(text, nl=False)


@cli.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--window", type=int, default=None, help="Cube radius; default 2 (k <= 2) or 1.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable output.")
def selftest(config, window, as_json):
    """Oracle cross-check and containment chain over a window."""
    s = _session(config)
    box = s.default_window(window, small=True)
    start = time.time()
    failures = []
    count = 0
    for d in degrees(box):
        for w in (Which.D, Which.II, Which.DRJ):
            rep = verify_piece(s.ring.piece(w, d).ideal, s.semigroup, s.ideal, *SPEC_NAMES[w], d)
            count += 1
            if not rep.passed:
                failures.append({"degree": list(d), "which": w.value,
                                 "stable": rep.stable,
                                 "witness": list(rep.witness) if rep.witness else None})
        for link in s.ring.containment_chain(d):
            failures.append({"degree": list(d), "which": link, "stable": True, "witness": None})
    data = {"name": s.cfg.name, "window": [list(b) for b in box], "checked": count,
            "failures": failures, "status": "PASS" if not failures else "FAIL",
            "seconds": round(time.time() - start, 2)}
    lines = [f"selftest {s.cfg.name} on {box}: {count} pieces, {len(failures)} failures "
             f"({data['seconds']} s): {data['status']}"]
    lines += [f"  FAIL {f['which']} at {tuple(f['degree'])}" for f in failures]
    _emit(data, as_json, "\n".join(lines))
    if failures:
        raise SystemExit(EXIT_SELFTEST)


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="sgdops", standalone_mode=False)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show()
        return EXIT_USAGE
    except (ConfigError, ParseError, NotFullDimensional, NotPointed, LatticeNotFull) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_USAGE
    except SgdopsError as exc:
        click.echo(f"computation error: {type(exc).__name__}: {exc}", err=True)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
