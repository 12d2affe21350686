"""Command-line front end.

Exit codes: 0 on success, 1 when the input is well formed but the operation
fails (a domain error), 2 when the input cannot be parsed.
"""

from __future__ import annotations

import json
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click

from .bracket import jones
from .diagram import DiagramError, PlanarDiagram, orient_components, validate
from .exchange import NormalFormLink, exchange_components, linking_number, nfl_to_pd, parity_normalize
from .periodic import (
    AxisClosureDiagram,
    PeriodicDiagram,
    QuotientNormalForm,
    TangleDiagram,
    build_periodic,
    detect_period,
    nf_canonical,
    nf_to_tangle,
    normalize_unknot_quotient,
    quotient,
)
from .torus import (
    SeifertSignature,
    TorusKnot,
    cover_json,
    injectivity_scan,
    recover_torus_knot,
    twins_decision,
)

T = TypeVar("T")


class DomainFailure(click.ClickException):
    exit_code = 1


class MalformedInput(click.ClickException):
    exit_code = 2


def _named(exc: Exception) -> str:
    return f"{type(exc).__name__}: {exc}"


def _parse(fn: Callable[[], T]) -> T:
    """Run an input parser, turning any failure into exit code 2."""
    try:
        return fn()
    except (ValueError, KeyError, TypeError, OSError) as exc:
        raise MalformedInput(_named(exc)) from exc


def _run(fn: Callable[[], T]) -> T:
    try:
        return fn()
    except (ValueError, ArithmeticError) as exc:
        raise DomainFailure(_named(exc)) from exc


def _emit(as_json: bool, payload: dict[str, Any], text: str | list[str]) -> None:
    if as_json:
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        click.echo(text if isinstance(text, str) else "\n".join(text))


def _read_json(path: str) -> dict:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict):
        raise DiagramError("expected a JSON object")
    return data


def _knot(a1: int, a2: int) -> TorusKnot:
    return _parse(lambda: TorusKnot(a1, a2))


json_flag = click.option("--json", "as_json", is_flag=True, help="Emit one JSON object.")
degree = click.option("--n", "n", type=click.IntRange(min=2), required=True, help="Cover or period order.")
in_file = click.option("--in", "path", type=click.Path(dir_okay=False), required=True, help="Input JSON file.")


@click.group()
def cli() -> None:
    """Periodic diagrams, component exchange and torus knot covers."""


@cli.command()
@click.option("--a1", type=int, required=True)
@click.option("--a2", type=int, required=True)
@degree
@json_flag
def cover(a1: int, a2: int, n: int, as_json: bool) -> None:
    """Seifert signature of the n-fold cyclic branched cover of T(a1,a2)."""
    knot = _knot(a1, a2)
    out = _run(lambda: cover_json(knot, n))
    flags = ",".join(out["flags"]) or "none"
    _emit(as_json, out, f"{knot} n={n} case={out['case']} genus={out['genus']} "
                        f"fibres={out['fibres']} flags={flags}")


@cli.command()
@degree
@click.option("--genus", type=click.IntRange(min=0), required=True)
@click.option("--fibres", default="", help="Comma separated fibre orders.")
@click.option("--flags", default="", help="Comma separated flags.")
@json_flag
def recover(n: int, genus: int, fibres: str, flags: str, as_json: bool) -> None:
    """The torus knot whose n-fold cover has the given signature."""
    sig = _parse(lambda: SeifertSignature(
        genus,
        tuple(int(x) for x in fibres.split(",") if x.strip()),
        frozenset(x.strip() for x in flags.split(",") if x.strip()),
    ))
    knot, case = _run(lambda: recover_torus_knot(sig, n))
    _emit(as_json, {"a1": knot.a1, "a2": knot.a2, "n": n, "case": case.tag},
          f"{knot} case={case.tag}")


@cli.command()
@click.option("--a1", type=int, required=True)
@click.option("--a2", type=int, required=True)
@click.option("--b1", type=int, required=True)
@click.option("--b2", type=int, required=True)
@degree
@json_flag
def twins(a1: int, a2: int, b1: int, b2: int, n: int, as_json: bool) -> None:
    """Decide whether T(a1,a2) and T(b1,b2) are n-twins."""
    first, second = _knot(a1, a2), _knot(b1, b2)
    v = _run(lambda: twins_decision(first, second, n))
    _emit(as_json, {"first": str(first), "second": str(second), "n": n, **v.to_dict()},
          f"{v.verdict}" + (f": {v.evidence}" if v.evidence else ""))


@cli.command()
@click.option("--amax", type=click.IntRange(min=3), required=True)
@click.option("--nmax", type=click.IntRange(min=2), required=True)
@json_flag
def scan(amax: int, nmax: int, as_json: bool) -> None:
    """Search for signature collisions among torus knot covers."""
    report = _run(lambda: injectivity_scan(amax, nmax))
    _emit(as_json, report.to_dict(), report.lines())


@cli.command("quotient")
@in_file
@click.option("--n", "n", type=click.IntRange(min=2), default=None,
              help="Period to detect in a plain diagram file.")
@json_flag
def quotient_cmd(path: str, n: int | None, as_json: bool) -> None:
    """Normal form of an axis closure of the unknot.

    A file written by build-periodic carries its rotation, and its orbit
    quotient is normalized.  A file with an axis face is normalized as it
    stands.  For a plain diagram a period of order --n is detected first.
    """
    data = _parse(lambda: _read_json(path))
    if "rotation" in data:
        periodic = _parse(lambda: PeriodicDiagram.from_json_dict(data))
        if n is not None and n != periodic.n:
            raise MalformedInput(f"--n {n} disagrees with the recorded period {periodic.n}")
        closure = _run(lambda: quotient(periodic))
    elif "axis_face" in data:
        closure = _parse(lambda: AxisClosureDiagram.from_json_dict(data))
    else:
        if n is None:
            raise MalformedInput("input has no 'axis_face'; pass --n to detect a period")
        d = _parse(lambda: PlanarDiagram.from_json_dict(data))
        found = _run(lambda: detect_period(d, n))
        if found is None:
            raise DomainFailure(f"PeriodError: no rotation of order {n}")
        closure = _run(lambda: quotient(found))
    q, log = _run(lambda: normalize_unknot_quotient(closure))
    canon = nf_canonical(q)
    _emit(as_json, {"qnf": str(q), "canonical": str(canon), "log": [r.to_dict() for r in log]}, str(q))


@cli.command()
@click.option("--nfl", "text", default=None, help="Link in k;c1,...;+|-;labels=KA form.")
@click.option("--in", "path", type=click.Path(dir_okay=False), default=None, help="File holding the NFL text.")
@json_flag
def exchange(text: str | None, path: str | None, as_json: bool) -> None:
    """Exchange the two components of a two-bridge link in normal form."""
    if (text is None) == (path is None):
        raise MalformedInput("give exactly one of --nfl and --in")
    raw = text if text is not None else _parse(lambda: Path(path).read_text())
    link = _parse(lambda: NormalFormLink.parse(raw))
    start, _ = _run(lambda: parity_normalize(link))
    result, log = _run(lambda: exchange_components(link))
    lines = [f"{r.kind} {list(r.site)} {r.direction}: {r.before} -> {r.after}" for r in log]
    lines.append(f"result {result}")
    payload = {"input": str(link), "parity_normal": str(start), "result": str(result),
               "canonical": str(result.canonical()), "linking_number": _run(lambda: _lk(result)),
               "log": log.to_list()}
    _emit(as_json, payload, lines)


def _lk(link: NormalFormLink) -> int:
    return linking_number(nfl_to_pd(link))


@cli.command("build-periodic")
@click.option("--in", "path", type=click.Path(dir_okay=False), default=None, help="Tangle JSON file.")
@click.option("--qnf", default=None, help="Use the tangle of this quotient normal form.")
@degree
@json_flag
def build_periodic_cmd(path: str | None, qnf: str | None, n: int, as_json: bool) -> None:
    """Glue n copies of a tangle around the axis."""
    if (path is None) == (qnf is None):
        raise MalformedInput("give exactly one of --in and --qnf")
    if qnf is not None:
        tangle = nf_to_tangle(_parse(lambda: QuotientNormalForm.parse(qnf)))
    else:
        tangle = _parse(lambda: TangleDiagram.from_json_dict(_read_json(path)))
    p = _run(lambda: build_periodic(tangle, n))
    payload = p.to_json_dict()
    _emit(as_json, payload, json.dumps(payload, sort_keys=True))


@cli.command("detect-period")
@in_file
@degree
@json_flag
def detect_period_cmd(path: str, n: int, as_json: bool) -> None:
    """Look for a rotation of order n with two fixed faces."""
    d = _parse(lambda: PlanarDiagram.from_json_dict(_read_json(path)))
    found = _run(lambda: detect_period(d, n))
    if found is None:
        _emit(as_json, {"n": n, "found": False}, f"no period of order {n}")
        return
    payload = {"n": n, "found": True, "axis_faces": [list(f) for f in found.axis_faces],
               "rotation": {"perm": list(found.automorphism.perm), "shift": list(found.automorphism.shift)}}
    _emit(as_json, payload, f"period {n}: rotation {list(found.automorphism.perm)}, "
                            f"fixed faces {[list(f) for f in found.axis_faces]}")


@cli.command("jones")
@in_file
@click.option("--oracle", is_flag=True, help="Use the full state sum.")
@json_flag
def jones_cmd(path: str, oracle: bool, as_json: bool) -> None:
    """Jones polynomial in t.  An unoriented knot diagram is oriented first."""
    d = _parse(lambda: PlanarDiagram.from_json_dict(_read_json(path)))
    if d.signs is None:
        if len(_run(d.components)) != 1:
            raise DomainFailure("DiagramError: a link needs orientations for its Jones polynomial")
        d = _run(lambda: orient_components(d))
    poly = _run(lambda: jones(d, oracle=oracle))
    terms = {str(e): c for e, c in poly.in_t().items()}
    _emit(as_json, {"jones_t": terms, "text": poly.to_t_string()}, poly.to_t_string())


@cli.command("validate")
@in_file
@json_flag
def validate_cmd(path: str, as_json: bool) -> None:
    """Check a diagram file; exit 1 when a check fails."""
    d = _parse(lambda: PlanarDiagram.from_json_dict(_read_json(path)))
    report = validate(d)
    lines = [f"{name}: {'ok' if ok else 'FAIL'}" for name, ok in report.checks.items()] + report.messages
    _emit(as_json, report.to_dict(), lines)
    if not report.ok:
        sys.exit(1)


def main(argv: list[str] | None = None) -> None:
    cli.main(args=argv, prog_name="knotcover")


__all__ = ["cli", "main"]
