"""Command-line front end: builder expressions, JSON ingestion, reports,
and static cone-and-strip diagrams.

Exit codes: 0 on success (or a unique analysis), 2 when the analysis is
ambiguous, 1 on any error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import cwcell, gridmodule
from .analyzer import (AnalysisError, AnalysisResult, analyze,
                       compute_profile)
from .cwcell import (AntipodalSphere, ComplexError, DisjointUnion,
                     EquivariantCellComplex, FreeOrbit, Point, RepSphere,
                     SpaceExpr, Suspend, TwistedProjectivePlane, Wedge,
                     WhiskerSphere, build, validate_complex)
from .gridmodule import (BigradedModule, Window, borel, borel_to_json,
                         check_consequences, decompose_module,
                         default_window, dualize)
from .m2algebra import Decomposition, FreeShift


class InputError(ValueError):
    pass


# -- builder expression grammar -------------------------------------------
#
#   point | c2 | sphere:p,q | antipodal:n | rp2tw | whisker
#   susp(E) | wedge(E,E) | disjoint(E,E)


def parse_space(text: str) -> SpaceExpr:
    expr, rest = _parse_expr(text.strip(), 0)
    if rest != len(text.strip()):
        raise InputError(f"trailing input at position {rest}: "
                         f"{text.strip()[rest:]!r}")
    return expr


def _parse_expr(s: str, i: int) -> tuple[SpaceExpr, int]:
    m = re.match(r"\s*([a-z0-9]+)", s[i:])
    if not m:
        raise InputError(f"expected a builder name at position {i}")
    name = m.group(1)
    j = i + m.end()
    if name == "point":
        return Point(), j
    if name == "c2":
        return FreeOrbit(), j
    if name == "rp2tw":
        return TwistedProjectivePlane(), j
    if name == "whisker":
        return WhiskerSphere(), j
    if name == "sphere":
        p, q, j = _parse_two_ints(s, j)
        if not 0 <= q <= p:
            raise InputError(f"sphere:{p},{q} needs 0 <= q <= p "
                             "(weight at most dimension)")
        return RepSphere(p, q), j
    if name == "antipodal":
        n, j = _parse_one_int(s, j)
        if n < 0:
            raise InputError("antipodal:n needs n >= 0")
        return AntipodalSphere(n), j
    if name in ("susp", "wedge", "disjoint"):
        if j >= len(s) or s[j] != "(":
            raise InputError(f"expected '(' after {name} at position {j}")
        first, j = _parse_expr(s, j + 1)
        if name == "susp":
            if j >= len(s) or s[j] != ")":
                raise InputError(f"expected ')' at position {j}")
            return Suspend(first), j + 1
        if j >= len(s) or s[j] != ",":
            raise InputError(f"expected ',' at position {j}")
        second, j = _parse_expr(s, j + 1)
        if j >= len(s) or s[j] != ")":
            raise InputError(f"expected ')' at position {j}")
        ctor = Wedge if name == "wedge" else DisjointUnion
        return ctor(first, second), j + 1
    raise InputError(f"unknown builder {name!r} at position {i}")


def _parse_one_int(s: str, i: int) -> tuple[int, int]:
    m = re.match(r":(-?\d+)", s[i:])
    if not m:
        raise InputError(f"expected ':<int>' at position {i}")
    return int(m.group(1)), i + m.end()


def _parse_two_ints(s: str, i: int) -> tuple[int, int, int]:
    m = re.match(r":(-?\d+),(-?\d+)", s[i:])
    if not m:
        raise InputError(f"expected ':<int>,<int>' at position {i}")
    return int(m.group(1)), int(m.group(2)), i + m.end()


# -- input loading ----------------------------------------------------------


def load_complex(args) -> EquivariantCellComplex:
    if args.space is not None and args.file is not None:
        raise InputError("exactly one of --space/--file is required")
    if args.space is not None:
        return build(parse_space(args.space))
    if args.file is not None:
        data = _load_json(args.file)
        if not isinstance(data, dict) or "fixed" not in data:
            raise InputError(f"{args.file} does not hold a complex "
                             "(expected an object with cell counts)")
        return EquivariantCellComplex.from_json(data)
    raise InputError("one of --space/--file is required")


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def parse_window(text: str) -> Window:
    parts = text.split(",")
    if len(parts) != 4:
        raise InputError("--window needs pmin,pmax,qmin,qmax")
    try:
        pmin, pmax, qmin, qmax = (int(t) for t in parts)
    except ValueError as exc:
        raise InputError(f"bad --window: {exc}") from exc
    return Window(pmin, pmax, qmin, qmax)


def reduce_decomposition(d: Decomposition) -> Decomposition:
    if FreeShift(0, 0) not in d.summands:
        raise InputError("--reduced: the decomposition has no base copy "
                         "at bidegree (0,0) to remove")
    return d.without_one(FreeShift(0, 0))


# -- output -----------------------------------------------------------------


def _emit(text: str, args) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _pretty_analysis(result: AnalysisResult, decomps) -> str:
    lines = []
    lines.append(f"status: {result.status}")
    for d in decomps:
        lines.append(f"  {d.describe()}")
    prof = result.profile
    if prof is not None:
        lines.append(f"dimension: {prof.dimension}")
        lines.append(f"fixed-set cohomology dims:  {list(prof.fixed_dims)}")
        lines.append(f"underlying cohomology dims: {list(prof.underlying_dims)}")
        lines.append(f"quotient cohomology dims:   {list(prof.quotient_dims)}")
    for msg in result.diagnostics:
        lines.append(f"note: {msg}")
    return "\n".join(lines) + "\n"


# -- plotting ---------------------------------------------------------------

_SVG_SCALE = 24
_PLOT_MARGIN = 3


def _plot_bounds(d: Decomposition) -> Window:
    ps = [0]
    qs = [0]
    for s in d:
        if isinstance(s, FreeShift):
            ps.append(s.p)
            qs.extend((s.q, s.q - 2))
        else:
            ps.extend((s.r, s.r + s.n))
    return Window(min(ps) - _PLOT_MARGIN, max(ps) + _PLOT_MARGIN,
                  min(qs) - _PLOT_MARGIN, max(qs) + _PLOT_MARGIN)


def plot_svg(d: Decomposition) -> str:
    """Static diagram: one two-cone glyph per point-ring copy, one strip
    glyph per antipodal summand, p horizontal and q vertical."""
    w = _plot_bounds(d)
    sc = _SVG_SCALE

    def x(p: float) -> float:
        return (p - w.p_min) * sc

    def y(q: float) -> float:
        return (w.q_max - q) * sc

    width = x(w.p_max)
    height = y(w.q_min)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<line x1="{x(w.p_min):.1f}" y1="{y(0):.1f}" x2="{x(w.p_max):.1f}" '
        f'y2="{y(0):.1f}" stroke="gray"/>',
        f'<line x1="{x(0):.1f}" y1="{y(w.q_min):.1f}" x2="{x(0):.1f}" '
        f'y2="{y(w.q_max):.1f}" stroke="gray"/>',
        f'<text x="{x(w.p_max) - 12:.1f}" y="{y(0) - 4:.1f}" '
        f'font-size="11">p</text>',
        f'<text x="{x(0) + 4:.1f}" y="{y(w.q_max) + 12:.1f}" '
        f'font-size="11">q</text>',
    ]
    for s in d:
        if isinstance(s, FreeShift):
            top = w.q_max
            bot = w.q_min
            up = [(s.p, s.q), (s.p, top), (s.p + (top - s.q), top)]
            lo = [(s.p, s.q - 2), (s.p, bot), (s.p - (s.q - 2 - bot), bot)]
            for poly in (up, lo):
                pts = " ".join(f"{x(a):.1f},{y(b):.1f}" for a, b in poly)
                parts.append(f'<polygon points="{pts}" fill="black" '
                             f'fill-opacity="0.15" stroke="black"/>')
            parts.append(f'<circle cx="{x(s.p):.1f}" cy="{y(s.q):.1f}" '
                         f'r="3" fill="black"/>')
        else:
            x0, x1 = x(s.r), x(s.r + s.n)
            parts.append(f'<rect x="{x0:.1f}" y="{y(w.q_max):.1f}" '
                         f'width="{max(x1 - x0, 2):.1f}" '
                         f'height="{y(w.q_min) - y(w.q_max):.1f}" '
                         f'fill="black" fill-opacity="0.08"/>')
            for xx in (x0, x1):
                parts.append(f'<line x1="{xx:.1f}" y1="{y(w.q_min):.1f}" '
                             f'x2="{xx:.1f}" y2="{y(w.q_max):.1f}" '
                             f'stroke="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def plot_ascii(d: Decomposition) -> str:
    w = _plot_bounds(d)
    grid = []
    for q in range(w.q_max, w.q_min - 1, -1):
        row = []
        for p in range(w.p_min, w.p_max + 1):
            n = d.dim_at(p, q)
            if n:
                row.append(str(n) if n < 10 else "*")
            elif q == 0 and p == 0:
                row.append("+")
            elif q == 0:
                row.append("-")
            elif p == 0:
                row.append("|")
            else:
                row.append(".")
        grid.append(" ".join(row))
    return "\n".join(grid) + "\n"


# -- subcommands -------------------------------------------------------------


def _analysis_for(args) -> tuple[AnalysisResult, list[Decomposition]]:
    x = load_complex(args)
    window = parse_window(args.window) if args.window else None
    result = analyze(x, window)
    decomps = list(result.decompositions)
    if getattr(args, "reduced", False):
        decomps = [reduce_decomposition(d) for d in decomps]
    return result, decomps


def cmd_analyze(args) -> int:
    result, decomps = _analysis_for(args)
    if args.pretty:
        _emit(_pretty_analysis(result, decomps), args)
    else:
        out = result.to_json()
        out["decompositions"] = [d.to_json() for d in decomps]
        _emit(json.dumps(out, indent=2), args)
    return 0 if result.status == "unique" else 2


def cmd_decompose(args) -> int:
    data = _load_json(args.file)
    module = BigradedModule.from_json(data)
    m = args.dimension
    if m is None:
        if "dimension" not in data:
            raise InputError("--dimension (or a 'dimension' field) is "
                             "required to decompose a module")
        m = int(data["dimension"])
    d = decompose_module(module, m)
    _emit(json.dumps(d.to_json(), indent=2), args)
    return 0


def cmd_check(args) -> int:
    report: dict = {}
    ok = True
    if args.file is not None:
        data = _load_json(args.file)
    else:
        data = None
    if data is not None and "dims" in data and "fixed" not in data:
        module = BigradedModule.from_json(data)
        m = args.dimension
        violations = check_consequences(module, m)
        report["module_violations"] = [str(v) for v in violations]
        ok = not violations
    else:
        x = load_complex(args)
        violation = validate_complex(x)
        report["incidence"] = "ok" if violation is None else str(violation)
        if violation is None:
            profile = compute_profile(x)
            report["profile"] = profile.to_json()
        else:
            ok = False
    report["status"] = "ok" if ok else "violations"
    _emit(json.dumps(report, indent=2), args)
    return 0 if ok else 1


def cmd_homology(args) -> int:
    result, decomps = _analysis_for(args)
    out = {"status": result.status,
           "homology": [dualize(d).to_json() for d in decomps]}
    _emit(json.dumps(out, indent=2), args)
    return 0 if result.status == "unique" else 2


def cmd_borel(args) -> int:
    result, decomps = _analysis_for(args)
    out = {"status": result.status,
           "borel": [borel_to_json(borel(d)) for d in decomps]}
    _emit(json.dumps(out, indent=2), args)
    return 0 if result.status == "unique" else 2


def cmd_plot(args) -> int:
    if args.file is not None:
        data = _load_json(args.file)
        if isinstance(data, list):
            decomps = [Decomposition.from_json(data)]
            if args.reduced:
                decomps = [reduce_decomposition(d) for d in decomps]
            status = "unique"
        else:
            result, decomps = _analysis_for(args)
            status = result.status
    else:
        result, decomps = _analysis_for(args)
        status = result.status
    render = plot_ascii if args.ascii else plot_svg
    _emit("\n".join(render(d) for d in decomps), args)
    return 0 if status == "unique" else 2


def cmd_validate(args) -> int:
    x = load_complex(args)
    violation = validate_complex(x)
    if violation is None:
        _emit(json.dumps({"status": "ok", "name": x.name,
                          "cells": x.total_cells()}, indent=2), args)
        return 0
    _emit(json.dumps({"status": "violation",
                      "detail": str(violation)}, indent=2), args)
    return 1


def _add_input_flags(sub, with_reduced=True) -> None:
    sub.add_argument("--space", help="builder expression, e.g. 'antipodal:4'")
    sub.add_argument("--file", help="JSON input path")
    sub.add_argument("--window", help="pmin,pmax,qmin,qmax")
    sub.add_argument("--out", help="write output to this path")
    if with_reduced:
        sub.add_argument("--reduced", action="store_true",
                         help="remove one base summand at bidegree (0,0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bredon",
        description="Exact bigraded equivariant cohomology of finite "
                    "cell complexes with an order-two symmetry.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("analyze", help="decompose the cohomology of a complex")
    _add_input_flags(p)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(fn=cmd_analyze)

    p = subs.add_parser("decompose", help="decompose a user-supplied module")
    p.add_argument("--file", required=True)
    p.add_argument("--dimension", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_decompose)

    p = subs.add_parser("check", help="validate incidence data or check a "
                                      "module's consequence constraints")
    _add_input_flags(p, with_reduced=False)
    p.add_argument("--dimension", type=int)
    p.set_defaults(fn=cmd_check)

    p = subs.add_parser("homology", help="dual (homology) decomposition")
    _add_input_flags(p)
    p.set_defaults(fn=cmd_homology)

    p = subs.add_parser("borel", help="polynomial-ring summands")
    _add_input_flags(p)
    p.set_defaults(fn=cmd_borel)

    p = subs.add_parser("plot", help="cone-and-strip diagram (SVG or ASCII)")
    _add_input_flags(p)
    p.add_argument("--ascii", action="store_true")
    p.set_defaults(fn=cmd_plot)

    p = subs.add_parser("validate", help="incidence-data check only")
    _add_input_flags(p, with_reduced=False)
    p.set_defaults(fn=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, ComplexError, AnalysisError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
