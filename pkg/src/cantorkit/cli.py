"""Command-line front end.

Every subcommand writes one artifact (csv, svg or json) to --out, or to
stdout when --out is omitted.  Output depends only on the flags.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import cantor_function as cf
from . import cantor_set as cs
from . import hausdorff as hd
from . import properties
from . import space_filling as sf
from .emit import svg_bars, svg_polyline, to_csv, to_json
from .expansions import DomainError, dual_representations, expand, parse_rational


class UsageError(Exception):
    pass


def _rationals(values) -> list[Fraction]:
    try:
        return [parse_rational(v) for v in values]
    except ValueError as e:
        raise UsageError(str(e)) from None


def _need(fmt: str, allowed: tuple[str, ...], cmd: str) -> None:
    if fmt not in allowed:
        raise UsageError(f"{cmd} does not support --format {fmt} (choose from {', '.join(allowed)})")


def _table(args, columns, rows, structured):
    if args.format == "csv":
        return to_csv(columns, rows, decimals=args.decimals)
    return to_json(structured)


def cmd_iterate(args) -> str:
    sets = [cs.cantor_iterate(n) for n in range(args.depth + 1)]
    return _emit_iterates(args, sets, "Cantor set iterates")


def cmd_svc(args) -> str:
    sets = [cs.svc_iterate(args.m, n) for n in range(args.depth + 1)]
    return _emit_iterates(args, sets, f"SVC({args.m}) iterates")


def _emit_iterates(args, sets, title) -> str:
    last = sets[-1]
    if args.format == "svg":
        return svg_bars([s.intervals for s in sets], title)
    rows = [(args.depth, a, b) for a, b in last]
    structured = {"level": args.depth, "intervals": [[a, b] for a, b in last],
                  "total_length": last.total_length()}
    return _table(args, ("level", "left", "right"), rows, structured)


def cmd_member(args) -> str:
    _need(args.format, ("csv", "json"), "member")
    rows, recs = [], []
    for x in _rationals(args.x):
        m = cs.membership(x)
        reps = dual_representations(x, 3)
        if isinstance(m, cs.InC):
            row = (x, "in", None, None, None, m.expansion)
        else:
            row = (x, "removed", m.level, m.interval.a, m.interval.b, reps[-1])
        rows.append(row)
        recs.append(dict(zip(("x", "status", "level", "gap_left", "gap_right", "ternary"), row),
                         representations=list(reps)))
    return _table(args, ("x", "status", "level", "gap_left", "gap_right", "ternary"), rows, recs)


def cmd_staircase(args) -> str:
    if args.grid:
        pts = [(Fraction(k, args.grid), cf.F(Fraction(k, args.grid))) for k in range(args.grid + 1)]
        title = f"Cantor function sampled at k/{args.grid}"
    else:
        pts = list(cf.polygonal(args.depth).breakpoints)
        title = f"Polygonal approximant F_{args.depth}"
    if args.format == "svg":
        return svg_polyline(pts, title)
    return _table(args, ("x", "F"), pts, {"title": title, "points": [list(p) for p in pts]})


def cmd_approx(args) -> str:
    _need(args.format, ("csv", "json"), "approx")
    grid = args.grid or 3**args.depth
    rows = []
    for m in range(1, args.depth + 1):
        for n in range(m + 1, args.depth + 1):
            g = cf.approximation_gap(m, n, grid)
            rows.append((m, n, g.max_gap, g.argmax, g.bound, g.within_bound))
    cols = ("m", "n", "max_gap", "argmax", "bound", "within_bound")
    return _table(args, cols, rows, {"grid": grid, "gaps": [dict(zip(cols, r)) for r in rows]})


def cmd_quotient(args) -> str:
    _need(args.format, ("csv", "json"), "quotient")
    x = parse_rational(args.x)
    rows = []
    prev = None
    for n in range(args.depth + 1):
        if args.component == "F":
            step = cf.difference_quotient(x, n)
            x_n, q = step.x_n, step.quotient
        else:
            comp = {"phi": 0, "psi": 1}[args.component]
            q = sf.component_difference_quotient(x, n, component=comp)
            x_n = None
        rows.append((n, x_n, q, q / prev if prev else None))
        prev = q
    cols = ("n", "x_n", "quotient", "ratio")
    note = ("ratio 9/4 for F; the commonly quoted (9/2)^n growth holds for the coordinates of F2"
            if args.component == "F" else "coordinate of F2")
    return _table(args, cols, rows, {"x": x, "component": args.component, "note": note,
                                     "steps": [dict(zip(cols, r)) for r in rows]})


def _curve(args, d: int) -> str:
    samples = sf.sample_curve(d, args.depth, args.stride)
    if args.format == "svg":
        if d != 2:
            raise UsageError("svg output is only available for curve2")
        return svg_polyline([s.point for s in samples], f"Lebesgue curve, depth {args.depth}")
    coords = ("x", "y", "z")[:d]
    rows = [(s.parameter, *s.point, s.on_cantor) for s in samples]
    cols = ("t", *coords, "on_cantor")
    return _table(args, cols, rows, [dict(zip(cols, r)) for r in rows])


def cmd_curve2(args) -> str:
    return _curve(args, 2)


def cmd_curve3(args) -> str:
    return _curve(args, 3)


def cmd_preimage(args) -> str:
    _need(args.format, ("csv", "json"), "preimage")
    p = tuple(_rationals(args.coords))
    if len(p) not in (2, 3):
        raise UsageError("preimage needs 2 or 3 coordinates")
    x = sf.preimage(p)
    image = sf.lebesgue_map(x, len(p))
    cols = ("t", "ternary", *("x", "y", "z")[:len(p)])
    row = (x, expand(x, 3), *image)
    return _table(args, cols, [row], dict(zip(cols, row)))


def cmd_hausdorff(args) -> str:
    _need(args.format, ("csv", "json"), "hausdorff")
    path = Path(args.input)
    try:
        text = path.read_text()
    except OSError as e:
        raise UsageError(f"{path}: {e.strerror}") from None
    try:
        K = hd.parse_box_set(text)
    except hd.BoxSetParseError as e:
        raise UsageError(f"{path}: {e}") from None
    cover = hd.build_cover(K, args.depth)
    xs = _rationals(args.x) if args.x else [hd.leaf_preimage(cover, i) for i in range(len(cover.leaves()))]
    traces = [hd.trace(cover, x) for x in xs]
    if args.format == "csv":
        d = K.dimension
        cols = ("x", "blocks", "indices", *(f"p{i}" for i in range(d)))
        rows = [(t.x, "|".join("".join(map(str, b)) for b in t.blocks),
                 " ".join(map(str, t.indices)), *t.point) for t in traces]
        return to_csv(cols, rows, decimals=args.decimals)
    dump = {
        "dimension": K.dimension,
        "widths": list(cover.widths),
        "levels": [
            {"level": k, "radius": level[0].radius,
             "pieces": [{"index": p.index, "parent": p.parent, "center": list(p.center),
                         "boxes": [[list(b.lo), list(b.hi)] for b in p.set.boxes]} for p in level]}
            for k, level in enumerate(cover.levels, start=1)
        ],
        "traces": [{"x": t.x, "blocks": [list(b) for b in t.blocks], "indices": list(t.indices),
                    "point": list(t.point)} for t in traces],
    }
    return to_json(dump)


COMMANDS = {
    "iterate": cmd_iterate,
    "svc": cmd_svc,
    "member": cmd_member,
    "staircase": cmd_staircase,
    "approx": cmd_approx,
    "quotient": cmd_quotient,
    "curve2": cmd_curve2,
    "curve3": cmd_curve3,
    "preimage": cmd_preimage,
    "hausdorff": cmd_hausdorff,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cantorkit", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "svg", "json"), default="csv")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--decimals", action="store_true",
                        help="add rounded *_approx columns to csv output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iterate", parents=[common], help="Cantor set iterate C_n")
    p.add_argument("--depth", type=int, default=3)
    p = sub.add_parser("svc", parents=[common], help="SVC(m) iterate")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--depth", type=int, default=3)
    p = sub.add_parser("member", parents=[common], help="Cantor set membership of rationals")
    p.add_argument("x", nargs="+")
    p = sub.add_parser("staircase", parents=[common], help="polygonal approximant or sampled F")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--grid", type=int, default=0, help="sample F at k/grid instead of F_depth breakpoints")
    p = sub.add_parser("approx", parents=[common], help="max |F_m - F_n| over a grid")
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--grid", type=int, default=0, help="grid denominator (default 3**depth)")
    p = sub.add_parser("quotient", parents=[common], help="difference quotients at a Cantor point")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--x", default="0")
    p.add_argument("--component", choices=("F", "phi", "psi"), default="F")
    for name in ("curve2", "curve3"):
        p = sub.add_parser(name, parents=[common], help=f"Lebesgue curve in dimension {name[-1]}")
        p.add_argument("--depth", type=int, default=4)
        p.add_argument("--stride", type=int, default=1)
    p = sub.add_parser("preimage", parents=[common], help="Cantor preimage of a point of the square or cube")
    p.add_argument("coords", nargs="+")
    p = sub.add_parser("hausdorff", parents=[common], help="map the Cantor set onto a box union")
    p.add_argument("input", help="box set file")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--x", nargs="*", help="Cantor points to map (default: one per leaf)")
    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--select", action="append", metavar="SUITE",
                   help=f"suite to run, repeatable (default: all of {', '.join(properties.SUITES)})")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--grid", type=int, default=243)
    p.add_argument("--out", help="report file (default: stdout)")
    return ap


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as e:
        raise UsageError(f"cannot write {out}: {e.strerror}") from None


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.command == "verify":
            try:
                results = properties.run(args.select, properties.VerifyConfig(args.depth, args.grid))
            except KeyError as e:
                ap.error(f"unknown suite: {e.args[0]}")
            _write(properties.report(results), args.out)
            return 0 if all(r.passed for r in results) else 1
        _write(COMMANDS[args.command](args), args.out)
    except (UsageError, DomainError, ValueError) as e:
        print(f"cantorkit {args.command}: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
