"""Text emitters: comma-separated records, minimal SVG, and JSON dumps.

Exact values are always written as "p/q".  Decimal columns and SVG
coordinates are rounded to 12 significant digits and are for display only.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .expansions import DigitExpansion, format_expansion, format_rational

PRECISION = 12


def dec(x) -> str:
    return format(float(x), f".{PRECISION}g")


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, DigitExpansion):
        return format_expansion(v)
    if v is None:
        return ""
    return str(v)


def to_csv(columns: Sequence[str], rows: Iterable[Sequence], decimals: bool = False) -> str:
    """Header plus one line per record.  With ``decimals`` every Fraction
    column gets a rounded companion named ``<column>_approx``."""
    rows = [list(r) for r in rows]
    frac_cols = [i for i in range(len(columns)) if rows and all(isinstance(r[i], Fraction) for r in rows)]
    header = list(columns)
    if decimals:
        header += [f"{columns[i]}_approx" for i in frac_cols]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        out = [_cell(v) for v in r]
        if decimals:
            out += [dec(r[i]) for i in frac_cols]
        w.writerow(out)
    return buf.getvalue()


def jsonable(obj: Any) -> Any:
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, DigitExpansion):
        return format_expansion(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_json(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2) + "\n"


_SVG_HEAD = (
    '<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="{vb}">\n'
)


def _pts(points: Iterable[Sequence]) -> str:
    return " ".join(f"{dec(x)},{dec(y)}" for x, y in points)


def svg_polyline(points: Sequence[Sequence], title: str = "") -> str:
    """Polyline in the unit square, y pointing up."""
    out = [_SVG_HEAD.format(w=600, h=600, vb="-0.05 -0.05 1.1 1.1")]
    if title:
        out.append(f"  <title>{title}</title>\n")
    out.append('  <g transform="matrix(1 0 0 -1 0 1)">\n')
    out.append('    <rect x="0" y="0" width="1" height="1" fill="none" stroke="#999" '
               'stroke-width="0.002"/>\n')
    out.append(f'    <polyline fill="none" stroke="black" stroke-width="0.003" points="{_pts(points)}"/>\n')
    out.append("  </g>\n</svg>\n")
    return "".join(out)


def svg_bars(rows: Sequence[Sequence[tuple]], title: str = "") -> str:
    """One row of filled intervals per entry of ``rows`` (top to bottom)."""
    n = max(len(rows), 1)
    band = 1 / n
    out = [_SVG_HEAD.format(w=600, h=max(60, 60 * n), vb="-0.02 0 1.04 1")]
    if title:
        out.append(f"  <title>{title}</title>\n")
    for i, row in enumerate(rows):
        y = dec(i * band + 0.25 * band)
        h = dec(0.5 * band)
        for a, b in row:
            out.append(f'  <rect x="{dec(a)}" y="{y}" width="{dec(b - a)}" height="{h}" fill="black"/>\n')
    out.append("</svg>\n")
    return "".join(out)
