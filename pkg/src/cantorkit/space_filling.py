"""Lebesgue's maps from the Cantor set onto [0,1]^2 and [0,1]^3.

F2 sends 0.e1e2e3..._3 (digits in {0, 2}) to the point whose first
coordinate has binary digits e1/2, e3/2, e5/2, ... and whose second has
e2/2, e4/2, ...; F3 uses stride 3.  Off the Cantor set the curve is the
linear interpolation between the images of the removed interval's ends.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cantor_set import InC, membership, zero_two_expansion
from .expansions import (
    DigitExpansion,
    DomainError,
    as_rational,
    deinterleave,
    expand,
    interleave,
    value,
)

CURVE_DEPTH_LIMIT = 12

Point = tuple[Fraction, ...]


def _cantor_expansion(x) -> DigitExpansion:
    x = as_rational(x)
    e = zero_two_expansion(x)
    if e is None:
        raise DomainError(f"{x} is not in the Cantor set; use the extended map")
    return e


def lebesgue_map(x, d: int) -> Point:
    """Stride-``d`` digit de-interleaving of a Cantor point."""
    e = _cantor_expansion(x)
    return tuple(value(c.map_digits(2, lambda t: t // 2)) for c in deinterleave(e, d))


def F2(x) -> Point:
    return lebesgue_map(x, 2)


def F3(x) -> Point:
    return lebesgue_map(x, 3)


def preimage(p) -> Fraction:
    """The Cantor point whose ternary digits interleave the doubled binary
    digits of the coordinates (canonical non-terminating expansions)."""
    coords = [as_rational(c) for c in p]
    if len(coords) < 1:
        raise DomainError("empty point")
    parts = [expand(c, 2).map_digits(3, lambda t: 2 * t) for c in coords]
    return value(interleave(parts))


def preimage2(p) -> Fraction:
    if len(p) != 2:
        raise DomainError("preimage2 needs a point of [0,1]^2")
    return preimage(p)


def preimage3(p) -> Fraction:
    if len(p) != 3:
        raise DomainError("preimage3 needs a point of [0,1]^3")
    return preimage(p)


def extended_map(x, d: int) -> Point:
    """Lebesgue's interpolated curve [0,1] -> [0,1]^d."""
    x = as_rational(x)
    m = membership(x)
    if isinstance(m, InC):
        return lebesgue_map(x, d)
    a, b = m.interval.a, m.interval.b
    pa, pb = lebesgue_map(a, d), lebesgue_map(b, d)
    return tuple((u * (b - x) + v * (x - a)) / (b - a) for u, v in zip(pa, pb))


def F2_extended(x) -> Point:
    return extended_map(x, 2)


def F3_extended(x) -> Point:
    return extended_map(x, 3)


@dataclass(frozen=True)
class CurveSample:
    parameter: Fraction
    point: Point
    on_cantor: bool


def sample_curve(d: int, depth: int, stride: int = 1, limit: int = CURVE_DEPTH_LIMIT) -> list[CurveSample]:
    """Samples at j/3**depth for j = 0, stride, 2*stride, ...; the endpoint 1
    is always included."""
    if d not in (2, 3):
        raise DomainError("curve dimension must be 2 or 3")
    if not 0 <= depth <= limit:
        raise DomainError(f"depth {depth} outside 0..{limit}")
    if stride < 1:
        raise DomainError("stride must be positive")
    den = 3**depth
    js = list(range(0, den + 1, stride))
    if js[-1] != den:
        js.append(den)
    out = []
    for j in js:
        t = Fraction(j, den)
        on = isinstance(membership(t), InC)
        out.append(CurveSample(t, lebesgue_map(t, d) if on else extended_map(t, d), on))
    return out


def component_difference_quotient(x, n: int, component: int = 0, d: int = 2,
                                  flip_component: int | None = None) -> Fraction:
    """|c(x) - c(x_n)| / |x - x_n| for coordinate ``component`` of the
    stride-``d`` map, where x_n flips (0 <-> 2) the ternary digit at
    position d*n + flip_component + 1.

    By default the flipped digit feeds the same coordinate, so for d = 2
    and component 0 the flip is at position 2n + 1.
    """
    if n < 0:
        raise DomainError("index must be non-negative")
    if not 0 <= component < d:
        raise DomainError(f"component must be in 0..{d - 1}")
    if flip_component is None:
        flip_component = component
    e = _cantor_expansion(x)
    pos = d * n + flip_component + 1
    x_n = value(e.with_digit(pos, 2 - e.digit(pos)))
    x = value(e)
    return abs(lebesgue_map(x, d)[component] - lebesgue_map(x_n, d)[component]) / abs(x - x_n)
