"""The Cantor-Lebesgue function and its polygonal approximants."""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable

from .cantor_set import (
    DEPTH_LIMIT,
    InC,
    first_one,
    membership,
    removed_intervals,
    zero_two_expansion,
)
from .expansions import DigitExpansion, DomainError, as_rational, expand, truncate, value


@dataclass(frozen=True)
class CantorFunctionValue:
    value: Fraction
    binary_expansion: DigitExpansion


def _halve(e: DigitExpansion) -> DigitExpansion:
    return e.map_digits(2, lambda d: d // 2)


def F_on_cantor(x) -> CantorFunctionValue:
    """Map 0.e1e2..._3 (digits in {0, 2}) to 0.(e1/2)(e2/2)..._2."""
    x = as_rational(x)
    e = zero_two_expansion(x)
    if e is None:
        raise DomainError(f"{x} is not in the Cantor set; use F_extended")
    b = _halve(e).normalized()
    return CantorFunctionValue(value(b), b)


def F_extended(x) -> CantorFunctionValue:
    """Cantor function on all of [0, 1].

    Off the Cantor set, with j the position of the first ternary digit 1,
    the value is the halved digits before j followed by a single binary 1.
    """
    x = as_rational(x)
    m = membership(x)
    if isinstance(m, InC):
        b = _halve(m.expansion).normalized()
        return CantorFunctionValue(value(b), b)
    canon = expand(x, 3)
    j = first_one(canon)
    digits = [d // 2 for d in truncate(canon, j - 1)] + [1]
    b = DigitExpansion(2, tuple(digits)).normalized()
    return CantorFunctionValue(value(b), b)


def F(x) -> Fraction:
    return F_extended(x).value


def F_by_gap_lookup(x, depth: int = DEPTH_LIMIT) -> Fraction:
    """Independent route: find the removed interval holding ``x`` by scanning
    levels and return F at its left endpoint."""
    x = as_rational(x)
    if zero_two_expansion(x) is not None:
        return F_on_cantor(x).value
    for n in range(1, depth + 1):
        for gap in removed_intervals(n, limit=depth):
            if x in gap:
                return F_on_cantor(gap.a).value
    raise DomainError(f"{x} not resolved within {depth} levels")


@dataclass(frozen=True)
class PolygonalApproximant:
    """Piecewise-linear F_n given by its breakpoints."""

    level: int
    breakpoints: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        object.__setattr__(self, "_xs", [p[0] for p in self.breakpoints])

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        if not 0 <= x <= 1:
            raise DomainError(f"{x} is outside [0, 1]")
        xs = self._xs
        i = bisect_right(xs, x) - 1
        if i >= len(xs) - 1:
            return self.breakpoints[-1][1]
        (x0, y0), (x1, y1) = self.breakpoints[i], self.breakpoints[i + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def segments(self) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """(x0, y0, x1, y1) for each linear piece."""
        bp = self.breakpoints
        return [(*bp[i], *bp[i + 1]) for i in range(len(bp) - 1)]

    def slopes(self) -> list[Fraction]:
        return [(y1 - y0) / (x1 - x0) for x0, y0, x1, y1 in self.segments()]

    def flat_segments(self):
        return [s for s in self.segments() if s[1] == s[3]]

    def on_grid(self, den: int) -> list[Fraction]:
        """Values at k/den, k = 0..den, in one merged sweep."""
        out = []
        bp = self.breakpoints
        i = 0
        for k in range(den + 1):
            x = Fraction(k, den)
            while i < len(bp) - 2 and bp[i + 1][0] <= x:
                i += 1
            (x0, y0), (x1, y1) = bp[i], bp[i + 1]
            out.append(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
        return out


@lru_cache(maxsize=None)
def _breakpoints(n: int) -> tuple[tuple[Fraction, Fraction], ...]:
    if n == 0:
        return ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(1)))
    prev = _breakpoints(n - 1)
    left = tuple((x / 3, y / 2) for x, y in prev)
    right = tuple(((x + 2) / 3, (y + 1) / 2) for x, y in prev)
    return left + right


def polygonal(n: int, limit: int = DEPTH_LIMIT) -> PolygonalApproximant:
    """F_n from F_{n-1}: shrink into [0, 1/3] at half height, keep the flat
    middle third, and copy shifted into [2/3, 1] raised by 1/2."""
    if n < 1:
        raise DomainError("approximants start at level 1")
    if n > limit:
        raise DomainError(f"level {n} exceeds depth limit {limit}")
    return PolygonalApproximant(n, _breakpoints(n))


@dataclass(frozen=True)
class GapReport:
    m: int
    n: int
    grid: int
    max_gap: Fraction
    argmax: Fraction
    bound: Fraction

    @property
    def within_bound(self) -> bool:
        return self.max_gap <= self.bound


def _max_abs_diff(a: Iterable[Fraction], b: Iterable[Fraction], den: int):
    best, arg = Fraction(0), Fraction(0)
    for k, (u, v) in enumerate(zip(a, b)):
        d = abs(u - v)
        if d > best:
            best, arg = d, Fraction(k, den)
    return best, arg


def approximation_gap(m: int, n: int, grid: int) -> GapReport:
    """Exact max of |F_m - F_n| over k/grid; the bound is 2**-m."""
    if not 1 <= m <= n:
        raise DomainError("need 1 <= m <= n")
    gap, arg = _max_abs_diff(polygonal(m).on_grid(grid), polygonal(n).on_grid(grid), grid)
    return GapReport(m, n, grid, gap, arg, Fraction(1, 2**m))


def consecutive_gap(n: int, grid: int) -> GapReport:
    """|F_{n+1} - F_n| over the grid against 2**-(n+1)."""
    r = approximation_gap(n, n + 1, grid)
    return GapReport(n, n + 1, grid, r.max_gap, r.argmax, Fraction(1, 2 ** (n + 1)))


def limit_gap(n: int, grid: int) -> GapReport:
    """|F_n - F| over the grid against 2**-n."""
    fn = polygonal(n).on_grid(grid)
    f = (F(Fraction(k, grid)) for k in range(grid + 1))
    gap, arg = _max_abs_diff(fn, f, grid)
    return GapReport(n, -1, grid, gap, arg, Fraction(1, 2**n))


@dataclass(frozen=True)
class QuotientStep:
    n: int
    x: Fraction
    x_n: Fraction
    quotient: Fraction


def difference_quotient(x, n: int) -> QuotientStep:
    """Flip ternary digit 2n+1 of ``x`` (0 <-> 2) and return the exact
    |F(x) - F(x_n)| / |x - x_n|."""
    x = as_rational(x)
    if n < 0:
        raise DomainError("index must be non-negative")
    e = zero_two_expansion(x)
    if e is None:
        raise DomainError(f"{x} is not in the Cantor set")
    pos = 2 * n + 1
    flipped = e.with_digit(pos, 2 - e.digit(pos))
    x_n = value(flipped)
    q = abs(F_on_cantor(x).value - F_on_cantor(x_n).value) / abs(x - x_n)
    return QuotientStep(n, x, x_n, q)


@dataclass(frozen=True)
class SingularityReport:
    level: int
    flat_measure: Fraction
    rise_on_flat: Fraction
    rise_on_iterate: Fraction
    piece_rises: tuple[Fraction, ...]


def singularity_report(n: int) -> SingularityReport:
    """Split the total rise of F_n between its flat and sloped pieces."""
    flat_len = Fraction(0)
    flat_rise = Fraction(0)
    rises = []
    for x0, y0, x1, y1 in polygonal(n).segments():
        if y0 == y1:
            flat_len += x1 - x0
            flat_rise += y1 - y0
        else:
            rises.append(y1 - y0)
    return SingularityReport(n, flat_len, flat_rise, sum(rises, Fraction(0)), tuple(rises))
