"""Iterates of the middle-thirds Cantor set and the SVC(m) family."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .expansions import (
    DigitExpansion,
    DomainError,
    as_rational,
    dual_representations,
    expand,
    truncate,
    value,
)

DEPTH_LIMIT = 20


class ConstructionError(ValueError):
    def __init__(self, level: int, message: str):
        super().__init__(f"level {level}: {message}")
        self.level = level


@dataclass(frozen=True, eq=False)
class IntervalSet:
    """Sorted, pairwise disjoint closed intervals inside [0, 1].

    Endpoints are kept as integer numerators over one shared denominator so
    that iterates with ~10**6 pieces stay cheap; ``intervals`` exposes them
    as Fractions.
    """

    den: int
    ends: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = None
        for a, b in self.ends:
            if not 0 <= a <= b <= self.den:
                raise ValueError(f"bad interval [{a}/{self.den}, {b}/{self.den}]")
            if prev is not None and a <= prev:
                raise ValueError("intervals must be sorted and disjoint")
            prev = b

    @classmethod
    def of(cls, pairs) -> IntervalSet:
        pairs = [(as_rational(a), as_rational(b)) for a, b in pairs]
        den = math.lcm(1, *(q.denominator for ab in pairs for q in ab))
        return cls(den, tuple((int(a * den), int(b * den)) for a, b in pairs))

    @property
    def intervals(self) -> tuple[tuple[Fraction, Fraction], ...]:
        d = self.den
        return tuple((Fraction(a, d), Fraction(b, d)) for a, b in self.ends)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        if len(self.ends) != len(other.ends):
            return False
        p, q = self.den, other.den
        return all(a * q == c * p and b * q == e * p for (a, b), (c, e) in zip(self.ends, other.ends))

    def __len__(self) -> int:
        return len(self.ends)

    def __iter__(self) -> Iterator[tuple[Fraction, Fraction]]:
        return iter(self.intervals)

    def total_length(self) -> Fraction:
        return Fraction(sum(b - a for a, b in self.ends), self.den)

    def endpoints(self) -> list[Fraction]:
        return [e for ab in self.intervals for e in ab]

    def contains(self, x) -> bool:
        x = as_rational(x) * self.den
        return any(a <= x <= b for a, b in self.ends)

    def covers(self, other: IntervalSet) -> bool:
        """Every interval of ``other`` sits inside one interval of self."""
        mine = self.intervals
        i = 0
        for a, b in other.intervals:
            while i < len(mine) and mine[i][1] < a:
                i += 1
            if i == len(mine):
                return False
            lo, hi = mine[i]
            if not (lo <= a and b <= hi):
                return False
        return True


@dataclass(frozen=True)
class RemovedInterval:
    level: int
    a: Fraction
    b: Fraction
    a_expansion: DigitExpansion = field(compare=False)
    b_expansion: DigitExpansion = field(compare=False)

    @classmethod
    def at(cls, level: int, a: Fraction) -> RemovedInterval:
        b = a + Fraction(1, 3**level)
        return cls(level, a, b, expand(a, 3, terminating=True), expand(b, 3, terminating=True))

    def __contains__(self, x) -> bool:
        return self.a < as_rational(x) < self.b


@dataclass(frozen=True)
class InC:
    expansion: DigitExpansion  # the representation with digits in {0, 2}


@dataclass(frozen=True)
class RemovedAt:
    level: int
    interval: RemovedInterval


Membership = Union[InC, RemovedAt]


def _check_level(n: int, limit: int) -> None:
    if n < 0:
        raise DomainError(f"level must be non-negative, got {n}")
    if n > limit:
        raise DomainError(f"level {n} exceeds depth limit {limit}")


def _left_numerators(n: int) -> list[int]:
    # numerators over 3**n of numbers 0.e1...en (base 3) with every ei in {0, 2}
    lefts = [0]
    for _ in range(n):
        lefts = [3 * l + d for l in lefts for d in (0, 2)]
    return lefts


def cantor_iterate(n: int, limit: int = DEPTH_LIMIT) -> IntervalSet:
    """C_n: 2**n closed intervals of length 3**-n."""
    _check_level(n, limit)
    return IntervalSet(3**n, tuple((l, l + 1) for l in _left_numerators(n)))


def remove_centered(intervals: IntervalSet, length, level: int) -> IntervalSet:
    """Delete the open interval of the given length centred in each piece."""
    length = as_rational(length)
    den = math.lcm(intervals.den, length.denominator)
    scale = den // intervals.den
    gap = int(length * den)
    if any(((b - a) * scale - gap) % 2 for a, b in intervals.ends):
        den, scale, gap = 2 * den, 2 * scale, 2 * gap
    out = []
    for a, b in intervals.ends:
        a, b = a * scale, b * scale
        if gap > b - a:
            raise ConstructionError(level, f"cannot remove {length} from [{Fraction(a, den)}, {Fraction(b, den)}]")
        half = (b - a - gap) // 2
        out.append((a, a + half))
        out.append((b - half, b))
    return IntervalSet(den, tuple(out))


def svc_iterate(m: int, n: int, limit: int = DEPTH_LIMIT) -> IntervalSet:
    """n-th iterate of SVC(m): step k removes a centred open interval of
    length m**-k from every surviving piece.  SVC(3) is the Cantor set."""
    if m < 3:
        raise DomainError(f"m must be an integer >= 3, got {m}")
    _check_level(n, limit)
    # every endpoint through step n is a multiple of (2m)**-n
    s = IntervalSet((2 * m) ** n, ((0, (2 * m) ** n),))
    for k in range(1, n + 1):
        s = remove_centered(s, Fraction(1, m**k), k)
    return s


def svc_piece_length(m: int, n: int) -> Fraction:
    """Common length of the 2**n pieces of SVC(m) at step n."""
    length = Fraction(1)
    for k in range(1, n + 1):
        length = (length - Fraction(1, m**k)) / 2
    return length


def zero_two_expansion(x) -> DigitExpansion | None:
    """The ternary expansion of ``x`` with all digits in {0, 2}, if any."""
    for e in dual_representations(as_rational(x), 3):
        if 1 not in e.prefix and 1 not in e.tail:
            return e
    return None


def first_one(e: DigitExpansion) -> int | None:
    """1-based position of the first digit 1, or None."""
    for i, d in enumerate(e.prefix + e.tail, start=1):
        if d == 1:
            return i
    return None


def membership(x) -> Membership:
    """InC, or the removed interval (and its level) that contains ``x``."""
    x = as_rational(x)
    e = zero_two_expansion(x)
    if e is not None:
        return InC(e)
    canon = expand(x, 3)
    j = first_one(canon)
    head = value(DigitExpansion(3, tuple(truncate(canon, j - 1))))
    interval = RemovedInterval.at(j, head + Fraction(1, 3**j))
    return RemovedAt(j, interval)


def in_cantor(x) -> bool:
    return isinstance(membership(x), InC)


def removed_intervals(n: int, limit: int = DEPTH_LIMIT) -> list[RemovedInterval]:
    """The 2**(n-1) open intervals deleted at exactly step n."""
    if n < 1:
        raise DomainError("removal levels start at 1")
    _check_level(n, limit)
    den = 3**n
    return [RemovedInterval.at(n, Fraction(3 * l + 1, den)) for l in _left_numerators(n - 1)]


@dataclass(frozen=True)
class MeasureDiagnostics:
    iterate_length: Fraction
    removed_total: Fraction


def measure_diagnostics(n: int) -> MeasureDiagnostics:
    if n < 0:
        raise DomainError("level must be non-negative")
    removed = sum((Fraction(2 ** (k - 1), 3**k) for k in range(1, n + 1)), Fraction(0))
    return MeasureDiagnostics(Fraction(2, 3) ** n, removed)


@dataclass(frozen=True)
class DimensionEstimate:
    count: int  # boxes: 2**n
    scale: int  # inverse side length: 3**n

    @property
    def log_count(self) -> float:
        return math.log(self.count)

    @property
    def log_scale(self) -> float:
        return math.log(self.scale)

    @property
    def quotient(self) -> float:
        return self.log_count / self.log_scale


def dimension_estimate(n: int) -> DimensionEstimate:
    """Box-count pair for C_n: 2**n boxes of side 3**-n."""
    if n < 1:
        raise DomainError("dimension estimate needs n >= 1")
    return DimensionEstimate(2**n, 3**n)


def perfectness_witness(x, n: int) -> Fraction:
    """An endpoint y != x of C_n, in C, with |x - y| <= 3**-n.

    Picks the nearer endpoint of the C_n piece holding ``x`` (left on ties).
    """
    x = as_rational(x)
    e = zero_two_expansion(x)
    if e is None:
        raise DomainError(f"{x} is not in the Cantor set")
    left = value(DigitExpansion(3, tuple(e.digit(k) for k in range(1, n + 1))))
    right = left + Fraction(1, 3**n)
    candidates = [y for y in (left, right) if y != x]
    return min(candidates, key=lambda y: abs(x - y))
