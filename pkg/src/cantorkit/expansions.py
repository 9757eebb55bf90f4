"""Exact rationals and their periodic base-2 / base-3 digit expansions.

Every rational in [0, 1] has an eventually periodic expansion in any base.
An expansion is stored as a finite ``prefix`` followed by a ``tail`` that
repeats forever; an empty tail stands for trailing zeros.  Digits are kept
most-significant first, so ``prefix[0]`` is the coefficient of ``base**-1``.

Rationals of the form m/b**n have two expansions.  :func:`expand` returns
the non-terminating one (ending in repeating ``b - 1``) unless asked for the
terminating twin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

BASES = (2, 3)

Rational = Fraction


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are rejected: every public entry point is exact.
    """
    if isinstance(x, float):
        raise TypeError("floating-point input is not accepted; pass a Fraction or 'p/q'")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"expected 'p/q' or an integer, got {text!r}")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    """Always "p/q", including integers ("1/1")."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _check_base(base: int) -> None:
    if base not in BASES:
        raise DomainError(f"base must be 2 or 3, got {base}")


def _check_unit(x: Fraction) -> None:
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")


def _minimal_period(tail: tuple[int, ...]) -> tuple[int, ...]:
    n = len(tail)
    for p in range(1, n + 1):
        if n % p == 0 and tail == tail[:p] * (n // p):
            return tail[:p]
    return tail


@dataclass(frozen=True)
class DigitExpansion:
    base: int
    prefix: tuple[int, ...] = ()
    tail: tuple[int, ...] = ()

    def __post_init__(self):
        _check_base(self.base)
        object.__setattr__(self, "prefix", tuple(int(d) for d in self.prefix))
        object.__setattr__(self, "tail", tuple(int(d) for d in self.tail))
        for d in self.prefix + self.tail:
            if not 0 <= d < self.base:
                raise DomainError(f"digit {d} is not valid in base {self.base}")

    @property
    def terminating(self) -> bool:
        return all(d == 0 for d in self.tail)

    def digit(self, k: int) -> int:
        """Digit at position ``k`` (1-based)."""
        if k < 1:
            raise IndexError("digit positions start at 1")
        if k <= len(self.prefix):
            return self.prefix[k - 1]
        if not self.tail:
            return 0
        return self.tail[(k - len(self.prefix) - 1) % len(self.tail)]

    def digits(self) -> Iterator[int]:
        """Infinite digit stream."""
        yield from self.prefix
        tail = self.tail or (0,)
        while True:
            yield from tail

    def normalized(self) -> DigitExpansion:
        """Same digit stream with the shortest prefix and period."""
        tail = _minimal_period(self.tail)
        if all(d == 0 for d in tail):
            tail = ()
        prefix = list(self.prefix)
        if tail:
            while prefix and prefix[-1] == tail[-1]:
                prefix.pop()
                tail = (tail[-1],) + tail[:-1]
        else:
            while prefix and prefix[-1] == 0:
                prefix.pop()
        return DigitExpansion(self.base, tuple(prefix), tail)

    def unrolled(self, prefix_len: int, tail_multiple: int = 1) -> DigitExpansion:
        """Same digit stream with prefix at least ``prefix_len`` long and
        tail length a multiple of ``tail_multiple``."""
        tail = self.tail or (0,)
        extra = max(0, prefix_len - len(self.prefix))
        prefix = self.prefix + tuple(tail[i % len(tail)] for i in range(extra))
        shift = extra % len(tail)
        tail = tail[shift:] + tail[:shift]
        reps = tail_multiple // math.gcd(len(tail), tail_multiple)
        return DigitExpansion(self.base, prefix, tail * reps)

    def with_digit(self, k: int, d: int) -> DigitExpansion:
        """Copy with digit ``k`` (1-based) replaced by ``d``."""
        e = self.unrolled(k)
        prefix = list(e.prefix)
        prefix[k - 1] = d
        return DigitExpansion(self.base, tuple(prefix), e.tail)

    def map_digits(self, base: int, fn) -> DigitExpansion:
        return DigitExpansion(base, tuple(fn(d) for d in self.prefix), tuple(fn(d) for d in self.tail))

    def __str__(self) -> str:
        return format_expansion(self)


def value(e: DigitExpansion) -> Fraction:
    """Exact value: prefix sum plus the geometric series of the tail."""
    b = e.base
    p = len(e.prefix)
    head = 0
    for d in e.prefix:
        head = head * b + d
    total = Fraction(head, b**p)
    if e.tail:
        t = len(e.tail)
        block = 0
        for d in e.tail:
            block = block * b + d
        total += Fraction(block, (b**t - 1) * b**p)
    return total


def _long_division(num: int, den: int, base: int) -> DigitExpansion:
    # num/den in [0, 1); remainders repeat exactly when the digits do.
    seen: dict[int, int] = {}
    digits: list[int] = []
    r = num
    while r and r not in seen:
        seen[r] = len(digits)
        q, r = divmod(r * base, den)
        digits.append(q)
    if not r:
        return DigitExpansion(base, tuple(digits), ())
    start = seen[r]
    return DigitExpansion(base, tuple(digits[:start]), tuple(digits[start:]))


def expand(x, base: int, terminating: bool = False) -> DigitExpansion:
    """Expansion of ``x`` in [0, 1].

    The canonical result for m/base**n is the non-terminating form; pass
    ``terminating=True`` to get the finite twin instead.  0 is all zeros and
    1 is all ``base - 1`` regardless of the flag.
    """
    _check_base(base)
    x = as_rational(x)
    _check_unit(x)
    if x == 1:
        return DigitExpansion(base, (), (base - 1,))
    e = _long_division(x.numerator, x.denominator, base)
    if e.tail or not e.prefix or terminating:
        return e
    # finite expansion ... d 0 0 ... -> ... (d-1) (b-1) (b-1) ...
    prefix = e.prefix[:-1] + (e.prefix[-1] - 1,)
    return DigitExpansion(base, prefix, (base - 1,))


def is_base_rational(x, base: int) -> bool:
    """True iff the reduced denominator of ``x`` is a power of ``base``."""
    den = as_rational(x).denominator
    while den % base == 0:
        den //= base
    return den == 1


def dual_representations(x, base: int) -> tuple[DigitExpansion, ...]:
    """Both expansions of ``x`` (terminating first) when ``x`` = m/base**n
    lies strictly inside (0, 1); otherwise a 1-tuple with the unique one."""
    x = as_rational(x)
    _check_base(base)
    _check_unit(x)
    if x in (0, 1) or not is_base_rational(x, base):
        return (expand(x, base),)
    return (expand(x, base, terminating=True), expand(x, base))


def truncate(e: DigitExpansion, k: int) -> list[int]:
    """First ``k`` digits."""
    if k < 0:
        raise DomainError("depth must be non-negative")
    return [e.digit(i) for i in range(1, k + 1)]


def deinterleave(e: DigitExpansion, stride: int) -> list[DigitExpansion]:
    """Split the digit stream into ``stride`` substreams; substream ``c``
    takes positions ``c + 1, c + 1 + stride, ...``."""
    u = e.unrolled(-(-len(e.prefix) // stride) * stride, stride)
    parts = []
    for c in range(stride):
        parts.append(DigitExpansion(e.base, u.prefix[c::stride], u.tail[c::stride]).normalized())
    return parts


def interleave(parts: Sequence[DigitExpansion]) -> DigitExpansion:
    """Inverse of :func:`deinterleave`."""
    if not parts:
        raise DomainError("nothing to interleave")
    base = parts[0].base
    if any(p.base != base for p in parts):
        raise DomainError("all parts must share a base")
    plen = max(len(p.prefix) for p in parts)
    tlen = math.lcm(*(len(p.tail) or 1 for p in parts))
    us = [p.unrolled(plen, tlen) for p in parts]
    prefix = tuple(d for i in range(plen) for d in (u.prefix[i] for u in us))
    tail = tuple(d for i in range(tlen) for d in (u.tail[i] for u in us))
    return DigitExpansion(base, prefix, tail).normalized()


def format_expansion(e: DigitExpansion) -> str:
    """e.g. prefix 01, tail 2, base 3 -> "0.01(2)_3"."""
    body = "".join(map(str, e.prefix))
    if e.tail:
        body += "(" + "".join(map(str, e.tail)) + ")"
    return f"0.{body or '0'}_{e.base}"


def parse_expansion(text: str) -> DigitExpansion:
    text = text.strip()
    try:
        head, base_s = text.rsplit("_", 1)
        base = int(base_s)
        if not head.startswith("0."):
            raise ValueError
        body = head[2:]
        if "(" in body:
            pre, rest = body.split("(", 1)
            if not rest.endswith(")") or not rest[:-1]:
                raise ValueError
            tail = rest[:-1]
        else:
            pre, tail = body, ""
        return DigitExpansion(base, tuple(int(c) for c in pre), tuple(int(c) for c in tail))
    except (ValueError, IndexError):
        raise ValueError(f"malformed expansion {text!r}; expected e.g. '0.01(2)_3'") from None
