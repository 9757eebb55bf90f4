"""A finite-depth continuous surjection from the Cantor set onto a compact
union of rational boxes.

Level k of the cover splits every level-(k-1) piece into 2**n_k pieces,
each the intersection of the parent with a closed sup-norm ball of radius
2**(1-k).  A Cantor point is mapped by reading its halved ternary digits in
consecutive blocks of n_1, n_2, ... bits; block k is the binary index of the
child to descend into.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .cantor_set import zero_two_expansion
from .expansions import DigitExpansion, DomainError, as_rational, format_rational, truncate, value

Point = tuple[Fraction, ...]


class BoxSetParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Box:
    lo: Point
    hi: Point

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise DomainError("corner dimensions differ")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise DomainError(f"empty box {self.lo} .. {self.hi}")

    @classmethod
    def point(cls, p: Sequence) -> Box:
        p = tuple(as_rational(c) for c in p)
        return cls(p, p)

    def contains(self, p: Point) -> bool:
        return all(a <= c <= b for a, c, b in zip(self.lo, p, self.hi))

    def intersect(self, other: Box) -> Box | None:
        lo = tuple(map(max, self.lo, other.lo))
        hi = tuple(map(min, self.hi, other.hi))
        if any(a > b for a, b in zip(lo, hi)):
            return None
        return Box(lo, hi)

    def within(self, other: Box) -> bool:
        return other.contains(self.lo) and other.contains(self.hi)

    def nearest(self, p: Point) -> Point:
        return tuple(min(max(c, a), b) for a, c, b in zip(self.lo, p, self.hi))


def ball(center: Point, radius: Fraction) -> Box:
    """Closed sup-norm ball."""
    return Box(tuple(c - radius for c in center), tuple(c + radius for c in center))


def sup_distance(p: Point, q: Point) -> Fraction:
    return max((abs(a - b) for a, b in zip(p, q)), default=Fraction(0))


@dataclass(frozen=True)
class CompactBoxSet:
    dimension: int
    boxes: tuple[Box, ...]

    def __post_init__(self):
        if self.dimension < 1:
            raise DomainError("dimension must be at least 1")
        for b in self.boxes:
            if len(b.lo) != self.dimension:
                raise DomainError(f"box {b} does not have dimension {self.dimension}")

    @classmethod
    def of(cls, boxes: Iterable) -> CompactBoxSet:
        """From (lo, hi) corner pairs or bare points."""
        out = []
        for item in boxes:
            if isinstance(item, Box):
                out.append(item)
            elif len(item) == 2 and isinstance(item[0], (tuple, list)):
                out.append(Box(tuple(map(as_rational, item[0])), tuple(map(as_rational, item[1]))))
            else:
                out.append(Box.point(item))
        if not out:
            raise DomainError("empty box set")
        return cls(len(out[0].lo), tuple(out))

    @property
    def empty(self) -> bool:
        return not self.boxes

    def bbox(self) -> Box:
        if self.empty:
            raise DomainError("empty set has no bounding box")
        lo = tuple(min(b.lo[i] for b in self.boxes) for i in range(self.dimension))
        hi = tuple(max(b.hi[i] for b in self.boxes) for i in range(self.dimension))
        return Box(lo, hi)

    def contains(self, p: Point) -> bool:
        return any(b.contains(p) for b in self.boxes)

    def intersect_box(self, box: Box) -> CompactBoxSet:
        return CompactBoxSet(self.dimension, tuple(c for c in (b.intersect(box) for b in self.boxes) if c))

    def issubset(self, other: CompactBoxSet) -> bool:
        """Exact containment test.

        Axis breakpoints of both sets cut space into cells (single points and
        open gaps between them); membership in a closed box is constant on
        each cell, so one sample per cell decides it.
        """
        if self.empty:
            return True
        axes = []
        for i in range(self.dimension):
            cs = sorted({b.lo[i] for b in self.boxes + other.boxes} | {b.hi[i] for b in self.boxes + other.boxes})
            samples = list(cs) + [(u + v) / 2 for u, v in zip(cs, cs[1:])]
            axes.append(sorted(samples))
        for box in self.boxes:
            local = [[s for s in axes[i] if box.lo[i] <= s <= box.hi[i]] for i in range(self.dimension)]
            for p in itertools.product(*local):
                if not other.contains(p):
                    return False
        return True

    def same_set(self, other: CompactBoxSet) -> bool:
        return self.issubset(other) and other.issubset(self)

    def nearest(self, p: Point) -> Point:
        """Point of the set closest to ``p`` in the sup norm (first box wins ties)."""
        best = None
        for b in self.boxes:
            q = b.nearest(p)
            dist = sup_distance(p, q)
            if best is None or dist < best[0]:
                best = (dist, q)
        return best[1]


def union(sets: Iterable[CompactBoxSet]) -> CompactBoxSet:
    sets = list(sets)
    return CompactBoxSet(sets[0].dimension, tuple(b for s in sets for b in s.boxes))


@dataclass(frozen=True)
class Piece:
    level: int
    index: int  # position within the level
    parent: int  # index within level - 1; -1 for level 1
    center: Point
    radius: Fraction
    set: CompactBoxSet = field(repr=False)


@dataclass(frozen=True)
class NestedCover:
    K: CompactBoxSet
    widths: tuple[int, ...]  # n_1, n_2, ...: level k has 2**n_k children per parent
    levels: tuple[tuple[Piece, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def digit_budget(self) -> int:
        return sum(self.widths)

    def children(self, level: int, index: int) -> tuple[Piece, ...]:
        """Children (at ``level + 1``) of piece ``index`` at ``level``; level 0
        is K itself."""
        w = 2 ** self.widths[level]
        return self.levels[level][index * w:(index + 1) * w]

    def leaves(self) -> tuple[Piece, ...]:
        return self.levels[-1]


def _lattice(lo: Fraction, hi: Fraction, radius: Fraction) -> list[Fraction]:
    # centres lo, lo + 2r, ...; their balls tile [lo - r, ...] past hi
    step = 2 * radius
    count = max(0, math.ceil((hi - lo - radius) / step)) + 1
    return [lo + i * step for i in range(count)]


def _split(parent: CompactBoxSet, radius: Fraction) -> list[tuple[Point, CompactBoxSet]]:
    bb = parent.bbox()
    axes = [_lattice(a, b, radius) for a, b in zip(bb.lo, bb.hi)]
    out = []
    for c in itertools.product(*axes):
        piece = parent.intersect_box(ball(c, radius))
        if not piece.empty:
            out.append((c, piece))
    return out


def build_cover(K: CompactBoxSet, depth: int) -> NestedCover:
    """Nested cover of ``K`` to the given depth.

    Child lists are padded to a common power of two per level by repeating
    their last entry.
    """
    if depth < 1:
        raise DomainError("depth must be at least 1")
    if K.empty:
        raise DomainError("cannot cover an empty set")
    parents = [K]
    levels = []
    widths = []
    for k in range(1, depth + 1):
        radius = Fraction(1, 2 ** (k - 1))
        memo: dict[CompactBoxSet, list] = {}
        splits = []
        for p in parents:
            if p not in memo:
                memo[p] = _split(p, radius)
            splits.append(memo[p])
        width = max((len(s) - 1).bit_length() for s in splits)
        level = []
        for pi, s in enumerate(splits):
            s = s + [s[-1]] * (2**width - len(s))
            for c, piece in s:
                level.append(Piece(k, len(level), pi if k > 1 else -1, c, radius, piece))
        levels.append(tuple(level))
        widths.append(width)
        parents = [p.set for p in level]
    return NestedCover(K, tuple(widths), tuple(levels))


def cover_failures(cover: NestedCover) -> list[str]:
    """Structural checks; an empty list means the cover is sound."""
    bad = []
    parent_sets = [cover.K]
    for k, level in enumerate(cover.levels, start=1):
        w = 2 ** cover.widths[k - 1]
        if len(level) != w * len(parent_sets):
            bad.append(f"level {k}: {len(level)} pieces, expected {w} x {len(parent_sets)}")
            break
        for pi, parent in enumerate(parent_sets):
            kids = level[pi * w:(pi + 1) * w]
            for piece in kids:
                if piece.set.empty:
                    bad.append(f"level {k} piece {piece.index}: empty")
                if piece.radius != Fraction(1, 2 ** (k - 1)):
                    bad.append(f"level {k} piece {piece.index}: radius {piece.radius}")
                if not all(b.within(ball(piece.center, piece.radius)) for b in piece.set.boxes):
                    bad.append(f"level {k} piece {piece.index}: leaves its ball")
                if not piece.set.issubset(parent):
                    bad.append(f"level {k} piece {piece.index}: not inside its parent")
            if not parent.issubset(union(p.set for p in kids)):
                bad.append(f"level {k} parent {pi}: children do not cover it")
        parent_sets = [p.set for p in level]
    return bad


@dataclass(frozen=True)
class MapTrace:
    x: Fraction
    blocks: tuple[tuple[int, ...], ...]
    indices: tuple[int, ...]  # child index chosen at each level
    path: tuple[int, ...]  # piece index within each level
    point: Point


def _bits(x, count: int) -> list[int]:
    x = as_rational(x)
    e = zero_two_expansion(x)
    if e is None:
        raise DomainError(f"{x} is not in the Cantor set")
    return [d // 2 for d in truncate(e, count)]


def trace(cover: NestedCover, x) -> MapTrace:
    bits = _bits(x, cover.digit_budget)
    blocks, indices, path = [], [], []
    pos, node = 0, 0
    for w in cover.widths:
        block = tuple(bits[pos:pos + w])
        pos += w
        i = int("".join(map(str, block)) or "0", 2)
        node = node * 2**w + i
        blocks.append(block)
        indices.append(i)
        path.append(node)
    leaf = cover.levels[-1][node]
    return MapTrace(as_rational(x), tuple(blocks), tuple(indices), tuple(path), leaf.set.nearest(leaf.center))


def hausdorff_map(cover: NestedCover, x) -> Point:
    """Point of K reached by descending the cover along the digit blocks of
    ``x``: the point of the deepest piece nearest its centre."""
    return trace(cover, x).point


def leaf_preimage(cover: NestedCover, leaf: int) -> Fraction:
    """A Cantor point whose trace ends at the given leaf (trailing digits 0)."""
    bits: list[int] = []
    for w in reversed(cover.widths):
        i = leaf % 2**w
        leaf //= 2**w
        bits[:0] = [int(c) for c in format(i, f"0{w}b")] if w else []
    return value(DigitExpansion(3, tuple(2 * b for b in bits)))


@dataclass(frozen=True)
class ModulusReport:
    shared_digits: int
    shared_blocks: int
    distance: Fraction
    bound: Fraction | None  # None when no block is shared

    @property
    def ok(self) -> bool:
        return self.bound is None or self.distance < self.bound


def modulus_check(cover: NestedCover, x, x2) -> ModulusReport:
    """If the digit words of x and x2 agree on blocks 1..j then
    ||f(x) - f(x2)||_sup < 2**-(j-2)."""
    budget = cover.digit_budget
    a, b = _bits(x, budget), _bits(x2, budget)
    shared = next((i for i, (u, v) in enumerate(zip(a, b)) if u != v), budget)
    j, used = 0, 0
    for w in cover.widths:
        if used + w > shared:
            break
        used += w
        j += 1
    dist = sup_distance(hausdorff_map(cover, x), hausdorff_map(cover, x2))
    bound = Fraction(2) ** (2 - j) if j >= 1 else None
    return ModulusReport(shared, j, dist, bound)


_NUM = r"-?\d+(?:/\d+)?"


def parse_box_set(text: str) -> CompactBoxSet:
    """Line format::

        dimension 2
        0/1 0/1 : 1/1 1/1    # box, lower corner : upper corner
        1/2 3/4              # single point

    ``#`` starts a comment.
    """
    dim = None
    boxes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            m = re.fullmatch(r"dimension\s+(\d+)", line)
            if not m or int(m.group(1)) < 1:
                raise BoxSetParseError(lineno, "expected 'dimension <d>' with d >= 1")
            dim = int(m.group(1))
            continue
        halves = [h.split() for h in line.split(":")]
        if len(halves) > 2 or any(len(h) != dim for h in halves):
            raise BoxSetParseError(lineno, f"expected {dim} coordinates, or two groups of {dim} separated by ':'")
        if not all(re.fullmatch(_NUM, t) for h in halves for t in h):
            raise BoxSetParseError(lineno, "coordinates must be integers or 'p/q'")
        lo = tuple(Fraction(t) for t in halves[0])
        hi = tuple(Fraction(t) for t in halves[-1])
        try:
            boxes.append(Box(lo, hi))
        except DomainError as e:
            raise BoxSetParseError(lineno, str(e)) from None
    if dim is None:
        raise BoxSetParseError(0, "missing 'dimension' header")
    if not boxes:
        raise DomainError("box set is empty")
    return CompactBoxSet(dim, tuple(boxes))


def format_box_set(K: CompactBoxSet) -> str:
    lines = [f"dimension {K.dimension}"]
    for b in K.boxes:
        lo = " ".join(map(format_rational, b.lo))
        if b.lo == b.hi:
            lines.append(lo)
        else:
            lines.append(lo + " : " + " ".join(map(format_rational, b.hi)))
    return "\n".join(lines) + "\n"
