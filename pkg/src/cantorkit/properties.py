"""Property suites behind ``cantorkit verify``.

Each suite runs exact checks at modest default depths and returns a
:class:`SuiteResult` listing every failing witness.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import cantor_function as cf
from . import cantor_set as cs
from . import hausdorff as hd
from . import space_filling as sf
from .expansions import DigitExpansion, expand, format_rational, value


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, witness: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(witness)


@dataclass(frozen=True)
class VerifyConfig:
    depth: int = 8
    grid: int = 243
    seed: int = 0


def _fr(x) -> str:
    return format_rational(Fraction(x))


def suite_iterate_tables(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("iterate-tables")
    F = Fraction
    tables = {
        1: [(0, F(1, 3)), (F(2, 3), 1)],
        2: [(0, F(1, 9)), (F(2, 9), F(1, 3)), (F(2, 3), F(7, 9)), (F(8, 9), 1)],
        3: [(0, F(1, 27)), (F(2, 27), F(1, 9)), (F(2, 9), F(7, 27)), (F(8, 27), F(1, 3)),
            (F(2, 3), F(19, 27)), (F(20, 27), F(7, 9)), (F(8, 9), F(25, 27)), (F(26, 27), 1)],
    }
    for n, table in tables.items():
        r.check(cs.cantor_iterate(n) == cs.IntervalSet.of(table), f"C_{n} differs from the table")
    for n in range(1, cfg.depth + 1):
        r.check(cs.cantor_iterate(n - 1).covers(cs.cantor_iterate(n)), f"C_{n} not nested in C_{n - 1}")
        r.check(cs.svc_iterate(3, n) == cs.cantor_iterate(n), f"SVC(3) step {n} differs from C_{n}")
    return r


def suite_measure(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("measure")
    for n in range(0, max(cfg.depth, 10) + 1):
        d = cs.measure_diagnostics(n)
        r.check(d.iterate_length == Fraction(2, 3) ** n, f"n={n}: length {_fr(d.iterate_length)}")
        r.check(d.iterate_length + d.removed_total == 1, f"n={n}: lengths do not sum to 1")
        if n <= cfg.depth:
            r.check(cs.cantor_iterate(n).total_length() == d.iterate_length, f"n={n}: iterate length mismatch")
    return r


def suite_dimension(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("dimension")
    for n in range(1, max(cfg.depth, 10) + 1):
        d = cs.dimension_estimate(n)
        r.check(d.count == 2**n and d.scale == 3**n, f"n={n}: box count pair wrong")
        r.check(round(d.quotient, 6) == 0.630930, f"n={n}: quotient {d.quotient!r}")
    return r


def suite_partition(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("partition")
    for n in range(1, min(cfg.depth, 8) + 1):
        pieces = [(a, b) for a, b in cs.cantor_iterate(n)]
        pieces += [(g.a, g.b) for k in range(1, n + 1) for g in cs.removed_intervals(k)]
        pieces.sort()
        r.check(pieces[0][0] == 0 and pieces[-1][1] == 1, f"n={n}: does not span [0,1]")
        r.check(all(p[1] == q[0] for p, q in zip(pieces, pieces[1:])), f"n={n}: pieces do not abut")
        r.check(sum(b - a for a, b in pieces) == 1, f"n={n}: total length != 1")
        r.check(len(cs.removed_intervals(n)) == 2 ** (n - 1), f"n={n}: wrong number of removed intervals")
    return r


def suite_membership(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("membership")
    n = min(cfg.depth, 6)
    for e in cs.cantor_iterate(n).endpoints():
        r.check(cs.in_cantor(e), f"endpoint {_fr(e)} reported outside C")
    for k in range(1, n + 1):
        for g in cs.removed_intervals(k):
            for t in range(1, 6):
                q = g.a + (g.b - g.a) * Fraction(t, 6)
                m = cs.membership(q)
                r.check(isinstance(m, cs.RemovedAt) and m.level <= k and q in m.interval,
                        f"{_fr(q)} inside level-{k} gap misclassified")
    return r


def suite_round_trip(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("round-trip")
    for q in range(1, 61):
        for p in range(0, q + 1):
            x = Fraction(p, q)
            for b in (2, 3):
                e = expand(x, b)
                r.check(value(e) == x, f"{_fr(x)} base {b}")
                if 0 < x < 1:
                    r.check(e.tail != (), f"{_fr(x)} base {b}: terminating canonical form")
    return r


def suite_cantor_values(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("cantor-values")
    F = Fraction
    for x, y in [(0, 0), (1, 1), (F(1, 3), F(1, 2)), (F(2, 3), F(1, 2)), (F(1, 4), F(1, 3)),
                 (F(1, 2), F(1, 2)), (F(5, 27), F(1, 4))]:
        got = cf.F(x)
        r.check(got == y, f"F({_fr(x)}) = {_fr(got)}, expected {_fr(y)}")
    f2, f3 = cf.polygonal(2), cf.polygonal(3)
    for t in range(0, 10):
        x = F(1, 9) + F(t, 81)
        r.check(f2(x) == F(1, 4), f"F_2({_fr(x)}) != 1/4")
    r.check(f3(F(1, 27)) == F(1, 8), "F_3(1/27) != 1/8")
    return r


def suite_convergence(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("convergence")
    depth = min(cfg.depth, 10)
    grid = 3**depth
    for m in range(1, depth + 1):
        for n in range(m + 1, depth + 1):
            g = cf.approximation_gap(m, n, grid)
            r.check(g.within_bound, f"|F_{m} - F_{n}| = {_fr(g.max_gap)} at {_fr(g.argmax)}")
        if m < depth:
            g = cf.consecutive_gap(m, grid)
            r.check(g.within_bound, f"|F_{m + 1} - F_{m}| = {_fr(g.max_gap)} at {_fr(g.argmax)}")
    return r


def suite_monotonicity(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("monotonicity")
    prev = None
    for k in range(cfg.grid + 1):
        x = Fraction(k, cfg.grid)
        y = cf.F(x)
        if prev is not None:
            r.check(prev[1] <= y, f"F({_fr(prev[0])}) > F({_fr(x)})")
        prev = (x, y)
    return r


def suite_gap_constancy(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("gap-constancy")
    for n in range(1, min(cfg.depth, 8) + 1):
        for g in cs.removed_intervals(n):
            fa, fb = cf.F(g.a), cf.F(g.b)
            r.check(fa == fb, f"F({_fr(g.a)}) != F({_fr(g.b)})")
            for t in range(1, 6):
                q = g.a + (g.b - g.a) * Fraction(t, 6)
                r.check(cf.F(q) == fa, f"F not constant at {_fr(q)}")
    return r


def suite_quotient_growth(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("quotient-growth")
    depth = max(cfg.depth, 12)
    qs = [cf.difference_quotient(0, n).quotient for n in range(depth + 1)]
    for n, q in enumerate(qs):
        r.check(q == Fraction(3, 4) * Fraction(9, 4) ** n, f"n={n}: quotient {_fr(q)}")
    ratios = {qs[n] / qs[n - 1] for n in range(1, len(qs))}
    r.check(ratios == {Fraction(9, 4)}, f"consecutive ratios {sorted(map(_fr, ratios))}")
    r.notes.append(f"F: consecutive quotient ratio {', '.join(map(_fr, sorted(ratios)))} "
                   "(the commonly quoted growth (3/4)(9/2)^n does not hold for F; quotients still diverge)")
    phi = [sf.component_difference_quotient(0, n) for n in range(6)]
    r.check({phi[n] / phi[n - 1] for n in range(1, 6)} == {Fraction(9, 2)}, "first-coordinate ratio != 9/2")
    r.notes.append("F2 first coordinate: consecutive quotient ratio 9/2, i.e. (3/4)(9/2)^n")
    return r


def suite_curve(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("curve")
    for i in range(9):
        for j in range(9):
            p = (Fraction(i, 8), Fraction(j, 8))
            x = sf.preimage2(p)
            r.check(cs.in_cantor(x) and sf.F2(x) == p, f"F2(preimage2({_fr(p[0])}, {_fr(p[1])})) != p")
    cells = set()
    for k in range(82):
        pt = sf.F2_extended(Fraction(k, 81))
        for a in range(4):
            for b in range(4):
                if Fraction(a, 4) <= pt[0] <= Fraction(a + 1, 4) and Fraction(b, 4) <= pt[1] <= Fraction(b + 1, 4):
                    cells.add((a, b))
    r.check(len(cells) == 16, f"only {len(cells)} of 16 cells of side 1/4 met")
    r.check(sf.F2_extended(Fraction(1, 2)) == (Fraction(1, 2), Fraction(1, 2)), "F2_extended(1/2)")
    rng = random.Random(cfg.seed)
    for _ in range(50):
        n = rng.randint(1, 8)
        x, y = _sharing_pair(rng, 2 * n)
        fx, fy = sf.F2(x), sf.F2(y)
        r.check(all(abs(u - v) <= Fraction(1, 2**n) for u, v in zip(fx, fy)),
                f"{_fr(x)}, {_fr(y)} share {2 * n} digits but images differ by more than 2^-{n}")
    return r


def _sharing_pair(rng: random.Random, shared: int) -> tuple[Fraction, Fraction]:
    """Two Cantor points whose {0,2} ternary digits agree exactly on the
    first ``shared`` positions."""
    head = tuple(rng.choice((0, 2)) for _ in range(shared))
    def tail(first: int):
        return (first,) + tuple(rng.choice((0, 2)) for _ in range(rng.randint(0, 4)))
    d = rng.choice((0, 2))
    a = DigitExpansion(3, head + tail(d), tuple(rng.choice((0, 2)) for _ in range(rng.randint(1, 4))))
    b = DigitExpansion(3, head + tail(2 - d), tuple(rng.choice((0, 2)) for _ in range(rng.randint(1, 4))))
    return value(a), value(b)


def suite_hausdorff(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("hausdorff")
    depth = min(cfg.depth, 5)
    square = hd.CompactBoxSet.of([((0, 0), (1, 1))])
    cover = hd.build_cover(square, depth)
    for msg in hd.cover_failures(cover):
        r.check(False, msg)
    for i in range(len(cover.leaves())):
        t = hd.trace(cover, hd.leaf_preimage(cover, i))
        r.check(t.path[-1] == i and square.contains(t.point), f"leaf {i} not reached")
    rng = random.Random(cfg.seed)
    for _ in range(50):
        x, y = _sharing_pair(rng, rng.randint(0, cover.digit_budget))
        m = hd.modulus_check(cover, x, y)
        r.check(m.ok, f"{_fr(x)}, {_fr(y)}: distance {_fr(m.distance)} vs bound {m.bound}")
    point = hd.CompactBoxSet.of([(Fraction(1, 3), Fraction(2, 5))])
    pc = hd.build_cover(point, depth)
    for k in range(20):
        x = sf.preimage2((Fraction(k, 19), Fraction(19 - k, 19)))
        r.check(hd.hausdorff_map(pc, x) == (Fraction(1, 3), Fraction(2, 5)), f"singleton map at {_fr(x)}")
    return r


def suite_svc(cfg: VerifyConfig) -> SuiteResult:
    r = SuiteResult("svc")
    for n in range(0, max(cfg.depth, 10) + 1):
        s = cs.svc_iterate(4, n)
        expected = 1 - sum((Fraction(2 ** (k - 1), 4**k) for k in range(1, n + 1)), Fraction(0))
        r.check(len(s) == 2**n, f"SVC(4) step {n}: {len(s)} pieces")
        r.check(s.total_length() == expected, f"SVC(4) step {n}: length {_fr(s.total_length())}")
        r.check(expected == Fraction(1, 2) + Fraction(1, 2) ** (n + 1), f"SVC(4) step {n}: closed form")
    return r


SUITES: dict[str, Callable[[VerifyConfig], SuiteResult]] = {
    "iterate-tables": suite_iterate_tables,
    "measure": suite_measure,
    "dimension": suite_dimension,
    "partition": suite_partition,
    "membership": suite_membership,
    "round-trip": suite_round_trip,
    "cantor-values": suite_cantor_values,
    "convergence": suite_convergence,
    "monotonicity": suite_monotonicity,
    "gap-constancy": suite_gap_constancy,
    "quotient-growth": suite_quotient_growth,
    "curve": suite_curve,
    "hausdorff": suite_hausdorff,
    "svc": suite_svc,
}


def run(selection: list[str] | None, cfg: VerifyConfig) -> list[SuiteResult]:
    names = selection or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(", ".join(unknown))
    return [SUITES[n](cfg) for n in names]


def report(results: list[SuiteResult]) -> str:
    lines = []
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        lines.append(f"{status} {res.name}: {res.checks - len(res.failures)}/{res.checks} checks")
        for w in res.failures:
            lines.append(f"  failed: {w}")
        for note in res.notes:
            lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"
