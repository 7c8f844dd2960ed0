"""Named verification suites, shared by the ``verify`` subcommand and the tests."""

from __future__ import annotations

import json
import time
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .classes import PatternClass, growth_rate_bound
from .constructions import (
    CLASS_MAPS, PRINTED_SERIES, T_SIMPLES, TABLE2, aut_group_A3, exotic, map_f6,
    omega_decode, omega_encode, series_formula,
)
from .engine import TABLE1, SeedGroup, classify_seeds, run_extension, run_group_extension
from .perm import (
    Perm, Symmetry, all_perms, decreasing, direct_sum, format_perm, format_perms,
    increasing, is_simple, parse_perm, shadow, skew_sum,
)

__all__ = ["Check", "VerificationReport", "SUITES", "run_suite", "load_bases",
           "expected_smith_pairs", "aut_R_class", "GROWTH_POLY"]

GROWTH_POLY = (1, -6, 1, 0, -12, -20, 8, 0, 4, 16, 16)


@dataclass
class Check:
    name: str
    passed: bool
    expected: object = None
    actual: object = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "status": "pass" if self.passed else "fail",
                "expected": self.expected, "actual": self.actual,
                "seconds": round(self.seconds, 3)}


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_json(self) -> dict:
        return {"schema": 1, "suite": self.suite,
                "status": "pass" if self.passed else "fail",
                "checks": [c.to_json() for c in self.checks]}

    def lines(self) -> list[str]:
        out = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}  ({c.seconds:.2f}s)" for c in self.checks]
        out.append(f"{self.suite}: {'pass' if self.passed else 'fail'}")
        return out


def _timed(name: str, fn: Callable[[], tuple[bool, object, object]]) -> Check:
    t = time.perf_counter()
    try:
        ok, expected, actual = fn()
    except (ValueError, AssertionError) as exc:
        # a map applied outside its class, or an engine invariant tripping
        ok, expected, actual = False, None, f"{type(exc).__name__}: {exc}"
    return Check(name, bool(ok), expected, actual, time.perf_counter() - t)


def load_bases(path: str | Path | None) -> dict[int, frozenset[Perm]]:
    """Table-2 bases, optionally overridden by ``{"2": ["23514", ...], ...}``."""
    bases = dict(TABLE2)
    if path is None:
        return bases
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected an object mapping class ids to bases")
    for key, basis in data.items():
        k = int(str(key).lstrip("Aa"))
        if k not in bases:
            raise ValueError(f"{path}: unknown class id {key!r}")
        bases[k] = frozenset(parse_perm(b) for b in basis)
    return bases


# ---------------------------------------------------------------------------
# smith


def expected_smith_pairs(n: int) -> set[frozenset[Perm]]:
    if n == 2:
        return {frozenset({(1, 2), (2, 1)})}
    if n == 3:
        four = [(1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2)]
        return {frozenset({a, b}) for a in four for b in four if a < b}
    if n == 4:
        return {frozenset({(2, 4, 1, 3), (3, 1, 4, 2)})}
    return set()


def shadow_collisions(n: int) -> set[frozenset[Perm]]:
    groups = defaultdict(list)
    for p in all_perms(n):
        groups[shadow(p)].append(p)
    out = set()
    for ps in groups.values():
        for a in ps:
            for b in ps:
                if a < b:
                    out.add(frozenset({a, b}))
    return out


def _smith(max_n: int = 7) -> list[Check]:
    def fmt(pairs):
        return sorted(format_perms(p) for p in pairs)
    checks = []
    for n in range(2, max_n + 1):
        def run(n=n):
            got = shadow_collisions(n)
            want = expected_smith_pairs(n)
            return got == want, fmt(want), fmt(got)
        checks.append(_timed(f"smith: shadow collisions at length {n}", run))
    return checks


# ---------------------------------------------------------------------------
# tables


def _tables(bases, max_length: int = 7) -> list[Check]:
    checks = []
    for i in range(1, 7):
        def run(i=i):
            iso = run_extension(TABLE1[f"h{i}"], max_length)
            got = iso.basis_elements()
            want = frozenset(b for b in bases[i] if len(b) <= max_length)
            return got == want, format_perms(want), format_perms(got)
        checks.append(_timed(f"tables: basis of A{i} from h{i}", run))
    return checks


# ---------------------------------------------------------------------------
# maps


def _maps(bases, agree_to: int = 7, shadows_to: int = 8) -> list[Check]:
    checks = []
    for i in range(2, 7):
        cmap = CLASS_MAPS[f"f{i}"]
        cls = PatternClass(bases[i])

        def agree(i=i, cmap=cmap, cls=cls):
            iso = run_extension(TABLE1[f"h{i}"], agree_to)
            bad = []
            for n in range(1, agree_to + 1):
                if cls.level(n) != iso.domain[n]:
                    bad.append(f"domain differs at length {n}")
                    continue
                bad += [format_perm(p) for p in sorted(cls.level(n)) if cmap(p) != iso.image[p]]
            return not bad, [], bad[:20]

        def commutes(cmap=cmap, cls=cls):
            bad = [format_perm(p) for p in cls.members(shadows_to)
                   if len(p) >= 2 and {cmap(q) for q in shadow(p)} != shadow(cmap(p))]
            return not bad, [], bad[:20]

        checks.append(_timed(f"maps: f{i} equals engine table through length {agree_to}", agree))
        checks.append(_timed(f"maps: f{i} commutes with shadows through length {shadows_to}", commutes))

    v270 = PatternClass([(1, 3, 2), (3, 1, 2)])

    def xi():
        p = (4, 5, 3, 6, 7, 8, 2, 1)
        ok = format_perm(exotic(p)) == "43256718" and omega_encode(p) == "abaaabb"
        ok &= all(exotic(exotic(q)) == q for q in v270.members(9))
        ok &= all(omega_decode(omega_encode(q)) == q for q in v270.members(9))
        ok &= all({exotic(s) for s in shadow(q)} == shadow(exotic(q))
                  for q in v270.members(8) if len(q) >= 2)
        return ok, "involutive automorphism, 45367821 -> 43256718", format_perm(exotic(p))

    def f6_square():
        rc = Symmetry("rc")
        bad = [format_perm(p) for p in PatternClass(bases[6]).members(8)
               if map_f6(map_f6(p)) != rc.apply(p)]
        return not bad, [], bad[:20]

    def a3_group():
        g = aut_group_A3(7, PatternClass(bases[3]).members(7))
        comm = all({p: b[a[p]] for p in a} == {p: a[b[p]] for p in a} for a in g for b in g)
        sq = all(all(t[t[p]] == p for p in t) for t in g)
        return len(g) == 8 and comm and sq, 8, len(g)

    checks.append(_timed("maps: exotic map", xi))
    checks.append(_timed("maps: f6 squared is rc", f6_square))
    checks.append(_timed("maps: <c, f2, f3> on A3 is elementary abelian of order 8", a3_group))
    return checks


# ---------------------------------------------------------------------------
# series


def _series(bases) -> list[Check]:
    wanted = {2: PRINTED_SERIES[2][:10], 3: PRINTED_SERIES[3][:10],
              5: PRINTED_SERIES[5][:8], 6: [series_formula(6, n) for n in range(1, 9)]}
    checks = []
    for i, want in wanted.items():
        def run(i=i, want=want):
            got = PatternClass(bases[i]).counts(len(want))
            return got == list(want), list(want), got
        checks.append(_timed(f"series: A{i} counts through length {len(want)}", run))

    def closed():
        got = [PatternClass(bases[3]).count(n) for n in range(4, 11)]
        want = [2 + (4 * n - 7) * 2 ** (n - 3) for n in range(4, 11)]
        return got == want, want, got
    checks.append(_timed("series: A3 closed form for 4 <= n <= 10", closed))

    def growth():
        g = growth_rate_bound(GROWTH_POLY)
        return abs(g - 5.90425) <= 1e-4, 5.90425, g
    checks.append(_timed("series: growth-rate bound", growth))

    def simples():
        cls = PatternClass(bases[2])
        got = {p for n in range(3, 10) for p in cls.level(n) if is_simple(p)}
        return got == set(T_SIMPLES), format_perms(T_SIMPLES), format_perms(got)
    checks.append(_timed("series: simple members of A2 through length 9", simples))
    return checks


# ---------------------------------------------------------------------------
# group


def aut_R_class(max_length: int) -> dict[int, frozenset[Perm]]:
    """R together with sums and skew sums of an increasing and a decreasing permutation."""
    from .classes import R
    levels = {n: set(R.level(n)) for n in range(1, 5)}
    for n in range(2, max_length + 1):
        lvl = levels.setdefault(n, set())
        for k in range(1, n):
            for a, b in ((increasing(k), decreasing(n - k)), (decreasing(k), increasing(n - k))):
                lvl.add(direct_sum(a, b))
                lvl.add(skew_sum(a, b))
    return {n: frozenset(v) for n, v in levels.items() if n <= max_length}


def _group(max_length: int = 9) -> list[Check]:
    def orbits():
        found = classify_seeds()
        reps = sorted(o.representative for o in found if o.representative)
        ok = len(found) == 6 and reps == [f"h{i}" for i in range(1, 7)] and sum(map(len, found)) == 96
        return ok, 6, len(found)

    def aut_class():
        ext = run_group_extension(SeedGroup.full(), max_length)
        want_counts = [1, 2, 6, 12] + [4 * n - 6 for n in range(5, max_length + 1)]
        want = aut_R_class(max_length)
        same = all(ext.levels[n] == want[n] for n in range(1, max_length + 1))
        return same and ext.counts() == want_counts, want_counts, ext.counts()

    return [_timed("group: six orbits of seeds", orbits),
            _timed(f"group: Aut(R) class through length {max_length}", aut_class)]


SUITES = ("smith", "tables", "maps", "series", "group", "all")


def run_suite(suite: str, bases_file: str | Path | None = None) -> VerificationReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    bases = load_bases(bases_file)
    report = VerificationReport(suite)
    parts = SUITES[:-1] if suite == "all" else (suite,)
    for part in parts:
        if part == "smith":
            report.checks += _smith()
        elif part == "tables":
            report.checks += _tables(bases)
        elif part == "maps":
            report.checks += _maps(bases)
        elif part == "series":
            report.checks += _series(bases)
        elif part == "group":
            report.checks += _group()
    return report
