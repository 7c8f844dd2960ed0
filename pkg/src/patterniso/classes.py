"""
Pattern classes, materialised level by level.

A class is either ``Av(basis)`` (grown on demand by one-point extensions)
or a finite downset given by explicit levels.  Levels are kept as sorted
key arrays (see ``_levels``) and turned into sets of tuples only when asked.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from collections.abc import Iterable, Mapping
from pathlib import Path

import numpy as np
from scipy.optimize import bisect

from . import _levels
from .perm import (
    Perm, PermutationError, avoids, contains, format_perm, one_point_extensions,
    parse_perm, perm_sort_key, shadow,
)

__all__ = [
    "PatternClass", "LevelCapExceeded", "DEFAULT_LEVEL_CAP", "R", "R_GENERATORS",
    "antichain_reduce", "downset_of", "generate_levels", "basis_of",
    "growth_rate_bound", "load_class_file", "counts_csv",
]

log = logging.getLogger(__name__)

DEFAULT_LEVEL_CAP = 50_000_000


class LevelCapExceeded(RuntimeError):
    """A level grew past the configured member cap."""

    def __init__(self, length: int, size: int, cap: int):
        super().__init__(f"level {length} has {size} members, cap is {cap}")
        self.length, self.size, self.cap = length, size, cap


def antichain_reduce(basis: Iterable[Perm]) -> tuple[frozenset[Perm], frozenset[Perm]]:
    """Drop basis elements containing another; returns (antichain, dropped)."""
    items = sorted(set(basis), key=len)
    kept: list[Perm] = []
    dropped = set()
    for b in items:
        if any(len(k) < len(b) and contains(b, k) for k in kept):
            dropped.add(b)
        else:
            kept.append(b)
    return frozenset(kept), frozenset(dropped)


class PatternClass:
    """A downward closed set of permutations, stratified by length.

    ``PatternClass(basis)`` is ``Av(basis)``; ``PatternClass.from_levels``
    wraps an explicit finite class.  Levels of an avoidance class are built
    lazily up to whatever length is requested.
    """

    def __init__(self, basis: Iterable[Perm | str] = (), *, cap: int = DEFAULT_LEVEL_CAP,
                 threads: int = 1, method: str = "shadow"):
        raw = [parse_perm(b) for b in basis]
        self.basis, self.dropped = antichain_reduce(raw)
        if self.dropped:
            log.warning("basis not an antichain; dropped %s",
                        " ".join(format_perm(b) for b in sorted(self.dropped, key=perm_sort_key)))
        if max(map(len, self.basis), default=0) > _levels.MAX_LENGTH:
            raise PermutationError(f"basis elements longer than {_levels.MAX_LENGTH}")
        if method not in ("shadow", "direct"):
            raise ValueError(f"unknown generation method {method!r}")
        self.cap = cap
        self.threads = threads
        self.method = method
        self.finite = False
        self._keys: dict[int, np.ndarray] = {}
        self._sets: dict[int, frozenset[Perm]] = {}
        start = np.empty(0, dtype=np.uint64) if (1,) in self.basis else np.zeros(1, dtype=np.uint64)
        self._keys[1] = start

    @classmethod
    def from_levels(cls, levels: Mapping[int, Iterable[Perm]]) -> "PatternClass":
        """A finite class given by all of its members; must be downward closed."""
        self = cls.__new__(cls)
        self.basis = None
        self.dropped = frozenset()
        self.cap = DEFAULT_LEVEL_CAP
        self.threads = 1
        self.method = "explicit"
        self.finite = True
        self._sets = {n: frozenset(ps) for n, ps in levels.items() if ps}
        self._keys = {n: _levels.encode_perms(list(ps), n) for n, ps in self._sets.items()}
        for n, ps in self._sets.items():
            if n >= 2:
                below = self._sets.get(n - 1, frozenset())
                for p in ps:
                    if not shadow(p) <= below:
                        raise ValueError(f"{format_perm(p)} has a shadow outside the class")
        return self

    @property
    def depth(self) -> int:
        """Longest length materialised so far (for finite classes, the longest member)."""
        return max(self._keys) if self._keys else 0

    def _grow(self, up_to: int) -> None:
        if self.finite:
            return
        if up_to > _levels.MAX_LENGTH:
            raise PermutationError(f"levels beyond length {_levels.MAX_LENGTH} unsupported")
        while self.depth < up_to:
            n = self.depth
            m = n + 1
            if self.method == "direct":
                keys = self._direct_level(m)
            else:
                forbidden = _levels.encode_perms([b for b in self.basis if len(b) == m], m)
                keys = _levels.next_level(self._keys[n], n, forbidden, self.threads)
            if len(keys) > self.cap:
                raise LevelCapExceeded(m, len(keys), self.cap)
            self._keys[m] = keys

    def _direct_level(self, m: int) -> np.ndarray:
        # reference path: test each candidate against every short-enough basis element
        relevant = [b for b in self.basis if len(b) <= m]
        found = set()
        for p in self.level(m - 1):
            for q in one_point_extensions(p):
                if q not in found and avoids(q, relevant):
                    found.add(q)
        return _levels.encode_perms(sorted(found), m)

    def keys(self, n: int) -> np.ndarray:
        self._grow(n)
        return self._keys.get(n, np.empty(0, dtype=np.uint64))

    def level(self, n: int) -> frozenset[Perm]:
        if n not in self._sets:
            self._sets[n] = frozenset(_levels.decode_perms(self.keys(n), n))
        return self._sets[n]

    def count(self, n: int) -> int:
        return len(self.keys(n))

    def counts(self, up_to: int) -> list[int]:
        return [self.count(n) for n in range(1, up_to + 1)]

    def levels(self, up_to: int) -> dict[int, frozenset[Perm]]:
        return {n: self.level(n) for n in range(1, up_to + 1)}

    def members(self, up_to: int) -> list[Perm]:
        """All members of length <= up_to, sorted by length then lexicographically."""
        out = []
        for n in range(1, up_to + 1):
            out.extend(sorted(self.level(n)))
        return out

    def __contains__(self, p: Perm) -> bool:
        n = len(p)
        keys = self.keys(n)
        if len(keys) == 0:
            return False
        key = _levels.encode(np.array([[x - 1 for x in p]], dtype=np.uint8))[0]
        pos = np.searchsorted(keys, key)
        return bool(pos < len(keys) and keys[pos] == key)

    def __repr__(self):
        if self.finite:
            return f"PatternClass.from_levels(<{sum(map(len, self._sets.values()))} members>)"
        return f"PatternClass([{', '.join(repr(format_perm(b)) for b in sorted(self.basis, key=perm_sort_key))}])"


def downset_of(generators: Iterable[Perm | str]) -> PatternClass:
    """The closure of a finite set of permutations under taking patterns."""
    levels: dict[int, set[Perm]] = {}
    todo = [parse_perm(g) for g in generators]
    for g in todo:
        levels.setdefault(len(g), set()).add(g)
    top = max(levels, default=0)
    for n in range(top, 1, -1):
        for p in levels.get(n, ()):
            levels.setdefault(n - 1, set()).update(shadow(p))
    return PatternClass.from_levels(levels)


def generate_levels(cls: PatternClass, up_to: int) -> dict[int, frozenset[Perm]]:
    return cls.levels(up_to)


def basis_of(levels: Mapping[int, Iterable[Perm]] | PatternClass, through: int) -> frozenset[Perm]:
    """Minimal non-members of length <= ``through``.

    ``levels`` must be downward closed at least through ``through - 1``;
    a length missing from the mapping is an empty level.
    """
    if isinstance(levels, PatternClass):
        get = levels.level
    else:
        frozen = {n: frozenset(v) for n, v in levels.items()}
        def get(n):
            return frozen.get(n, frozenset())
    out = set()
    if through >= 1 and (1,) not in get(1):
        return frozenset({(1,)})
    for m in range(2, through + 1):
        below = get(m - 1)
        here = get(m)
        seen = set()
        for p in below:
            for q in one_point_extensions(p):
                if q in seen or q in here:
                    continue
                seen.add(q)
                if shadow(q) <= below:
                    out.add(q)
    return frozenset(out)


def growth_rate_bound(poly_coeffs, xtol: float = 1e-6) -> float:
    """Reciprocal of the smallest root of a polynomial on (0, 1).

    ``poly_coeffs[k]`` is the coefficient of x**k.  The first sign change on
    a fine grid is refined by bisection.
    """
    coeffs = np.asarray(poly_coeffs, dtype=float)
    f = np.polynomial.Polynomial(coeffs)
    grid = np.linspace(0.0, 1.0, 20001)[1:-1]
    vals = f(grid)
    change = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
    if len(change) == 0:
        raise ValueError("no sign change of the polynomial on (0, 1)")
    k = change[0]
    if vals[k] == 0:
        return 1.0 / grid[k]
    root = bisect(f, grid[k], grid[k + 1], xtol=xtol)
    return 1.0 / root


# R = Cl{2413, 3142}
R_GENERATORS: tuple[Perm, Perm] = ((2, 4, 1, 3), (3, 1, 4, 2))
R: PatternClass = downset_of(R_GENERATORS)


# ---------------------------------------------------------------------------
# file formats


def load_class_file(path: str | Path, **kwargs) -> PatternClass:
    """Read ``{"basis": ["132", "312"]}``."""
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or not isinstance(data.get("basis"), list):
        raise ValueError(f"{path}: expected an object with a 'basis' list")
    return PatternClass(data["basis"], **kwargs)


def counts_csv(counts: list[int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "count"])
    for n, c in enumerate(counts, 1):
        w.writerow([n, c])
    return buf.getvalue()
