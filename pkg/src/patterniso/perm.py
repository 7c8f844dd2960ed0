"""
Permutations in one-line notation and the pattern containment order.

A permutation of length n is a plain tuple holding each of 1..n exactly
once, so equality and hashing are by value.  The empty permutation is not
an element of the poset and is rejected wherever a permutation is parsed.

>>> p = parse_perm("2413")
>>> format_perms(shadow(p))
'132 213 231 312'
>>> format_perm(apply_symmetry(p, "r"))
'3142'
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

__all__ = [
    "Perm", "PermutationError", "parse_perm", "format_perm", "format_perms",
    "perm_sort_key", "is_permutation", "normalize", "delete_point",
    "contains", "avoids", "shadow", "one_point_extensions",
    "reverse", "complement", "inverse", "Symmetry", "SYMMETRIES",
    "apply_symmetry", "direct_sum", "skew_sum", "inflate", "intervals",
    "is_simple", "sum_decompose", "skew_decompose",
    "is_increasing", "is_decreasing", "increasing", "decreasing",
    "WEDGES", "WEDGE_BASES", "wedge_membership", "all_perms",
]

Perm = tuple[int, ...]


class PermutationError(ValueError):
    """Malformed permutation text or an argument outside an operation's domain."""


# ---------------------------------------------------------------------------
# text format


def is_permutation(word: Sequence[int]) -> bool:
    return len(word) > 0 and sorted(word) == list(range(1, len(word) + 1))


def parse_perm(text: str | Sequence[int]) -> Perm:
    """Parse ``"2413"`` or ``"10 2 1 ..."`` (space or comma separated).

    Concatenated digits are only unambiguous for n <= 9; longer permutations
    must be separated.  Sequences of ints are validated and returned as a tuple.
    """
    if not isinstance(text, str):
        word = tuple(int(x) for x in text)
        if not is_permutation(word):
            raise PermutationError(f"not a permutation of 1..{len(word)}: {list(word)}")
        return word
    s = text.strip()
    if not s:
        raise PermutationError("empty permutation text")
    if re.search(r"[\s,]", s):
        tokens = [t for t in re.split(r"[\s,]+", s) if t]
    else:
        tokens = list(s)
    word = []
    pos = 0
    for tok in tokens:
        at = s.find(tok, pos)
        pos = at + len(tok)
        if not tok.isdigit():
            raise PermutationError(f"bad character {tok!r} at position {at + 1} in {s!r}")
        word.append(int(tok))
    n = len(word)
    seen = set()
    for k, v in enumerate(word):
        if not 1 <= v <= n or v in seen:
            raise PermutationError(
                f"entry {v} at index {k + 1} of {s!r} breaks 1..{n} permutation"
            )
        seen.add(v)
    return tuple(word)


def format_perm(p: Sequence[int]) -> str:
    if len(p) <= 9:
        return "".join(map(str, p))
    return " ".join(map(str, p))


def perm_sort_key(p: Perm) -> tuple[int, str]:
    """Length first, then lexicographic order of the text form."""
    return (len(p), format_perm(p))


def format_perms(perms: Iterable[Perm]) -> str:
    return " ".join(format_perm(p) for p in sorted(perms, key=perm_sort_key))


def all_perms(n: int) -> list[Perm]:
    from itertools import permutations
    return list(permutations(range(1, n + 1)))


# ---------------------------------------------------------------------------
# order


def normalize(seq: Sequence[int]) -> Perm:
    """The permutation order-isomorphic to a sequence of distinct numbers."""
    ranks = {v: k for k, v in enumerate(sorted(seq), 1)}
    return tuple(ranks[v] for v in seq)


def delete_point(p: Perm, index: int) -> Perm:
    v = p[index]
    return tuple(x - (x > v) for k, x in enumerate(p) if k != index)


def contains(haystack: Perm, needle: Perm) -> bool:
    """True iff some subsequence of ``haystack`` is order-isomorphic to ``needle``."""
    n, k = len(haystack), len(needle)
    if k > n:
        return False
    if k == n:
        return tuple(haystack) == tuple(needle)
    needle = tuple(needle)
    for idx in combinations(range(n), k):
        if normalize([haystack[j] for j in idx]) == needle:
            return True
    return False


def avoids(p: Perm, basis: Iterable[Perm]) -> bool:
    return not any(contains(p, b) for b in basis)


@lru_cache(maxsize=1 << 18)
def shadow(p: Perm) -> frozenset[Perm]:
    """Lower covers of ``p``: every pattern obtained by deleting one point."""
    if len(p) < 2:
        raise PermutationError("the shadow of a length-1 permutation is empty")
    return frozenset(delete_point(p, k) for k in range(len(p)))


@lru_cache(maxsize=1 << 16)
def one_point_extensions(p: Perm) -> frozenset[Perm]:
    """All permutations of length n+1 having ``p`` in their shadow."""
    n = len(p)
    out = set()
    for v in range(1, n + 2):
        lifted = [x + (x >= v) for x in p]
        for j in range(n + 1):
            out.add(tuple(lifted[:j] + [v] + lifted[j:]))
    return frozenset(out)


# ---------------------------------------------------------------------------
# symmetries


def reverse(p: Perm) -> Perm:
    return tuple(reversed(p))


def complement(p: Perm) -> Perm:
    n = len(p)
    return tuple(n + 1 - x for x in p)


def inverse(p: Perm) -> Perm:
    q = [0] * len(p)
    for k, v in enumerate(p, 1):
        q[v - 1] = k
    return tuple(q)


_GENERATORS = {"r": reverse, "c": complement, "i": inverse}

# Any point with trivial stabiliser under the dihedral action identifies a
# symmetry by its image; 1342 has an orbit of size 8.
_PROBE: Perm = (1, 3, 4, 2)


def _act(word: str, p: Perm) -> Perm:
    for ch in word:
        p = _GENERATORS[ch](p)
    return p


def _build_table():
    # shortlex BFS over generator words gives each element its canonical name
    names = {_PROBE: ""}
    frontier = [""]
    while frontier:
        nxt = []
        for w in frontier:
            for g in "rci":
                img = _act(w + g, _PROBE)
                if img not in names:
                    names[img] = w + g
                    nxt.append(w + g)
        frontier = nxt
    words = sorted(names.values(), key=lambda w: (len(w), w))
    mult = {}
    for a in words:
        for b in words:
            mult[a, b] = names[_act(a + b, _PROBE)]
    return words, names, mult


_WORDS, _BY_IMAGE, _MULT = _build_table()


class Symmetry:
    """One of the eight symmetries of the square acting on permutations.

    Composition is left to right: ``(s * t).apply(p)`` applies ``s`` first.
    Instances are interned, one per group element, named by the shortlex
    least word in ``r``, ``c``, ``i``.
    """

    __slots__ = ("word",)
    _instances: dict[str, "Symmetry"] = {}

    def __new__(cls, word: str = ""):
        bad = set(word) - set("rci")
        if bad:
            raise PermutationError(f"symmetry words use r, c, i only; got {word!r}")
        canon = _BY_IMAGE[_act(word, _PROBE)]
        inst = cls._instances.get(canon)
        if inst is None:
            inst = super().__new__(cls)
            object.__setattr__(inst, "word", canon)
            cls._instances[canon] = inst
        return inst

    def __setattr__(self, name, value):
        raise AttributeError("Symmetry is immutable")

    def __reduce__(self):
        return (Symmetry, (self.word,))

    def __mul__(self, other: "Symmetry") -> "Symmetry":
        return Symmetry(_MULT[self.word, other.word])

    def __invert__(self) -> "Symmetry":
        for w in _WORDS:
            if _MULT[self.word, w] == "":
                return Symmetry(w)
        raise AssertionError("group table has no inverse")

    def apply(self, p: Perm) -> Perm:
        return _act(self.word, p)

    def __call__(self, p: Perm) -> Perm:
        return self.apply(p)

    def __repr__(self):
        return f"Symmetry({self.word!r})"

    def __str__(self):
        return self.word or "id"


SYMMETRIES: tuple[Symmetry, ...] = tuple(Symmetry(w) for w in _WORDS)


def apply_symmetry(p: Perm, s: Symmetry | str) -> Perm:
    if isinstance(s, str):
        s = Symmetry(s)
    return s.apply(p)


# ---------------------------------------------------------------------------
# sums, inflation, intervals


def direct_sum(a: Perm, b: Perm) -> Perm:
    k = len(a)
    return tuple(a) + tuple(x + k for x in b)


def skew_sum(a: Perm, b: Perm) -> Perm:
    m = len(b)
    return tuple(x + m for x in a) + tuple(b)


def inflate(skeleton: Perm, parts: Sequence[Perm]) -> Perm:
    """``skeleton[parts[0], ..., parts[-1]]``: each point becomes an interval."""
    if len(skeleton) != len(parts):
        raise PermutationError(
            f"skeleton of length {len(skeleton)} needs {len(skeleton)} parts, got {len(parts)}"
        )
    base = {}
    acc = 0
    for k in sorted(range(len(skeleton)), key=lambda k: skeleton[k]):
        base[k] = acc
        acc += len(parts[k])
    out = []
    for k, part in enumerate(parts):
        out.extend(x + base[k] for x in part)
    return tuple(out)


def intervals(p: Perm) -> list[tuple[int, int]]:
    """Half-open position ranges ``(i, j)`` with ``p[i:j]`` an interval, 2 <= j-i < n."""
    n = len(p)
    out = []
    for i in range(n):
        lo = hi = p[i]
        for j in range(i + 1, n):
            lo = min(lo, p[j])
            hi = max(hi, p[j])
            if hi - lo == j - i and j - i + 1 < n:
                out.append((i, j + 1))
    return out


def is_simple(p: Perm) -> bool:
    """Only singletons and ``p`` itself are intervals (so 1, 12, 21 count)."""
    n = len(p)
    for i in range(n):
        lo = hi = p[i]
        for j in range(i + 1, n):
            lo = min(lo, p[j])
            hi = max(hi, p[j])
            if hi - lo == j - i and j - i + 1 < n:
                return False
    return True


def sum_decompose(p: Perm) -> tuple[Perm, Perm] | None:
    """Split ``p = a (+) b`` with ``a`` sum-indecomposable, or None."""
    hi = 0
    for k in range(len(p) - 1):
        hi = max(hi, p[k])
        if hi == k + 1:
            return tuple(p[: k + 1]), tuple(x - k - 1 for x in p[k + 1:])
    return None


def skew_decompose(p: Perm) -> tuple[Perm, Perm] | None:
    """Split ``p = a (-) b`` with ``a`` skew-indecomposable, or None."""
    n = len(p)
    lo = n + 1
    for k in range(n - 1):
        lo = min(lo, p[k])
        if lo == n - k:
            m = n - k - 1
            return tuple(x - m for x in p[: k + 1]), tuple(p[k + 1:])
    return None


# ---------------------------------------------------------------------------
# monotone and wedge classes


def is_increasing(p: Perm) -> bool:
    return all(p[k] < p[k + 1] for k in range(len(p) - 1))


def is_decreasing(p: Perm) -> bool:
    return all(p[k] > p[k + 1] for k in range(len(p) - 1))


def increasing(n: int) -> Perm:
    return tuple(range(1, n + 1))


def decreasing(n: int) -> Perm:
    return tuple(range(n, 0, -1))


WEDGES = ("V", "V90", "V180", "V270")

# V270 = Av(132, 312); the other three are images of it under these symmetries.
WEDGE_SYMMETRY = {"V270": Symmetry(""), "V90": Symmetry("r"),
                  "V": Symmetry("i"), "V180": Symmetry("ic")}

WEDGE_BASES: dict[str, frozenset[Perm]] = {
    name: frozenset(s.apply(b) for b in [(1, 3, 2), (3, 1, 2)])
    for name, s in WEDGE_SYMMETRY.items()
}


def _in_v270(p: Perm) -> bool:
    # each later entry is a new maximum or a new minimum
    lo = hi = p[0]
    for x in p[1:]:
        if x > hi:
            hi = x
        elif x < lo:
            lo = x
        else:
            return False
    return True


def wedge_membership(p: Perm, orientation: str) -> bool:
    """Membership in one of the four wedge classes ``V``, ``V90``, ``V180``, ``V270``."""
    try:
        s = WEDGE_SYMMETRY[orientation]
    except KeyError:
        raise PermutationError(f"unknown wedge orientation {orientation!r}") from None
    # p in V270^s  iff  p^(s^-1) in V270
    return _in_v270((~s).apply(p))
