"""
Explicit maximal isomorphisms and the classes they live on.

The wedge class V270 = Av(132, 312) is coded by a/b words (each entry
after the first is above or below the first entry).  Reversing the word
gives the exotic map, an automorphism of V270 that no symmetry induces.
The five non-trivial maps ``f2``..``f6`` are built from it together with
sum/skew-sum recursion and the eight symmetries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from .perm import (
    WEDGES, Perm, PermutationError, Symmetry, direct_sum, format_perm, inflate,
    is_decreasing, is_increasing, normalize, parse_perm, perm_sort_key, skew_decompose,
    skew_sum, sum_decompose, wedge_membership,
)

__all__ = [
    "NotAMember", "omega_encode", "omega_decode", "exotic",
    "TABLE2", "TABLE2_PRINTED", "TABLE2_CORRECTIONS", "T_SIMPLES", "U_ATOMS",
    "in_A2", "in_A3", "in_A5", "in_A6", "decompose_A3",
    "map_f1", "map_f2", "map_f3", "map_f4", "map_f5", "map_f6",
    "ClassMap", "CLASS_MAPS", "PRINTED_SERIES", "series_formula", "aut_group_A3", "map_table_json",
    "wedge_images",
]


class NotAMember(PermutationError):
    """A map was applied outside the class it is defined on."""


def _p(text: str) -> Perm:
    return parse_perm(text)


def _ps(text: str) -> frozenset[Perm]:
    return frozenset(_p(t) for t in text.split())


# ---------------------------------------------------------------------------
# a/b coding of V270 and the exotic map


def omega_encode(p: Perm) -> str:
    if not wedge_membership(p, "V270"):
        raise NotAMember(f"{format_perm(p)} is not in Av(132, 312)")
    first = p[0]
    return "".join("a" if x > first else "b" for x in p[1:])


def omega_decode(word: str) -> Perm:
    if set(word) - {"a", "b"}:
        raise ValueError(f"words are over a, b only: {word!r}")
    first = word.count("b") + 1
    up, down = first, first
    out = [first]
    for ch in word:
        if ch == "a":
            up += 1
            out.append(up)
        else:
            down -= 1
            out.append(down)
    return tuple(out)


def exotic(p: Perm) -> Perm:
    return omega_decode(omega_encode(p)[::-1])


# ---------------------------------------------------------------------------
# bases (corrected) and the structural descriptions of the classes

_A5_CORE = _ps("""
    1324 4231
    14523 21354 21453 21534 21543 23154 23514 24153 24513 25134 25143 25413
    31254 31452 31524 31542 32154 32514 32541 34125 34152 34512 35124 35142
    35214 35412 41253 41523 41532 42153 42513 43152 43512 45123 45132 45213
    45312 52143
""")

TABLE2: dict[int, frozenset[Perm]] = {
    1: frozenset(),
    2: _ps("""
        23514 24513 25134 25143 25314 25413 31452 31542 32514 34152 35124 35214
        41253 41352 41523 41532 42153 43152 241635 315264 462513 536142
    """),
    3: _ps("2143 2431 3124 3412 25134 23514 31452 35214 41532 43152"),
    4: _ps("2143 2431 3124 3412 23514 25134 31452 35214 41532 43152"),
    5: _A5_CORE,
    6: _A5_CORE | _ps("25314 41352"),
}

# the A5/A6 rows as typeset, strings because one entry is not a permutation
TABLE2_PRINTED: dict[int, tuple[str, ...]] = {
    5: tuple("""
        1324 4231
        14253 21354 21453 21534 21543 23154 23514 24153 24513 25134 25143 25413
        31254 32452 31524 31542 32154 32514 32541 34125 34152 34512 35124 35142
        35214 35412 41253 41523 41532 42153 42513 43152 43512 45123 45132 45213
        45312 52143
    """.split()),
}
TABLE2_PRINTED[6] = TABLE2_PRINTED[5] + ("25314", "41352")

# printed entry -> entry the engine produces
TABLE2_CORRECTIONS: dict[str, str] = {"32452": "31452", "14253": "14523"}

T_SIMPLES: frozenset[Perm] = _ps("2413 3142 24153 31524 35142 42513")
U_ATOMS: frozenset[Perm] = T_SIMPLES | {(1,)}

_SWAP_2413 = {(2, 4, 1, 3): (3, 1, 4, 2), (3, 1, 4, 2): (2, 4, 1, 3)}
_EXTRAS_A5 = _ps("2143 2413 3142 3412 25314 41352")
_EXTRAS_A6 = _ps("2143 2413 3142 3412")


def in_A2(p: Perm) -> bool:
    """Sum/skew-sum closure of the downset of ``T_SIMPLES``."""
    stack = [tuple(p)]
    while stack:
        q = stack.pop()
        parts = sum_decompose(q) or skew_decompose(q)
        if parts:
            stack.extend(parts)
        elif q not in U_ATOMS:
            return False
    return True


def _apex_ok(tau: Perm) -> bool:
    if tau in ((1,), (2, 4, 1, 3), (3, 1, 4, 2)):
        return True
    return wedge_membership(tau, "V270") and not (is_increasing(tau) or is_decreasing(tau))


def _splits_A3(p: Perm) -> list[tuple[Perm, Perm]]:
    n = len(p)
    found = []
    lo = hi = None
    for k in range(1, n + 1):
        x = p[n - k]
        lo = x if lo is None else min(lo, x)
        hi = x if hi is None else max(hi, x)
        if hi - lo + 1 != k:
            continue
        tau = normalize(p[n - k:])
        sigma = normalize(p[: n - k] + (lo,))
        if _apex_ok(tau) and wedge_membership(sigma, "V90"):
            found.append((sigma, tau))
    return found


def decompose_A3(p: Perm) -> tuple[Perm, Perm]:
    """The unique ``(sigma, tau)`` with ``p = sigma[1, ..., 1, tau]``.

    ``sigma`` lies in V90 and ``tau`` is 1, 2413, 3142 or a non-monotone
    member of V270.
    """
    found = _splits_A3(tuple(p))
    if not found:
        raise NotAMember(f"{format_perm(p)} is not in A3")
    if len(found) > 1:
        raise AssertionError(f"{format_perm(p)} has {len(found)} apex decompositions")
    return found[0]


def in_A3(p: Perm) -> bool:
    return bool(_splits_A3(tuple(p)))


def _in_some_wedge(p: Perm) -> bool:
    return any(wedge_membership(p, w) for w in WEDGES)


def in_A5(p: Perm) -> bool:
    return tuple(p) in _EXTRAS_A5 or _in_some_wedge(p)


def in_A6(p: Perm) -> bool:
    return tuple(p) in _EXTRAS_A6 or _in_some_wedge(p)


# ---------------------------------------------------------------------------
# the maps


def map_f1(p: Perm) -> Perm:
    return tuple(p)


def map_f2(p: Perm) -> Perm:
    """Swap 2413 and 3142 wherever they occur as atoms of the sum/skew tree."""
    p = tuple(p)
    parts = sum_decompose(p)
    if parts:
        return direct_sum(map_f2(parts[0]), map_f2(parts[1]))
    parts = skew_decompose(p)
    if parts:
        return skew_sum(map_f2(parts[0]), map_f2(parts[1]))
    if p not in U_ATOMS:
        raise NotAMember(f"{format_perm(p)} is not in A2")
    return _SWAP_2413.get(p, p)


def _apex_map(p: Perm, swap: bool) -> Perm:
    sigma, tau = decompose_A3(p)
    if tau in _SWAP_2413:
        tau = _SWAP_2413[tau] if swap else tau
    else:
        tau = exotic(tau)
    return inflate(sigma, [(1,)] * (len(sigma) - 1) + [tau])


def map_f3(p: Perm) -> Perm:
    return _apex_map(tuple(p), swap=False)


def map_f4(p: Perm) -> Perm:
    return _apex_map(tuple(p), swap=True)


def _around_exotic(pre: str, post: str) -> Callable[[Perm], Perm]:
    s, t = Symmetry(pre), Symmetry(post)
    return lambda p: t.apply(exotic(s.apply(p)))


# orientation -> (symmetry word before the exotic map, word after)
_F5_WEDGE = {"V": ("i", "i"), "V90": ("r", "c"), "V180": ("ci", "ic"), "V270": ("c", "r")}
_F6_WEDGE = {"V": ("ri", "r"), "V90": ("r", "ri"), "V180": ("rir", ""), "V270": ("", "i")}


def wedge_images(p: Perm, table: dict[str, tuple[str, str]]) -> dict[str, Perm]:
    """Image of ``p`` under the piece for every wedge containing it."""
    return {w: _around_exotic(*table[w])(p) for w in WEDGES if wedge_membership(p, w)}


def _wedge_map(p: Perm, table, extras, name) -> Perm:
    p = tuple(p)
    if p in extras:
        return {(2, 1, 4, 3): (3, 4, 1, 2), (3, 4, 1, 2): (2, 1, 4, 3)}.get(p, p)
    for w in WEDGES:
        if wedge_membership(p, w):
            return _around_exotic(*table[w])(p)
    raise NotAMember(f"{format_perm(p)} is not in {name}")


def map_f5(p: Perm) -> Perm:
    return _wedge_map(p, _F5_WEDGE, _EXTRAS_A5, "A5")


def map_f6(p: Perm) -> Perm:
    return _wedge_map(p, _F6_WEDGE, _EXTRAS_A6, "A6")


@dataclass(frozen=True)
class ClassMap:
    name: str
    func: Callable[[Perm], Perm]
    member: Callable[[Perm], bool]
    basis: frozenset[Perm]

    def __call__(self, p: Perm) -> Perm:
        return self.func(p)


CLASS_MAPS: dict[str, ClassMap] = {
    "f1": ClassMap("f1", map_f1, lambda p: True, TABLE2[1]),
    "f2": ClassMap("f2", map_f2, in_A2, TABLE2[2]),
    "f3": ClassMap("f3", map_f3, in_A3, TABLE2[3]),
    "f4": ClassMap("f4", map_f4, in_A3, TABLE2[4]),
    "f5": ClassMap("f5", map_f5, in_A5, TABLE2[5]),
    "f6": ClassMap("f6", map_f6, in_A6, TABLE2[6]),
}


def map_table_json(cmap: ClassMap | Callable[[Perm], Perm],
                   members: Iterable[Perm]) -> dict[str, list[list[str]]]:
    """``{"n": [[preimage, image], ...]}`` per length, sorted."""
    out: dict[str, list[list[str]]] = {}
    for p in sorted(members, key=perm_sort_key):
        out.setdefault(str(len(p)), []).append([format_perm(p), format_perm(cmap(p))])
    return out


# ---------------------------------------------------------------------------
# enumeration

# counts of A2, A3 and A5 from length 1, as published
PRINTED_SERIES: dict[int, tuple[int, ...]] = {
    2: (1, 2, 6, 24, 102, 446, 2054, 9818, 48218, 241686, 1231214, 6356050, 33178450),
    3: (1, 2, 6, 20, 54, 138, 338, 802, 1858, 4226, 9474, 20994, 46082, 100354, 217090),
    5: (1, 2, 6, 22, 48, 106, 230, 482, 990, 2010, 4054, 8146, 16334, 32714, 65478, 131010),
}

_A3_SMALL = (1, 2, 6)
_A5_SMALL = (1, 2, 6, 22, 48)


def _a2_series(n_max: int) -> list[int]:
    # A = 2C + U and C = (C + U) A by the sum/skew symmetry, U = x + 2x^4 + 4x^5
    U = [0] * (n_max + 1)
    for k, c in ((1, 1), (4, 2), (5, 4)):
        if k <= n_max:
            U[k] = c
    C = [0] * (n_max + 1)
    for _ in range(n_max + 1):
        A = [2 * C[k] + U[k] for k in range(n_max + 1)]
        CU = [C[k] + U[k] for k in range(n_max + 1)]
        C = [sum(CU[j] * A[k - j] for j in range(k + 1)) for k in range(n_max + 1)]
    return [2 * C[k] + U[k] for k in range(n_max + 1)]


def series_formula(class_id: int, n: int) -> int:
    """Number of length-``n`` permutations in ``A^(class_id)``, class_id in {2, 3, 5, 6}."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if class_id == 2:
        return _a2_series(n)[n]
    if class_id == 3:
        return _A3_SMALL[n - 1] if n < 4 else 2 + (4 * n - 7) * 2 ** (n - 3)
    if class_id in (5, 6):
        if class_id == 6 and n == 5:
            return 46
        return _A5_SMALL[n - 1] if n <= 5 else 2 ** (n + 1) - 4 * n + 2
    raise ValueError(f"no counting formula for class {class_id}")


# ---------------------------------------------------------------------------
# automorphisms of A3


def aut_group_A3(max_length: int = 7, members: Iterable[Perm] | None = None) -> list[dict[Perm, Perm]]:
    """Closure of {complement, f2, f3} on the members of A3 of length <= ``max_length``.

    Each element is returned as a table; the list is sorted so that the
    identity comes first.
    """
    if members is None:
        from .classes import PatternClass
        members = PatternClass(TABLE2[3]).members(max_length)
    members = list(members)
    comp = Symmetry("c")
    gens = [
        {p: comp.apply(p) for p in members},
        {p: map_f2(p) for p in members},
        {p: map_f3(p) for p in members},
    ]
    for g in gens:
        if set(g.values()) != set(members):
            raise AssertionError("generator does not permute the class")

    def key(t):
        return tuple(t[p] for p in members)

    ident = {p: p for p in members}
    found = {key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = {p: g[a[p]] for p in members}
                if key(b) not in found:
                    found[key(b)] = b
                    nxt.append(b)
        frontier = nxt
    return sorted(found.values(), key=lambda t: (t != ident, key(t)))
