"""
Growing a bijection of R = Cl{2413, 3142} into a maximal class isomorphism.

An isomorphism between pattern classes commutes with taking shadows, and
no two permutations of length >= 5 share a shadow.  So once the images of
every lower cover of ``pi`` are known, the image of ``pi`` (if there is
one) is forced: it is the unique permutation whose shadow is the image of
``pi``'s shadow.  Starting from a seed on R and working up one length at a
time, each new candidate is either mapped or becomes a basis element.

>>> iso = run_extension(TABLE1["h2"], 6)
>>> sorted(len(b) for b in iso.basis_elements())[-4:]
[6, 6, 6, 6]
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .classes import DEFAULT_LEVEL_CAP, R, LevelCapExceeded
from .perm import (
    SYMMETRIES, Perm, PermutationError, Symmetry, format_perm, one_point_extensions,
    parse_perm, perm_sort_key, shadow,
)

__all__ = [
    "R_ORDER", "SeedBijection", "TABLE1", "all_seeds", "EngineInvariantError",
    "shadow_preimages", "invert_shadow", "Verdict", "PartialIsomorphism",
    "extend_once", "run_extension", "Orbit", "classify_seeds", "SeedGroup",
    "GroupExtension", "run_group_extension",
]

# the non-trivial elements of R in column order of the usual seed table
R_ORDER: tuple[Perm, ...] = (
    (1, 2), (2, 1), (1, 3, 2), (2, 1, 3), (2, 3, 1), (3, 1, 2), (2, 4, 1, 3), (3, 1, 4, 2),
)
R_MEMBERS: frozenset[Perm] = frozenset(R.members(4))


class EngineInvariantError(AssertionError):
    """A property that holds by theory failed; indicates a bug, never bad input."""


@dataclass(frozen=True)
class SeedBijection:
    """A length-preserving bijection of R, stored as images of ``R_ORDER``."""

    images: tuple[Perm, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.images) != len(R_ORDER):
            raise ValueError(f"a seed needs {len(R_ORDER)} images, got {len(self.images)}")
        for lo, hi in ((0, 2), (2, 6), (6, 8)):
            if set(self.images[lo:hi]) != set(R_ORDER[lo:hi]):
                raise ValueError(
                    "seed must permute {12,21}, {132,213,231,312} and {2413,3142} among themselves"
                )

    @classmethod
    def from_mapping(cls, mapping: Mapping, name: str | None = None) -> "SeedBijection":
        """From ``{"12": "12", "21": "21", "132": ..., "3142": ...}``; ``"1"`` is optional."""
        table = {parse_perm(k): parse_perm(v) for k, v in mapping.items()}
        if table.pop((1,), (1,)) != (1,):
            raise ValueError("a seed must fix 1")
        missing = [format_perm(p) for p in R_ORDER if p not in table]
        extra = [format_perm(p) for p in table if p not in R_ORDER]
        if missing or extra:
            raise ValueError(f"seed keys: missing {missing}, unexpected {extra}")
        return cls(tuple(table[p] for p in R_ORDER), name)

    def as_dict(self) -> dict[Perm, Perm]:
        d = {(1,): (1,)}
        d.update(zip(R_ORDER, self.images))
        return d

    def __call__(self, p: Perm) -> Perm:
        if p == (1,):
            return p
        return self.images[R_ORDER.index(p)]

    def then(self, other: "SeedBijection") -> "SeedBijection":
        """Left-to-right composite: apply ``self`` first."""
        return SeedBijection(tuple(other(self(p)) for p in R_ORDER))

    def inverse(self) -> "SeedBijection":
        back = {v: k for k, v in zip(R_ORDER, self.images)}
        return SeedBijection(tuple(back[p] for p in R_ORDER))

    @classmethod
    def from_symmetry(cls, s: Symmetry) -> "SeedBijection":
        return cls(tuple(s.apply(p) for p in R_ORDER), f"sym:{s}")

    def conjugate(self, mu: Symmetry, nu: Symmetry) -> "SeedBijection":
        """``mu^-1 h nu`` restricted to R."""
        inv = ~mu
        return SeedBijection(tuple(nu.apply(self(inv.apply(p))) for p in R_ORDER))

    def to_json(self) -> dict[str, str]:
        return {format_perm(k): format_perm(v) for k, v in self.as_dict().items()}

    def __str__(self):
        return self.name or " ".join(format_perm(p) for p in self.images)


def _seed(name: str, *images: str) -> SeedBijection:
    return SeedBijection(tuple(parse_perm(x) for x in images), name)


TABLE1: dict[str, SeedBijection] = {
    "h1": _seed("h1", "12", "21", "132", "213", "231", "312", "2413", "3142"),
    "h2": _seed("h2", "12", "21", "132", "213", "231", "312", "3142", "2413"),
    "h3": _seed("h3", "12", "21", "132", "231", "213", "312", "2413", "3142"),
    "h4": _seed("h4", "12", "21", "132", "231", "213", "312", "3142", "2413"),
    "h5": _seed("h5", "12", "21", "231", "312", "132", "213", "2413", "3142"),
    "h6": _seed("h6", "12", "21", "231", "312", "213", "132", "2413", "3142"),
}


def all_seeds() -> list[SeedBijection]:
    """All 96 automorphisms of R, in a fixed order."""
    out = []
    for two in itertools.permutations(R_ORDER[0:2]):
        for three in itertools.permutations(R_ORDER[2:6]):
            for four in itertools.permutations(R_ORDER[6:8]):
                out.append(SeedBijection(two + three + four))
    return out


# ---------------------------------------------------------------------------
# shadow inversion


def _check_shadow_set(s: Iterable[Perm]) -> frozenset[Perm]:
    s = frozenset(s)
    if not s:
        raise PermutationError("empty shadow set")
    lengths = {len(p) for p in s}
    if len(lengths) != 1:
        raise PermutationError(f"shadow set mixes lengths {sorted(lengths)}")
    return s


def shadow_preimages(s: Iterable[Perm]) -> list[Perm]:
    """Every permutation whose shadow is exactly ``s``, sorted."""
    s = _check_shadow_set(s)
    elems = sorted(s)
    cands = one_point_extensions(elems[0])
    if len(elems) > 1:
        cands = cands & one_point_extensions(elems[1])
    return sorted(q for q in cands if shadow(q) == s)


def invert_shadow(s: Iterable[Perm]) -> Perm | None:
    """The permutation of length >= 5 with shadow ``s``, or None if there is none."""
    s = _check_shadow_set(s)
    target = len(next(iter(s))) + 1
    if target < 5:
        raise PermutationError(
            f"shadows need not determine permutations of length {target}; use shadow_preimages"
        )
    found = shadow_preimages(s)
    if len(found) > 1:
        raise EngineInvariantError(
            f"two permutations share a shadow: {format_perm(found[0])} {format_perm(found[1])}"
        )
    return found[0] if found else None


# ---------------------------------------------------------------------------
# single-seed extension


class Verdict(enum.Enum):
    BASIS = "basis"
    BLOCKED = "blocked"


@dataclass
class PartialIsomorphism:
    """A map built from a seed, complete through length ``frontier``."""

    seed: SeedBijection
    image: dict[Perm, Perm]
    domain: dict[int, frozenset[Perm]]
    basis: dict[int, frozenset[Perm]]
    frontier: int

    @classmethod
    def seeded(cls, seed: SeedBijection) -> "PartialIsomorphism":
        img = seed.as_dict()
        return cls(seed, img, {1: frozenset({(1,)}), 2: R.level(2)}, {}, 2)

    def counts(self) -> list[int]:
        return [len(self.domain.get(n, ())) for n in range(1, self.frontier + 1)]

    def basis_elements(self) -> frozenset[Perm]:
        return frozenset().union(*self.basis.values()) if self.basis else frozenset()

    def basis_free(self, n: int) -> bool:
        return not self.basis.get(n)

    def table(self, n: int) -> dict[Perm, Perm]:
        return {p: self.image[p] for p in sorted(self.domain.get(n, ()))}

    def to_report(self, table_up_to: int = 5) -> dict:
        return {
            "schema": 1,
            "seed": self.seed.to_json(),
            "seed_name": self.seed.name,
            "max_length": self.frontier,
            "counts": {str(n): c for n, c in enumerate(self.counts(), 1)},
            "basis": {
                str(n): [format_perm(b) for b in sorted(self.basis.get(n, ()), key=perm_sort_key)]
                for n in range(1, self.frontier + 1)
            },
            "basis_free": {str(n): self.basis_free(n) for n in range(3, self.frontier + 1)},
            "tables": {
                str(n): [[format_perm(p), format_perm(q)] for p, q in self.table(n).items()]
                for n in range(1, min(table_up_to, self.frontier) + 1)
            },
        }


def _forced_image(mapped_shadow: frozenset[Perm], target: int) -> Perm | None:
    if target >= 5:
        return invert_shadow(mapped_shadow)
    # short targets: settle uniqueness by exhaustion rather than by theory
    found = [q for q in shadow_preimages(mapped_shadow) if q not in R_MEMBERS]
    if len(found) > 1:
        raise EngineInvariantError(f"ambiguous short target for {sorted(mapped_shadow)}")
    return found[0] if found else None


def extend_once(iso: PartialIsomorphism, candidate: Perm) -> Perm | Verdict:
    """Decide one permutation of length ``frontier + 1``.

    Returns its forced image, ``Verdict.BASIS`` when the mapped shadow is
    not the shadow of anything, or ``Verdict.BLOCKED`` when some lower cover
    lies outside the domain (the candidate sits above a basis element).
    """
    n = len(candidate)
    if n != iso.frontier + 1:
        raise ValueError(f"candidate length {n}, expected {iso.frontier + 1}")
    if candidate in R_MEMBERS:
        return iso.seed(candidate)
    below = iso.domain[n - 1]
    sh = shadow(candidate)
    if not sh <= below:
        return Verdict.BLOCKED
    img = _forced_image(frozenset(iso.image[p] for p in sh), n)
    return Verdict.BASIS if img is None else img


def _candidates(level: Iterable[Perm]) -> set[Perm]:
    out = set()
    for p in level:
        out |= one_point_extensions(p)
    return out


def run_extension(seed: SeedBijection, max_length: int = 7, *,
                  rng: random.Random | None = None,
                  cap: int = DEFAULT_LEVEL_CAP) -> PartialIsomorphism:
    """Extend ``seed`` level by level through ``max_length``.

    ``rng`` shuffles the order candidates are decided in; the result does
    not depend on it.
    """
    if max_length < 3:
        raise ValueError("max_length must be at least 3")
    iso = PartialIsomorphism.seeded(seed)
    while iso.frontier < max_length:
        n = iso.frontier + 1
        cands = sorted(_candidates(iso.domain[n - 1]) | (R.level(n) if n <= 4 else set()))
        if rng is not None:
            rng.shuffle(cands)
        members, basis, new = set(), set(), {}
        for q in cands:
            out = extend_once(iso, q)
            if out is Verdict.BLOCKED:
                continue
            if out is Verdict.BASIS:
                basis.add(q)
            else:
                members.add(q)
                new[q] = out
        if len(members) > cap:
            raise LevelCapExceeded(n, len(members), cap)
        if len(set(new.values())) != len(new):
            raise EngineInvariantError(f"map is not injective at length {n}")
        lower_images = {iso.image[p] for p in iso.domain[n - 1]}
        for v in new.values():
            if not shadow(v) <= lower_images:
                raise EngineInvariantError(f"image set not downward closed at {format_perm(v)}")
        iso.image.update(new)
        iso.domain[n] = frozenset(members)
        iso.basis[n] = frozenset(basis)
        iso.frontier = n
    return iso


# ---------------------------------------------------------------------------
# classification of seeds up to symmetry


@dataclass(frozen=True)
class Orbit:
    representative: str | None
    members: frozenset[SeedBijection]

    def __len__(self):
        return len(self.members)


def classify_seeds() -> list[Orbit]:
    """Orbits of the 96 seeds under ``h ~ mu^-1 h nu`` for symmetries mu, nu."""
    remaining = set(all_seeds())
    reps = {s: name for name, s in TABLE1.items()}
    orbits = []
    for h in all_seeds():
        if h not in remaining:
            continue
        orbit = frozenset(h.conjugate(mu, nu) for mu in SYMMETRIES for nu in SYMMETRIES)
        remaining -= orbit
        names = sorted(reps[s] for s in orbit if s in reps)
        orbits.append(Orbit(names[0] if names else None, orbit))
    orbits.sort(key=lambda o: (o.representative is None, o.representative or ""))
    return orbits


# ---------------------------------------------------------------------------
# group-equivariant extension


class SeedGroup:
    """A subgroup of Aut(R) whose elements must all extend simultaneously."""

    def __init__(self, elements: Iterable[SeedBijection]):
        elems = frozenset(SeedBijection(s.images) for s in elements)
        ident = TABLE1["h1"]
        if ident not in elems:
            raise ValueError("group lacks the identity")
        for a in elems:
            if a.inverse() not in elems:
                raise ValueError(f"group not closed under inverses at {a}")
            for b in elems:
                if a.then(b) not in elems:
                    raise ValueError(f"group not closed under composition at {a}, {b}")
        self.elements: tuple[SeedBijection, ...] = tuple(sorted(elems, key=lambda s: s.images))

    @classmethod
    def generate(cls, generators: Iterable[SeedBijection]) -> "SeedGroup":
        gens = [SeedBijection(g.images) for g in generators]
        found = {TABLE1["h1"]}
        frontier = list(found)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = a.then(g)
                    if b not in found:
                        found.add(b)
                        nxt.append(b)
            frontier = nxt
        return cls(found)

    @classmethod
    def full(cls) -> "SeedGroup":
        return cls(all_seeds())

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass
class GroupExtension:
    group: SeedGroup
    levels: dict[int, frozenset[Perm]]
    maps: list[dict[Perm, Perm]]
    basis: dict[int, frozenset[Perm]]
    frontier: int
    prune_rounds: dict[int, int]

    def counts(self) -> list[int]:
        return [len(self.levels.get(n, ())) for n in range(1, self.frontier + 1)]

    def members(self) -> frozenset[Perm]:
        return frozenset().union(*self.levels.values())

    def basis_elements(self) -> frozenset[Perm]:
        return frozenset().union(*self.basis.values()) if self.basis else frozenset()

    def to_report(self, table_up_to: int = 4) -> dict:
        return {
            "schema": 1,
            "group": [g.to_json() for g in self.group],
            "order": len(self.group),
            "max_length": self.frontier,
            "counts": {str(n): c for n, c in enumerate(self.counts(), 1)},
            "basis": {
                str(n): [format_perm(b) for b in sorted(self.basis.get(n, ()), key=perm_sort_key)]
                for n in range(1, self.frontier + 1)
            },
            "tables": [
                {str(n): [[format_perm(p), format_perm(m[p])] for p in sorted(self.levels.get(n, ()))]
                 for n in range(1, min(table_up_to, self.frontier) + 1)}
                for m in self.maps
            ],
        }


def run_group_extension(group: SeedGroup, max_length: int = 7, *,
                        rng: random.Random | None = None,
                        cap: int = DEFAULT_LEVEL_CAP) -> GroupExtension:
    """Largest class containing R on which every element of ``group`` extends.

    Per length: tentatively map each candidate under every group element,
    then repeatedly discard candidates one of whose images was discarded
    (or never existed) until nothing changes.  Discards join the basis.
    """
    maps = [g.as_dict() for g in group]
    levels = {1: frozenset({(1,)}), 2: R.level(2)}
    basis: dict[int, frozenset[Perm]] = {}
    rounds: dict[int, int] = {}
    n = 2
    while n < max_length:
        n += 1
        below = levels[n - 1]
        pool = sorted(q for q in _candidates(below) - R_MEMBERS if shadow(q) <= below)
        if rng is not None:
            rng.shuffle(pool)
        tentative: dict[Perm, list[Perm | None]] = {}
        for q in pool:
            sh = shadow(q)
            tentative[q] = [_forced_image(frozenset(m[p] for p in sh), n) for m in maps]
        fixed = R.level(n) if n <= 4 else frozenset()
        alive = set(fixed) | {q for q, imgs in tentative.items() if None not in imgs}
        k = 0
        while True:
            k += 1
            order = list(alive - fixed)
            if rng is not None:
                rng.shuffle(order)
            drop = {q for q in order if any(v not in alive for v in tentative[q])}
            if not drop:
                break
            alive -= drop
        if len(alive) > cap:
            raise LevelCapExceeded(n, len(alive), cap)
        for q in alive - fixed:
            for m, v in zip(maps, tentative[q]):
                m[q] = v
        for m in maps:
            imgs = [m[q] for q in alive]
            if len(set(imgs)) != len(imgs):
                raise EngineInvariantError(f"group element not injective at length {n}")
        levels[n] = frozenset(alive)
        basis[n] = frozenset(set(pool) - alive)
        rounds[n] = k
    return GroupExtension(group, levels, maps, basis, n, rounds)
