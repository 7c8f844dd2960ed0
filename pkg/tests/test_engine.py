import random

import pytest

from patterniso.classes import PatternClass
from patterniso.constructions import TABLE2
from patterniso.engine import (
    R_ORDER, TABLE1, EngineInvariantError, PartialIsomorphism, SeedBijection, SeedGroup,
    Verdict, all_seeds, classify_seeds, extend_once, invert_shadow, run_extension,
    run_group_extension, shadow_preimages,
)
from patterniso.perm import SYMMETRIES, PermutationError, all_perms, parse_perm, shadow

P = parse_perm


def test_seed_validation():
    assert len(all_seeds()) == 96 == len(set(all_seeds()))
    with pytest.raises(ValueError):
        SeedBijection(tuple(P(x) for x in "12 21 132 213 231 2413 312 3142".split()))
    h = SeedBijection.from_mapping({"1": "1", **{k: v for k, v in TABLE1["h5"].to_json().items()}})
    assert h == TABLE1["h5"]
    with pytest.raises(ValueError):
        SeedBijection.from_mapping({"12": "12"})


def test_seed_group_algebra():
    h5 = TABLE1["h5"]
    assert h5.then(h5.inverse()) == TABLE1["h1"]
    for s in SYMMETRIES:
        seed = SeedBijection.from_symmetry(s)
        assert seed.conjugate(s, SYMMETRIES[0]) == TABLE1["h1"]


def test_invert_shadow():
    assert invert_shadow(shadow(P("12345"))) == P("12345")
    assert invert_shadow(shadow(P("24153"))) == P("24153")
    with pytest.raises(PermutationError):
        invert_shadow({P("132"), P("213"), P("231"), P("312")})
    with pytest.raises(PermutationError):
        invert_shadow({P("1234"), P("123")})
    assert invert_shadow({P("1234"), P("4321")}) is None


def test_shadow_preimages_exhaustive():
    for n in range(2, 7):
        by_shadow = {}
        for p in all_perms(n):
            by_shadow.setdefault(shadow(p), []).append(p)
        for sh, ps in by_shadow.items():
            assert shadow_preimages(sh) == sorted(ps)


def test_extend_once_verdicts():
    iso = run_extension(TABLE1["h2"], 4)
    out = extend_once(iso, P("23514"))
    assert out is Verdict.BASIS
    iso3 = run_extension(TABLE1["h3"], 3)
    assert extend_once(iso3, P("2143")) is Verdict.BASIS
    iso3 = run_extension(TABLE1["h3"], 4)
    # 21435 contains the basis element 2143
    assert extend_once(iso3, P("21435")) is Verdict.BLOCKED
    ident = run_extension(TABLE1["h1"], 4)
    for q in all_perms(5):
        assert extend_once(ident, q) == q
    with pytest.raises(ValueError):
        extend_once(ident, P("123"))


def test_identity_seed_gives_everything():
    iso = run_extension(TABLE1["h1"], 7)
    assert not iso.basis_elements()
    assert iso.counts() == [1, 2, 6, 24, 120, 720, 5040]
    assert all(iso.image[p] == p for p in iso.image)


def test_identity_seed_length_8():
    iso = run_extension(TABLE1["h1"], 8)
    assert not iso.basis_elements() and iso.counts()[-1] == 40320


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(TABLE1))
def test_no_new_basis_through_length_9(name):
    iso = run_extension(TABLE1[name], 9)
    assert all(iso.basis_free(n) for n in (7, 8, 9))


def test_h2_basis_and_h5_short_basis():
    iso = run_extension(TABLE1["h2"], 7)
    assert iso.basis[5] == {b for b in TABLE2[2] if len(b) == 5} and len(iso.basis[5]) == 18
    assert iso.basis[6] == {P("241635"), P("315264"), P("462513"), P("536142")}
    assert iso.basis_free(7)
    iso5 = run_extension(TABLE1["h5"], 7)
    assert iso5.basis[4] == {P("1324"), P("4231")} and len(iso5.basis[5]) == 38


@pytest.mark.parametrize("name", sorted(TABLE1))
def test_engine_invariants(name):
    iso = run_extension(TABLE1[name], 7)
    for n in range(1, 8):
        dom = iso.domain[n]
        imgs = {iso.image[p] for p in dom}
        assert len(imgs) == len(dom)
        for p in dom:
            q = iso.image[p]
            assert len(q) == len(p)
            if n >= 2:
                assert {iso.image[s] for s in shadow(p)} == shadow(q)
                assert shadow(q) <= {iso.image[s] for s in iso.domain[n - 1]}
    assert iso.basis_free(7)


@pytest.mark.parametrize("name", sorted(TABLE1))
def test_domain_equals_avoidance_class(name):
    iso = run_extension(TABLE1[name], 7)
    cls = PatternClass(TABLE2[int(name[1])])
    for n in range(1, 8):
        assert iso.domain[n] == cls.level(n)


@pytest.mark.parametrize("name", ["h2", "h5"])
def test_order_independence(name):
    a = run_extension(TABLE1[name], 6)
    b = run_extension(TABLE1[name], 6, rng=random.Random(7))
    assert a.image == b.image and a.basis == b.basis


def test_report_schema():
    rep = run_extension(TABLE1["h3"], 5).to_report(4)
    assert rep["schema"] == 1
    assert rep["basis"]["4"] == ["2143", "2431", "3124", "3412"]
    assert rep["counts"]["5"] == 54
    assert ["213", "231"] in rep["tables"]["3"]


def test_classify_seeds():
    orbits = classify_seeds()
    assert len(orbits) == 6
    assert sum(len(o) for o in orbits) == 96
    assert [o.representative for o in orbits] == ["h1", "h2", "h3", "h4", "h5", "h6"]
    for o in orbits:
        assert TABLE1[o.representative] in o.members
    ident = orbits[0].members
    assert ident == {SeedBijection.from_symmetry(s) for s in SYMMETRIES}


def test_seed_group_checks():
    with pytest.raises(ValueError):
        SeedGroup([TABLE1["h1"], TABLE1["h6"]])
    assert len(SeedGroup.full()) == 96
    assert len(SeedGroup([TABLE1["h1"], TABLE1["h5"]])) == 2
    assert len(SeedGroup.generate([TABLE1["h2"]])) == 2
    assert len(SeedGroup.generate([TABLE1["h6"]])) == 4


def test_trivial_group_is_identity_extension():
    ext = run_group_extension(SeedGroup([TABLE1["h1"]]), 6)
    assert ext.counts() == [1, 2, 6, 24, 120, 720]


def test_cyclic_h2_group_matches_single_seed():
    ext = run_group_extension(SeedGroup.generate([TABLE1["h2"]]), 7)
    iso = run_extension(TABLE1["h2"], 7)
    for n in range(1, 8):
        assert ext.levels[n] == iso.domain[n]


def test_full_group_order_independence():
    a = run_group_extension(SeedGroup.full(), 7)
    b = run_group_extension(SeedGroup.full(), 7, rng=random.Random(3))
    assert a.levels == b.levels and a.basis == b.basis
    assert a.to_report()["schema"] == 1 and len(a.to_report()["tables"]) == 96


def test_invariant_error_is_assertion():
    assert issubclass(EngineInvariantError, AssertionError)
    assert len(R_ORDER) == 8 and isinstance(PartialIsomorphism.seeded(TABLE1["h1"]).frontier, int)
