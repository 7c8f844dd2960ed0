import json
import math

import numpy as np
import pytest

from conftest import brute_level
from patterniso.classes import (
    R, LevelCapExceeded, PatternClass, antichain_reduce, basis_of, counts_csv,
    downset_of, generate_levels, growth_rate_bound, load_class_file,
)
from patterniso.constructions import TABLE2
from patterniso.perm import all_perms, parse_perm, shadow

P = parse_perm


def test_R():
    want = {P(s) for s in "1 12 21 132 213 231 312 2413 3142".split()}
    assert set(R.members(6)) == want
    assert downset_of(["1"]).members(3) == [(1,)]
    # every deletion from 321 gives 21, so 12 is not below it
    assert set(downset_of(["321"]).members(3)) == {P("1"), P("21"), P("321")}
    from patterniso.perm import SYMMETRIES
    for s in SYMMETRIES:
        assert {s.apply(p) for p in want} == want


def test_full_symmetric_group():
    assert PatternClass([]).counts(7) == [math.factorial(n) for n in range(1, 8)]


@pytest.mark.parametrize("basis", [["132", "312"], ["123"], ["2413", "3142"], ["12"], ["1"], ["231", "4123"]])
def test_levels_match_brute_force(basis):
    cls = PatternClass(basis)
    bs = [P(b) for b in basis]
    for n in range(1, 8):
        assert cls.level(n) == brute_level(bs, n)


def test_direct_and_shadow_paths_agree():
    basis = TABLE2[5]
    fast, slow = PatternClass(basis), PatternClass(basis, method="direct")
    for n in range(1, 8):
        assert fast.level(n) == slow.level(n)


def test_a2_counts_from_table_basis():
    assert PatternClass(TABLE2[2]).counts(7) == [1, 2, 6, 24, 102, 446, 2054]


def test_downward_closure_audit():
    for i in (2, 3, 5, 6):
        cls = PatternClass(TABLE2[i])
        for n in range(2, 8):
            below = cls.level(n - 1)
            for p in cls.level(n):
                assert shadow(p) <= below


def test_threads_do_not_change_levels():
    from patterniso import _levels
    a = PatternClass(TABLE2[2])
    forbidden = _levels.encode_perms([b for b in TABLE2[2] if len(b) == 6], 6)
    serial = _levels.next_level(a.keys(5), 5, forbidden)
    threaded = _levels.next_level(a.keys(5), 5, forbidden, threads=4, chunk=257)
    assert np.array_equal(serial, threaded)
    assert np.array_equal(serial, a.keys(6))


def test_membership():
    cls = PatternClass(["132", "312"])
    assert P("45367821") in cls
    assert P("2413") not in cls


def test_basis_of_simple_cases():
    assert basis_of(PatternClass(["12"]), 5) == {P("12")}
    assert basis_of(PatternClass(["132", "312"]), 6) == {P("132"), P("312")}


def test_basis_of_R_against_brute_force():
    members = set(R.members(5))
    oracle = set()
    for n in range(1, 6):
        for p in all_perms(n):
            if p not in members and all(q in members for q in (shadow(p) if n > 1 else ())):
                oracle.add(p)
    assert basis_of(R, 5) == oracle == {P("123"), P("321"), P("2143"), P("3412")}


@pytest.mark.parametrize("i", [2, 3, 5, 6])
def test_basis_round_trip(i):
    assert basis_of(PatternClass(TABLE2[i]), 7) == TABLE2[i]


def test_antichain_reduction_reported(caplog):
    kept, dropped = antichain_reduce([P("12"), P("123"), P("21")])
    assert kept == {P("12"), P("21")} and dropped == {P("123")}
    with caplog.at_level("WARNING"):
        cls = PatternClass(["1324", "14253"])
    assert cls.dropped == {P("14253")}
    assert "14253" in caplog.text


def test_level_cap():
    with pytest.raises(LevelCapExceeded) as err:
        PatternClass([], cap=100).counts(6)
    assert err.value.length == 5


def test_growth_rate():
    p = [1, -6, 1, 0, -12, -20, 8, 0, 4, 16, 16]
    assert growth_rate_bound(p) == pytest.approx(5.90425, abs=1e-4)
    assert growth_rate_bound([1, -2]) == pytest.approx(2.0, abs=1e-6)
    assert growth_rate_bound([1, -6, 1]) == pytest.approx(3 + 2 * math.sqrt(2), abs=1e-5)
    with pytest.raises(ValueError):
        growth_rate_bound([1, 1])


def test_class_file_and_csv(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps({"basis": ["132", "312"]}))
    cls = load_class_file(f)
    assert counts_csv(cls.counts(3)) == "n,count\n1,1\n2,2\n3,4\n"
    f.write_text("[]")
    with pytest.raises(ValueError):
        load_class_file(f)


def test_generate_levels_is_levels():
    cls = PatternClass(["123"])
    assert generate_levels(cls, 4) == cls.levels(4)


def test_from_levels_requires_closure():
    with pytest.raises(ValueError):
        PatternClass.from_levels({1: [(1,)], 3: [(1, 2, 3)]})


def test_catalan_and_erdos_szekeres():
    assert PatternClass(["123"]).counts(9) == [math.comb(2 * n, n) // (n + 1) for n in range(1, 10)]
    assert PatternClass(["123", "321"]).counts(6) == [1, 2, 4, 4, 0, 0]
