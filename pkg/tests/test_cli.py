import json

import pytest

from patterniso.cli import main
from patterniso.constructions import TABLE2
from patterniso.engine import TABLE1
from patterniso.perm import format_perm


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def class_file(tmp_path, basis, name="c.json"):
    f = tmp_path / name
    f.write_text(json.dumps({"basis": sorted(format_perm(b) for b in basis)}))
    return str(f)


def test_shadow_contains_symmetry(capsys):
    assert run(capsys, "shadow", "2413")[1] == "132 213 231 312\n"
    assert run(capsys, "contains", "2413", "132")[1] == "true\n"
    assert run(capsys, "contains", "321", "12")[1] == "false\n"
    assert run(capsys, "symmetry", "2413", "r")[1] == "3142\n"
    assert run(capsys, "symmetry", "2413", "id")[1] == "2413\n"


@pytest.mark.parametrize("argv", [["shadow", "2443"], ["contains", "12", "1x"], ["symmetry", "12", "q"]])
def test_parse_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("error:")


def test_parse_error_has_position(capsys):
    assert "index 3" in run(capsys, "shadow", "2443")[2]


def test_enumerate(capsys, tmp_path):
    code, out, _ = run(capsys, "enumerate", class_file(tmp_path, []), "5")
    assert code == 0 and out == "n,count\n1,1\n2,2\n3,6\n4,24\n5,120\n"
    out = run(capsys, "enumerate", class_file(tmp_path, ["132", "312"]), "--max-length", "6")[1]
    assert out.splitlines()[1:] == [f"{n},{2 ** (n - 1)}" for n in range(1, 7)]
    out = run(capsys, "enumerate", class_file(tmp_path, TABLE2[2]), "7", "--threads", "2")[1]
    assert out.splitlines()[-3:] == ["5,102", "6,446", "7,2054"]


def test_enumerate_cap_exit_3(capsys, tmp_path):
    code, _, err = run(capsys, "enumerate", class_file(tmp_path, []), "8", "--cap", "1000")
    assert code == 3 and "error" in err


def test_enumerate_bad_file(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"basis": ["1223"]}')
    assert run(capsys, "enumerate", str(f), "3")[0] == 2
    assert run(capsys, "enumerate", str(tmp_path / "missing.json"), "3")[0] == 2


def test_extend_h1(capsys):
    code, out, _ = run(capsys, "extend", "h1", "6")
    assert code == 0
    assert out == "counts: 1,2,6,24,120,720\nbasis: (empty)\n"


def test_extend_h2_report(capsys, tmp_path):
    dest = tmp_path / "h2.json"
    code, out, _ = run(capsys, "extend", "h2", "7", "--out", str(dest), "--table-up-to", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "counts: 1,2,6,24,102,446,2054"
    by_len = {}
    for b in TABLE2[2]:
        by_len.setdefault(len(b), []).append(format_perm(b))
    assert lines[1] == "basis[5] (18): " + " ".join(sorted(by_len[5]))
    assert lines[2] == "basis[6] (4): " + " ".join(sorted(by_len[6]))
    rep = json.loads(dest.read_text())
    assert rep["schema"] == 1
    assert sorted(rep["basis"]["5"]) == sorted(by_len[5])
    assert max(map(int, rep["tables"])) == 4


def test_extend_explicit_seed(capsys, tmp_path):
    seed = json.dumps(TABLE1["h3"].to_json())
    inline = run(capsys, "extend", seed, "5")[1]
    f = tmp_path / "seed.json"
    f.write_text(seed)
    from_file = run(capsys, "extend", str(f), "5")[1]
    assert inline == from_file == run(capsys, "extend", "h3", "5")[1]


def test_extend_bad_seed(capsys):
    assert run(capsys, "extend", '{"12": "12"}', "5")[0] == 2
    assert run(capsys, "extend", "h9", "5")[0] == 2


def test_extend_group_aut_R(capsys):
    code, out, _ = run(capsys, "extend-group", "aut-R", "9")
    assert code == 0
    assert "group order: 96" in out
    assert "counts: 1,2,6,12,14,18,22,26,30" in out


def test_extend_group_named_generators(capsys, tmp_path):
    dest = tmp_path / "g.json"
    code, out, _ = run(capsys, "extend-group", "h6", "6", "--out", str(dest))
    assert code == 0 and out.startswith("group order: 4\n")
    assert json.loads(dest.read_text())["schema"] == 1


def test_verify_smith_and_tables(capsys):
    code, out, _ = run(capsys, "verify", "smith")
    assert code == 0 and out.splitlines()[-1] == "smith: pass"
    code, out, _ = run(capsys, "verify", "tables", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["schema"] == 1 and rep["status"] == "pass"
    assert len(rep["checks"]) == 6


def test_verify_corrupted_bases_fails(capsys, tmp_path):
    f = tmp_path / "bases.json"
    bad = sorted(format_perm(b) for b in TABLE2[3])[1:]
    f.write_text(json.dumps({"3": bad}))
    code, out, _ = run(capsys, "verify", "tables", "--bases", str(f))
    assert code == 1
    assert "FAIL  tables: basis of A3 from h3" in out


def test_verify_all_corrupted_fails(capsys, tmp_path):
    f = tmp_path / "bases.json"
    f.write_text(json.dumps({"5": ["1324", "4231"]}))
    code, out, _ = run(capsys, "verify", "all", "--bases", str(f), "--json")
    rep = json.loads(out)
    assert code == 1 and rep["status"] == "fail"
    failed = {c["name"] for c in rep["checks"] if c["status"] == "fail"}
    assert "tables: basis of A5 from h5" in failed
    assert all(name.split(":")[0] in ("tables", "maps", "series") for name in failed)


def test_output_is_deterministic(capsys, tmp_path):
    a = run(capsys, "extend", "h5", "6", "--out", str(tmp_path / "a.json"))[1]
    b = run(capsys, "extend", "h5", "6", "--out", str(tmp_path / "b.json"))[1]
    assert a == b
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
