import json
import subprocess
import sys

import pytest

from leibniz_mult import algebra_file, cli
from leibniz_mult.extensions import CriteriaReport
from leibniz_mult.leibniz_core import catalog
from oracle import center_dim, derived_dim, h2_dims, table_of


def write(tmp_path, L, name=None):
    p = tmp_path / f"{name or L.name.replace(':', '_')}.json"
    algebra_file.dump(L, p)
    return str(p)


def run_json(capsys, *argv):
    code = cli.main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


def strip_timings(d):
    d = dict(d)
    d.pop("timings", None)
    return d


# --------------------------------------------------------------- check


def test_check_ok(tmp_path, capsys):
    assert cli.main(["check", write(tmp_path, catalog("cyclic:2"))]) == 0


def test_check_corrupted(tmp_path, capsys):
    doc = algebra_file.to_dict(catalog("cyclic:2"))
    doc["products"].append({"left": 2, "right": 1, "value": ["1", "0"]})
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    assert cli.main(["check", str(p)]) == 1
    assert "(1,1,1)" in capsys.readouterr().out
    code, rep = run_json(capsys, "check", str(p))
    assert code == 1 and [1, 1, 1] in rep["violations"]
    # other commands refuse the input unless told to skip the check
    assert cli.main(["invariants", str(p)]) == 1
    assert cli.main(["invariants", str(p), "--skip-check"]) == 1
    assert cli.main(["check", write(tmp_path, catalog("cyclic:3")), "--skip-check"]) == 0


def test_check_malformed(tmp_path, capsys):
    p = tmp_path / "broken.json"
    p.write_text("{oops")
    assert cli.main(["check", str(p)]) == 2
    assert cli.main(["check", str(tmp_path / "absent.json")]) == 2
    assert cli.main(["check", "catalog:nope"]) == 2
    assert cli.main(["nosuchcommand"]) == 2


def test_dimension_cap(capsys):
    assert cli.main(["invariants", "catalog:abelian:3", "--max-dim", "2"]) == 2


# --------------------------------------------------------------- invariants


@pytest.mark.parametrize("name,expected", [("abelian:3", (0, 3, 9)), ("cyclic:2", (1, 1, 1))])
def test_invariants_examples(capsys, name, expected):
    code, rep = run_json(capsys, "invariants", f"catalog:{name}")
    d = rep["dims"]
    assert code == 0 and (d["derived"], d["center"], d["M"]) == expected and d["H2"] == d["M"]


def test_invariants_cyclic3_against_oracle(capsys):
    L = catalog("cyclic:3")
    t = table_of(L)
    code, rep = run_json(capsys, "invariants", "catalog:cyclic:3")
    d = rep["dims"]
    assert (d["derived"], d["center"], d["M"]) == (derived_dim(t, 3), center_dim(t, 3), h2_dims(t, 3)[2])


def test_reports_are_deterministic(tmp_path, capsys):
    p = write(tmp_path, catalog("heisenberg"))
    _, a = run_json(capsys, "invariants", p)
    _, b = run_json(capsys, "invariants", p)
    assert strip_timings(a) == strip_timings(b)
    assert a["input"]["digest"] == algebra_file.digest(catalog("heisenberg"))


# --------------------------------------------------------------- cover


@pytest.mark.parametrize("name,expected", [("abelian:1", "cyclic:2"), ("cyclic:2", "cyclic:3")])
def test_cover_examples(tmp_path, capsys, name, expected):
    out = tmp_path / "cover.json"
    assert cli.main(["cover", f"catalog:{name}", "--out", str(out)]) == 0
    assert algebra_file.load(out) == catalog(expected)
    assert cli.main(["check", str(out)]) == 0


def test_cover_abelian2_and_report(tmp_path, capsys):
    out, rep = tmp_path / "c.json", tmp_path / "r.json"
    assert cli.main(["cover", "catalog:abelian:2", "--out", str(out), "--report", str(rep)]) == 0
    r = json.loads(rep.read_text())
    assert r["cover"]["dim"] == 6 and r["cover"]["kernel_dim"] == 4 == r["dims"]["M"]
    assert algebra_file.load(out).dim == 6


def test_cover_to_stdout(capsys):
    assert cli.main(["cover", "catalog:cyclic:2"]) == 0
    assert algebra_file.loads(capsys.readouterr().out) == catalog("cyclic:3")


# --------------------------------------------------------------- zstar / unicentral


@pytest.mark.parametrize("name,zdim,uni", [("cyclic:2", 0, False), ("abelian:1", 0, False), ("solv2", 0, True),
                                           ("sl2", 0, True)])
def test_zstar_examples(capsys, name, zdim, uni):
    for cmd in ("zstar", "unicentral"):
        code, rep = run_json(capsys, cmd, f"catalog:{name}")
        assert code == 0
        assert rep["dims"]["z_star"] == zdim
        assert rep["verdicts"] == {"routes_agree": True, "unicentral": uni}


# --------------------------------------------------------------- sequences / criteria


def test_sequences_examples(tmp_path, capsys):
    assert cli.main(["sequences", "catalog:cyclic:2", "--ideal", "e2"]) == 0
    out = capsys.readouterr().out
    assert "dims (1, 1, 1, 1, 1) ranks (1, 0, 1, 0)" in out
    for name in ("cyclic:3", "heisenberg", "sl2"):
        assert cli.main(["sequences", f"catalog:{name}", "--ideal", "0"]) == 0
    rnd = tmp_path / "r.json"
    assert cli.main(["random", "--seed", "4", "--dim", "2", "--steps", "3", "--out", str(rnd)]) == 0
    assert cli.main(["sequences", str(rnd), "--all-central"]) == 0


def test_sequences_errors(capsys):
    assert cli.main(["sequences", "catalog:cyclic:2", "--ideal", "e1"]) == 2
    assert cli.main(["sequences", "catalog:cyclic:2", "--ideal", "e7"]) == 2
    assert cli.main(["sequences", "catalog:cyclic:2", "--ideal", "e1e2"]) == 2


def test_ideal_parser():
    L = catalog("abelian:3")
    S = cli.parse_ideal("2*e1-1/2*e3, e2", L)
    assert S.dim == 2
    assert tuple(S.rows[0]) == (1, 0, -0.25)
    assert cli.parse_ideal("0", L).dim == 0
    assert cli.parse_ideal("e1+e3,e2", L).dim == 2


def test_sequences_json_report(capsys):
    code, rep = run_json(capsys, "sequences", "catalog:heisenberg", "--all-central")
    assert code == 0 and rep["verdicts"]["all_exact"]
    names = [s["sequence"] for s in rep["instances"][0]["sequences"]]
    assert names == ["five_term", "extended", "ganea", "stallings"]


def test_criteria_examples(capsys):
    code, rep = run_json(capsys, "criteria", "catalog:cyclic:2")
    inst = rep["instances"][0]
    assert code == 0 and inst["consistent"]
    assert not any(inst[k] for k in ("delta_trivial", "beta_injective", "dim_identity_holds", "z_in_zstar"))
    code, rep = run_json(capsys, "criteria", "catalog:heisenberg", "--ideal", "0")
    inst = rep["instances"][0]
    assert code == 0 and all(inst[k] for k in ("delta_trivial", "beta_injective", "dim_identity_holds", "z_in_zstar"))


def test_criteria_inconsistency_is_a_finding(tmp_path, capsys, monkeypatch):
    monkeypatch.setattr(cli, "criteria_report", lambda L, Z: CriteriaReport(True, False, True, True))
    repro = tmp_path / "repro"
    assert cli.main(["criteria", "catalog:cyclic:2", "--reproducers", str(repro)]) == 3
    files = list(repro.glob("*.json"))
    assert len(files) == 1 and algebra_file.load(files[0]) == catalog("cyclic:2")


# --------------------------------------------------------------- random


def test_random_examples(tmp_path, capsys):
    assert cli.main(["random", "--seed", "1", "--dim", "3", "--steps", "0"]) == 0
    assert algebra_file.loads(capsys.readouterr().out) == catalog("abelian:3")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert cli.main(["random", "--seed", "9", "--dim", "2", "--steps", "3", "--field", "GF(5)", "--out", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert cli.main(["random", "--dim", "10", "--steps", "5"]) == 2


def test_random_files_pass_check(tmp_path, capsys):
    for seed in range(100):
        p = tmp_path / f"r{seed}.json"
        assert cli.main(["random", "--seed", str(seed), "--dim", str(1 + seed % 3), "--steps", str(seed % 3),
                         "--out", str(p)]) == 0
        assert cli.main(["check", str(p)]) == 0


# --------------------------------------------------------------- suite


def test_suite_catalog_only(tmp_path, capsys):
    code, rep = run_json(capsys, "suite", "--seeds", "0", "--roundtrips", "10", "--section-pairs", "5",
                         "--reproducers", str(tmp_path))
    assert code == 0 and rep["pass"] and rep["failures"] == []
    assert set(rep["instances"]) == {"sequences", "criteria", "cover", "zstar", "roundtrip", "sections"}


def test_suite_workers_merge_identically(tmp_path, capsys, monkeypatch):
    argv = ["suite", "--seeds", "6", "--field", "GF(5)", "--roundtrips", "4", "--section-pairs", "2"]
    _, one = run_json(capsys, *argv)
    monkeypatch.setenv("LEIBNIZ_MULT_THREADS", "2")
    _, two = run_json(capsys, *argv)
    assert strip_timings(one) == strip_timings(two)


def test_suite_failure_dumps_reproducers(tmp_path, capsys, monkeypatch):
    from leibniz_mult import suite
    monkeypatch.setattr(suite, "check_criteria", lambda L, Z: ["planted"] if L.name == "cyclic:2" else [])
    repro = tmp_path / "repro"
    code, rep = run_json(capsys, "suite", "--seeds", "0", "--checks", "criteria", "--reproducers", str(repro))
    assert code == 3 and not rep["pass"]
    assert len(rep["reproducers"]) == 1
    assert algebra_file.load(rep["reproducers"][0]) == catalog("cyclic:2")


def test_suite_usage_errors(capsys, monkeypatch):
    assert cli.main(["suite", "--checks", "bogus"]) == 2
    monkeypatch.setenv("LEIBNIZ_MULT_THREADS", "many")
    assert cli.main(["suite", "--seeds", "0", "--checks", "cover"]) == 2


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "leibniz_mult", "invariants", "catalog:cyclic:2", "--json"],
                       capture_output=True, text=True, check=True)
    assert json.loads(r.stdout)["dims"]["M"] == 1
