import json
import subprocess
import sys

import pytest

from collinea import cli
from collinea.algebra import field_make
from collinea.collinear import closed_form_minimizer, transversal_from_bijection
from collinea.fixtures import load_fixture
from collinea.plane import affine_plane, projective_plane, save_plane


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def run_tsv(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out.splitlines()


@pytest.fixture
def plane3(tmp_path):
    p = tmp_path / "ag3.json"
    p.write_bytes(save_plane(affine_plane(field_make(3))))
    return str(p)


def test_psi_field_example(capsys):
    code, d = run(capsys, "psi", "field", "5")
    assert code == 0
    assert d["psi"] == 2
    assert d["witness"] == [0, 1, 2, 4, 3]
    assert d["witnesses"] == [[0, 1, 2, 4, 3]]
    m = d["manifest"]
    assert m["command"] == "psi field"
    assert m["arguments"] == ["psi", "field", "5"]
    assert set(m) == {"command", "arguments", "config_hash", "toolkit_version",
                      "input_digests", "wall_time"}


def test_psi_field_deterministic_modulo_timing(capsys):
    def scrub(d):
        d["elapsed"] = d["manifest"]["wall_time"] = None
        return d

    _, a = run(capsys, "psi", "field", "5")
    _, b = run(capsys, "psi", "field", "5")
    assert scrub(a) == scrub(b)


def test_psi_zn(capsys):
    code, d = run(capsys, "psi", "zn", "4")
    assert code == 0
    assert d["psi"] == 0


def test_psi_plane_file_and_overrides(capsys, plane3):
    code, d = run(capsys, "psi", "plane", plane3)
    assert (code, d["psi"], d["h"], d["v"]) == (0, 1, 0, 1)
    code, d = run(capsys, "psi", "plane", plane3, "--h", "3", "--v", "2")
    assert (code, d["h"], d["v"]) == (0, 3, 2)
    assert d["manifest"]["input_digests"].keys() == {plane3}


def test_psi_plane_all_pairs(capsys, plane3):
    code, d = run(capsys, "psi", "plane", plane3, "--all-pairs")
    assert code == 0
    assert len(d["pairs"]) == 6  # C(4,2) class pairs at order 3
    assert d["psi_values"] == [1]
    code, _ = run(capsys, "psi", "plane", plane3, "--all-pairs", "--h", "0")
    assert code == 2


def test_psi_plane_fixture_by_name(capsys):
    code, d = run(capsys, "psi", "plane", "hall_translation_deleted.json")
    assert code == 0
    assert d["psi"] == 5
    assert "fixture:hall_translation_deleted" in d["manifest"]["input_digests"]


def test_psi_plane_rejects_projective(capsys):
    code, d = run(capsys, "psi", "plane", "hall_projective")
    assert code == 2
    assert d["error"]["type"] == "UsageError"


def test_triples_builtin_families(capsys):
    assert run(capsys, "triples", "--g", "--q", "7")[1]["triples"] == 3
    assert run(capsys, "triples", "--inv", "--q", "8")[1]["triples"] == 0
    assert run(capsys, "quadruples", "--g", "--q", "5")[1]["quadruples"] == 0


@pytest.mark.parametrize("argv", [
    ("triples", "--g", "--inv", "--q", "5"),
    ("triples", "--g"),
    ("triples",),
    ("lexleast",),
])
def test_usage_errors(capsys, argv):
    code, d = run(capsys, *argv)
    assert code == 2
    assert d["error"]["type"] == "UsageError"


def test_triples_perm_file_field_and_ring(capsys, tmp_path):
    p = tmp_path / "w.json"
    p.write_text("[0, 1, 3, 2]")
    assert run(capsys, "triples", str(p), "--zn", "4")[1]["triples"] == 0
    assert run(capsys, "triples", str(p), "--q", "4")[1]["triples"] == 0
    code, d = run(capsys, "triples", str(p), "--q", "4", "--zn", "4")
    assert code == 2


def test_triples_genperm_file(capsys, tmp_path):
    ap = load_fixture("hall_translation_deleted")
    gp = transversal_from_bijection(ap, 0, 1, (0, 1, 3, 2, 6, 5, 7, 4, 8))
    f = tmp_path / "gp.json"
    f.write_text(json.dumps({"plane": "hall_translation_deleted", "h_class": 0,
                             "v_class": 1, "cells": list(gp.cells)}))
    code, d = run(capsys, "triples", str(f))
    assert code == 0
    assert d["triples"] == 5
    code, d = run(capsys, "quadruples", str(f))
    assert (code, d["quadruples"]) == (0, 0)


def test_bad_perm_files(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    for text in ("not json", '[0, 1, "2"]', "[0, 0, 1]"):
        bad.write_text(text)
        code, d = run(capsys, "triples", str(bad), "--q", "3")
        assert code == 3, text
    code, d = run(capsys, "triples", str(tmp_path / "absent.json"), "--q", "3")
    assert code == 3


def test_minimizers_check_fractional(capsys):
    code, d = run(capsys, "minimizers", "5", "--check-fractional")
    assert code == 0
    assert (d["psi"], d["count"]) == (2, 100)
    assert d["fractional"]["all_recognized"] is True
    assert len(d["fractional"]["params"]) == 100


def test_lexleast_matches_closed_form_at_7(capsys):
    code, d = run(capsys, "lexleast", "7")
    assert code == 0
    assert d["witness"] == list(closed_form_minimizer(field_make(7)).images)


def test_certify_good_and_bad(capsys, tmp_path):
    w = tmp_path / "w.json"
    w.write_text("[0, 1, 2, 4, 3]")
    code, d = run(capsys, "certify", str(w), "--q", "5")
    assert code == 0
    c = d["certificate"]
    assert c["k_star"] == 23
    assert c["lemma_ab_zero"] is True
    assert c["external_point"] == [1, 1, 1]
    w.write_text("[0, 1, 2, 3, 4]")
    code, d = run(capsys, "certify", str(w), "--q", "5")
    assert code == 5
    assert d["error"]["type"] == "CertificateFailure"


def test_node_limit_exit(capsys):
    code, d = run(capsys, "psi", "field", "7", "--node-limit", "10")
    assert code == 4
    assert d["error"]["type"] == "NodeLimitExceeded"


def test_seed_incumbent_flows_through(capsys):
    code, d = run(capsys, "psi", "field", "5", "--seed-incumbent", "2")
    assert (code, d["psi"]) == (0, 2)
    # a seed below the attainable minimum is an input error, not a result
    code, d = run(capsys, "psi", "field", "5", "--seed-incumbent", "1")
    assert code == 3


def test_threads_env_default(capsys, monkeypatch):
    monkeypatch.setenv("COLLINEA_THREADS", "2")
    code, d = run(capsys, "psi", "field", "5", "--parallel-depth", "1")
    assert code == 0
    assert d["config"]["threads"] == 2
    assert d["psi"] == 2
    monkeypatch.setenv("COLLINEA_THREADS", "two")
    assert cli.main(["psi", "field", "5"]) == 2
    capsys.readouterr()


def test_mols_pipeline(capsys, tmp_path, plane3):
    mf = str(tmp_path / "m.json")
    code, d = run(capsys, "mols", "from-plane", plane3, "--h", "3", "--v", "0",
                  "--out", mf)
    assert (code, d["count"], d["written"]) == (0, 2, mf)
    code, d = run(capsys, "mols", "to-plane", mf)
    assert code == 0
    assert d["plane"]["points"] == 9 and len(d["plane"]["lines"]) == 12
    code, d = run(capsys, "mols", "diag-witness", mf)
    assert code == 0
    assert d["witness"] == {"square": 0, "symbol": 0, "rows": [0, 1, 2]}
    code, d = run(capsys, "mols", "diag-witness", mf, "--relabeling", "[2,0,1]")
    assert code == 0 and d["witness"] is not None
    assert run(capsys, "mols", "diag-witness", mf, "--relabeling", "oops")[0] == 2
    assert run(capsys, "mols", "diag-witness", mf, "--relabeling", "[0,0,1]")[0] == 3


def test_plane_validate_reports_all_failures(capsys, tmp_path):
    good = tmp_path / "ok.json"
    good.write_bytes(save_plane(affine_plane(field_make(3))))
    code, d = run(capsys, "plane", "validate", str(good))
    assert (code, d["ok"], d["failures"]) == (0, True, [])

    obj = json.loads(good.read_bytes())
    obj["lines"][0] = [0, 1, 4]  # break one line, keep it parseable
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, d = run(capsys, "plane", "validate", str(bad))
    assert code == 3
    assert d["ok"] is False
    assert len(d["failures"]) > 1  # every violated axiom, not just the first

    bad.write_text("{")
    assert run(capsys, "plane", "validate", str(bad))[0] == 3


def test_plane_delete_line_roundtrip(capsys, tmp_path):
    pf = tmp_path / "pg3.json"
    pf.write_bytes(save_plane(projective_plane(field_make(3))))
    out = str(tmp_path / "a.json")
    code, d = run(capsys, "plane", "delete-line", str(pf), "0", "--out", out)
    assert (code, d["points"], d["deleted_line"]) == (0, 9, 0)
    code, d = run(capsys, "plane", "validate", out)
    assert (code, d["ok"]) == (0, True)
    # affine input is refused
    assert run(capsys, "plane", "delete-line", out, "0")[0] == 2


def test_plane_info_unknown_fixture(capsys):
    code, d = run(capsys, "plane", "info", "no_such_plane")
    assert code == 3
    assert "bundled fixture" in d["error"]["message"]


def test_repro_command(capsys):
    code, d = run(capsys, "repro", "7")
    assert code == 0
    assert d["claim"] == 7 and d["ok"] is True
    assert run(capsys, "repro", "99")[0] == 2
    assert run(capsys, "repro", "seven")[0] == 2


def test_tsv_output(capsys):
    code, lines = run_tsv(capsys, "triples", "--inv", "--q", "8", "--tsv")
    assert code == 0
    assert lines[0] == "triples\t0"
    assert any(l.startswith("# command: triples") for l in lines)


def test_tsv_table(capsys, plane3):
    code, lines = run_tsv(capsys, "psi", "plane", plane3, "--all-pairs", "--tsv")
    assert code == 0
    assert "h\tv\tpsi" in lines
    assert sum(1 for l in lines if l and l[0].isdigit()) == 6


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "collinea.cli", "psi", "field", "3"],
                         capture_output=True, text=True, timeout=120)
    assert out.returncode == 0
    assert json.loads(out.stdout)["psi"] == 1
