import json
import subprocess
import sys

import pytest

from fuselift import serialize
from fuselift.cli import main
from fuselift.fusion import ring_isomorphic
from bundled import load
from oracles import hand_ising


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_ring(capsys):
    code, out, _ = run(capsys, "check", "ising.ring.json")
    assert code == 0 and "all identities hold" in out


def test_check_extension_prints_dperp(capsys):
    code, out, _ = run(capsys, "check", "k2.ext.json")
    assert code == 0
    assert "D^perp = {0, 2}" in out


def test_check_inverse_and_catalog_name(capsys):
    assert run(capsys, "check", "sl2k2.inv.json")[0] == 0
    assert run(capsys, "check", "sl2@3")[0] == 0
    assert run(capsys, "check", "lattice@2,1")[0] == 0


def test_negative_multiplicity_file_is_a_parse_error(capsys, tmp_path):
    d = serialize.ring_to_dict(hand_ising())
    d["fusion"][3]["n"] = -2
    p = tmp_path / "neg.json"
    p.write_text(json.dumps(d))
    code, _, err = run(capsys, "check", str(p))
    assert code == 2 and "negative multiplicity" in err


def test_invalid_ring_exits_one(capsys, tmp_path):
    d = serialize.ring_to_dict(hand_ising())
    d["fusion"].append({"a": "e", "b": "e", "c": "e", "n": 1})
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    code, _, err = run(capsys, "check", str(p))
    assert code == 1 and "(X Y) Z = X (Y Z)" in err


def test_invalid_extension_exits_one(capsys, tmp_path):
    d = serialize.to_dict(load("k2.ext.json"))
    d["grading"]["[2]"] = "s"
    p = tmp_path / "bad.ext.json"
    p.write_text(json.dumps(d))
    code, _, err = run(capsys, "check", str(p))
    assert code == 1 and "not a simple current" in err


def test_missing_file_exits_two(capsys):
    assert run(capsys, "check", "no/such/file.json")[0] == 2


def test_extend_rows(capsys):
    code, out, _ = run(capsys, "extend", "k2.ext.json")
    assert code == 0 and len(out.splitlines()) == 1 + 3
    code, out, _ = run(capsys, "extend", "k2.ext.json", "--twisted")
    rows = out.splitlines()[1:]
    assert len(rows) == 6 and len({r.split()[0] for r in rows}) == 2
    code, out, _ = run(capsys, "extend", "trivial.ext.json")
    assert len(out.splitlines()) == 2


def test_extend_json(capsys):
    code, out, _ = run(capsys, "extend", "k2.ext.json", "--format", "json")
    d = json.loads(out)
    assert [s["name"] for s in d["characters"][0]["sectors"]] == ["(i0,0)", "(i0,2)", "(i1,1)"]


def test_fuse(capsys):
    code, out, _ = run(capsys, "fuse", "k2.ext.json", "(i1,1)", "(i1,1)")
    assert code == 0 and out == "(i0,0):1 (i0,2):1\n"


def test_fuse_non_canonical_name_suggests(capsys):
    code, _, err = run(capsys, "fuse", "k2.ext.json", "(i1,3)", "(i1,1)")
    assert code == 1 and "did you mean (i1,1)" in err


def test_derive_writes_ising(capsys, tmp_path):
    out = tmp_path / "w.json"
    assert run(capsys, "derive", "sl2k2.inv.json", "--out", str(out))[0] == 0
    R = serialize.ring_from_dict(json.loads(out.read_text()))
    assert ring_isomorphic(R, hand_ising()) is not None


def test_deform_writes_z12_problem(capsys, tmp_path):
    out = tmp_path / "d.json"
    assert run(capsys, "deform", "k2.ext.json", "1", "--out", str(out))[0] == 0
    d = json.loads(out.read_text())
    assert d["V"]["group"] == [12]
    code, text, _ = run(capsys, "extend", str(out))
    assert len(text.splitlines()) == 1 + 9


def test_deform_rejects_negative_parameter(capsys):
    assert run(capsys, "deform", "k2.ext.json", "-1")[0] == 1


def test_build_ring(capsys):
    code, out, _ = run(capsys, "build-ring", "k2.ext.json")
    assert code == 0
    assert json.loads(out)["labels"] == ["(i0,0)", "(i0,2)", "(i1,1)"]


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "sl2@k" in out and "k2.ext.json" in out
    code, out, _ = run(capsys, "catalog", "parafermion@2")
    assert len(json.loads(out)["labels"]) == 3
    assert run(capsys, "catalog", "nothing@1")[0] == 1


def test_catalog_env_dir(capsys, tmp_path, monkeypatch):
    (tmp_path / "mine.ring.json").write_text(serialize.dumps(serialize.to_dict(hand_ising())))
    monkeypatch.setenv("FUSELIFT_CATALOG_DIR", str(tmp_path))
    assert run(capsys, "check", "mine.ring.json")[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["extend", "k3.ext.json", "--twisted"],
        ["build-ring", "k4.ext.json"],
        ["derive", "sl2k3.inv.json"],
        ["catalog", "ext@3"],
    ],
)
def test_output_is_byte_identical_across_processes(argv):
    runs = [subprocess.run([sys.executable, "-m", "fuselift.cli", *argv], capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]
