import json
import subprocess
import sys

import pytest

from hypercone import cli
from hypercone.errors import ConsistencyError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_equations_json(capsys):
    code, out, _ = run(capsys, "equations", "--g", "2", "--k", "6", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["generator_count"] == 43 and data["parametrization_ok"]
    assert data["generators"][0]["text"] == "z0*z2 - z1^2"


def test_json_is_byte_identical(capsys):
    outs = {run(capsys, "components", "--g", "2", "--curve", "roots=1,2,3,4,5,6", "--json")[1] for _ in range(2)}
    assert len(outs) == 1


def test_t1(capsys):
    code, out, _ = run(capsys, "t1", "--g", "2", "--k", "6", "--nu", "-1", "--json")
    assert code == 0
    assert json.loads(out)["t1"] == [{"nu": -1, "oracle": 6, "formula": 6}]


def test_t1_points(capsys):
    code, out, _ = run(capsys, "t1", "--g", "2", "--points", "12", "--nu", "-1", "--json")
    assert json.loads(out)["t1"][0]["oracle"] == 12


def test_t2(capsys):
    code, out, _ = run(capsys, "t2", "--g", "3", "--points", "16", "--json")
    data = json.loads(out)
    assert code == 0 and data["main_lemma"] == data["t2_total"] == 17


def test_versal_and_basecount(capsys):
    code, out, _ = run(capsys, "versal", "--g", "2", "--json")
    data = json.loads(out)
    assert data["first_order_ok"] and data["hilbert"] == data["hilbert_expected"]
    code, out, _ = run(capsys, "basecount", "--g", "2", "--json")
    data = json.loads(out)
    assert data["num_points"] == data["smooth"] == 32 and data["prime"] <= 500


def test_components_fallback_nodes(capsys):
    code, out, _ = run(capsys, "components", "--g", "2", "--json")
    data = json.loads(out)
    assert not data["nodes_from_curve"] and data["count"] == 32 and data["theorem_count"] == 32


def test_topology_text(capsys):
    code, out, _ = run(capsys, "topology", "--g", "2")
    assert code == 0 and "Z^4 + Z/12" in out


def test_report(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "report", "--g", "2", "--json", "--out", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert data["basecount"]["num_points"] == 32
    assert data["topology"]["count"] == 17
    assert data["components"]["count"] == 32


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"g": 2, "coeffs": [1, 1, 0, 0, 0, 0, 1], "k": 5, "divisor_points": [[0, 1]]}))
    code, out, _ = run(capsys, "equations", "--config", str(cfg), "--json")
    data = json.loads(out)
    assert code == 0 and data["d"] == 11 and data["parametrization_ok"]


@pytest.mark.parametrize("argv,status", [
    (["equations", "--g", "2", "--curve", "roots=1,1,2,3,4,5"], 2),
    (["equations", "--g", "2", "--curve", "roots=a,b"], 2),
    (["equations"], 2),
    (["equations", "--config", "/nonexistent.json"], 2),
    (["t2", "--g", "2", "--k", "3"], 3),
    (["equations", "--g", "2", "--k", "3"], 3),
    (["topology", "--g", "1"], 3),
])
def test_exit_codes(capsys, argv, status):
    code, out, err = run(capsys, *argv)
    assert code == status
    assert "error" in json.loads(err)


def test_consistency_exit_code(capsys, monkeypatch):
    def boom(args):
        raise ConsistencyError("ranks disagree")
    monkeypatch.setitem(cli.HANDLERS, "topology", boom)
    code, _, err = run(capsys, "topology", "--g", "2")
    assert code == 4 and json.loads(err)["error"] == ConsistencyError("x").code


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hypercone", "topology", "--g", "2", "--json"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["count"] == 17
