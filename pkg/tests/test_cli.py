import io
import json
import subprocess
import sys

import pytest

from conftest import FIXTURES
from torkh.cli import run


def call(*argv):
    out = io.StringIO()
    code = run([str(a) for a in argv], out)
    text = out.getvalue()
    assert text.endswith("\n") and text.count("\n") == 1
    return code, json.loads(text), text


def fx(rel):
    return FIXTURES / rel


def test_homology_of_unknot():
    code, data, _ = call("homology", fx("diagrams/unknot0.json"))
    assert code == 0
    rows = {(g["q"], h["hdeg"]): h["rank"] for g in data["gradings"] for h in g["homology"]}
    assert rows == {(1, 0): 1, (-1, 0): 1}
    assert all(g["h_class"] == [] for g in data["gradings"])


def test_moduli_boundary_dodecagon():
    code, data, text = call("moduli-boundary", fx("configs/dq.json"),
                            "--pairing", "q=lambdabar", "--lambda", "1,0")
    assert (code, data) == (0, {"cycles": [12]})
    assert text == '{"cycles": [12]}\n'


def test_verify_moves():
    code, data, _ = call("verify-moves", fx("moves/r1_1_a.json"), fx("moves/r1_1_b.json"))
    assert (code, data) == (0, {"equal": True})


def test_verify_dsquare_on_list_file():
    code, data, _ = call("verify-dsquare", fx("random_diagrams.json"))
    assert (code, data) == (0, {"d_squared_zero": True, "diagrams": 100})


def test_analyze_config():
    code, data, _ = call("analyze-config", fx("configs/ladybug.json"))
    assert code == 0
    assert data["type"] == "L0" and data["multiplicity"] == 2 and data["poset_size"] == 6


def test_analyze_config_output_reparses():
    _, data, _ = call("analyze-config", fx("configs/worked_example.json"))
    path = FIXTURES.parent / "tests" / "_tmp_reparse.json"
    try:
        path.write_text(json.dumps(data["configuration"]))
        _, again, _ = call("analyze-config", path)
    finally:
        path.unlink()
    assert again == data


def test_moduli_type():
    code, data, _ = call("moduli-type", fx("diagrams/lines_dq.json"),
                         "--pairing", "q=lambdabar", "--lambda", "1,0")
    assert (code, data) == (0, {"type": "D"})
    _, data, _ = call("moduli-type", fx("diagrams/lines_dq.json"), "--lambda", "1,0")
    assert data == {"type": "C"}


def test_multivalued():
    code, data, _ = call("multivalued", fx("configs/two_ladybugs.json"), "--lambda", "1,0")
    assert code == 0 and sorted(len(r["cycles"]) for r in data) == [1, 1, 2, 2]


def test_census():
    code, data, _ = call("census", fx("configs/index4_case05.json"), "--lambda", "1,0",
                         "--pairing", "q=lambdabar")
    assert code == 0
    assert data == {"faces": {"DQ[(0,1),(1,0),(1,1)]": 1, "DQ'[(0,1),(1,0),(1,1)]": 1},
                    "branch_points": 2}


def test_lambda_required_on_torus():
    code, data, _ = call("moduli-boundary", fx("configs/dq.json"))
    assert code == 2 and data["error"] == "PARSE_ERROR"


def test_lambda_optional_in_the_plane():
    code, data, _ = call("multivalued", fx("configs/ladybug.json"))
    assert code == 1 and data["error"] == "WRONG_INDEX"


def test_error_codes():
    code, data, _ = call("homology", fx("missing.json"))
    assert code == 2 and data["error"] == "IO_ERROR" and "detail" in data
    code, data, _ = call("frobnicate", "x")
    assert code == 2 and data["error"] == "PARSE_ERROR"
    code, data, _ = call("moduli-boundary", fx("configs/q.json"), "--lambda", "1,0")
    assert code == 1 and data["error"] == "WRONG_INDEX"
    code, data, _ = call("moduli-boundary", fx("configs/dq.json"), "--lambda", "2,0")
    assert code == 1 and data["error"] == "MALFORMED"
    code, data, _ = call("census", fx("configs/dq.json"), "--lambda", "1,x")
    assert code == 2


def test_validation_failure_exit_code(tmp_path):
    data = json.loads(fx("diagrams/unknot0.json").read_text())
    data["edges"][0]["winding"] = [1, 0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = call("homology", bad)
    assert code == 1 and out["error"] == "WINDING_MISMATCH"
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    code, out, _ = call("homology", broken)
    assert code == 2 and out["error"] == "PARSE_ERROR"


def test_output_is_byte_identical():
    args = ("census", fx("configs/index4_case04.json"), "--lambda", "1,0")
    assert call(*args)[2] == call(*args)[2]
    args = ("homology", fx("diagrams/trefoil.json"))
    assert call(*args)[2] == call(*args)[2]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torkh", "moduli-boundary",
                           str(fx("configs/dq.json")), "--lambda", "1,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"cycles": [6, 6]}
