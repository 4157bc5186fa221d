import io
import json
import subprocess
import sys

import numpy as np
import pytest

from pqclab.cli import ENV_TOL, main
from pqclab.io import matrix_to_json

DEPHASING_DOC = {"kind": "named", "name": "dephasing_z"}
IDENTITY_DOC = {"kind": "named", "name": "identity"}
DELTA2_DOC = {"blocks": [[1, 1], [1, 1]]}
FULL2_DOC = {"blocks": [[1, 2]]}

AMP_DAMP_DOC = {
    "kind": "kraus",
    "kraus": [
        matrix_to_json(np.array([[1, 0], [0, np.sqrt(0.5)]], dtype=complex)),
        matrix_to_json(np.array([[0, np.sqrt(0.5)], [0, 0]], dtype=complex)),
    ],
}


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    monkeypatch.delenv(ENV_TOL, raising=False)


@pytest.fixture
def write_doc(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return _write


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassify:
    def test_identity_is_empty(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "classify", write_doc("ch.json", IDENTITY_DOC))
        assert code == 0
        doc = json.loads(out)
        assert doc["command"] == "classify"
        assert doc["exit_code"] == 0
        assert doc["result"]["tag"] == "Empty"
        assert doc["result"]["T"] == [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]

    def test_dephasing_great_circle_with_samples(self, capsys, write_doc, tmp_path):
        csv_path = tmp_path / "samples.csv"
        code, out, _ = run_cli(
            capsys,
            "classify",
            write_doc("ch.json", DEPHASING_DOC),
            "--samples",
            "4",
            "--out",
            str(csv_path),
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["tag"] == "GreatCircle"
        assert doc["result"]["normal"] == [0.0, 0.0, 1.0]
        assert len(doc["result"]["samples"]) == 4
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "theta,rx,ry,rz,re0,im0,re1,im1"
        assert len(lines) == 5

    def test_antipodal_states_are_reported(self, capsys, write_doc):
        doc_in = {
            "kind": "random_unitary",
            "probs": [0.5, 0.0, 0.25, 0.25],
            "unitaries": [
                [[1, 0], [0, 1]],
                [[0, 1], [1, 0]],
                [[[0, 0], [0, -1]], [[0, 1], [0, 0]]],
                [[1, 0], [0, -1]],
            ],
        }
        code, out, _ = run_cli(capsys, "classify", write_doc("ch.json", doc_in))
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["tag"] == "AntipodalPair"
        assert len(doc["result"]["states"]) == 2

    def test_non_unital_exits_2(self, capsys, write_doc):
        code, _, err = run_cli(capsys, "classify", write_doc("ch.json", AMP_DAMP_DOC))
        assert code == 2
        assert "NotUnital" in err

    def test_unreadable_json_exits_1(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{ not json")
        code, _, err = run_cli(capsys, "classify", str(bad))
        assert code == 1
        assert "error" in err

    def test_missing_file_exits_1(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "classify", str(tmp_path / "absent.json"))
        assert code == 1

    def test_stdin_input(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(DEPHASING_DOC)))
        code, out, _ = run_cli(capsys, "classify", "-")
        assert code == 0
        assert json.loads(out)["result"]["tag"] == "GreatCircle"


class TestCheckPqc:
    def _files(self, write_doc, states):
        ch = write_doc("ch.json", DEPHASING_DOC)
        st = write_doc("states.json", {"states": states})
        rho = write_doc("rho0.json", {"rho0": matrix_to_json(np.eye(2) / 2)})
        return ch, st, rho

    def test_equator_states_pass(self, capsys, write_doc):
        s = 1 / np.sqrt(2)
        ch, st, rho = self._files(write_doc, [[[s, 0], [s, 0]], [[s, 0], [0, s]]])
        code, out, _ = run_cli(capsys, "check-pqc", ch, st, rho)
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["verdict"] is True
        assert max(doc["result"]["residuals"]) <= 1e-9

    def test_false_verdict_still_exits_0(self, capsys, write_doc):
        ch, st, rho = self._files(write_doc, [[[1, 0], [0, 0]]])
        code, out, _ = run_cli(capsys, "check-pqc", ch, st, rho)
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["verdict"] is False
        assert abs(doc["result"]["residuals"][0] - 0.5) < 1e-12

    def test_dimension_mismatch_exits_2(self, capsys, write_doc):
        ch = write_doc("ch.json", DEPHASING_DOC)
        st = write_doc("states.json", {"states": [[1, 0, 0]]})
        rho = write_doc("rho0.json", {"rho0": matrix_to_json(np.eye(2) / 2)})
        code, _, err = run_cli(capsys, "check-pqc", ch, st, rho)
        assert code == 2
        assert "DimensionMismatch" in err

    def test_missing_states_key_exits_1(self, capsys, write_doc):
        ch = write_doc("ch.json", DEPHASING_DOC)
        st = write_doc("states.json", {"vectors": []})
        rho = write_doc("rho0.json", {"rho0": matrix_to_json(np.eye(2) / 2)})
        code, _, _ = run_cli(capsys, "check-pqc", ch, st, rho)
        assert code == 1


class TestTraceVectors:
    def test_onb_for_diagonals(self, capsys, write_doc):
        code, out, _ = run_cli(
            capsys, "trace-vectors", write_doc("alg.json", DELTA2_DOC), "--onb"
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["result"]["onb"]) == 2
        assert doc["result"]["gram_deviation"] <= 1e-12
        assert doc["result"]["max_violation"] <= 1e-12

    def test_onb_reports_nonexistence(self, capsys, write_doc):
        code, out, _ = run_cli(
            capsys, "trace-vectors", write_doc("alg.json", FULL2_DOC), "--onb"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["no_trace_vectors"] is True
        assert doc["result"]["blocks"] == [[1, 2]]

    def test_bare_reports_existence(self, capsys, write_doc):
        code, out, _ = run_cli(capsys, "trace-vectors", write_doc("alg.json", DELTA2_DOC))
        doc = json.loads(out)
        assert code == 0
        assert doc["result"]["has_trace_vector"] is True
        assert doc["result"]["dim"] == 2

    def test_check_mode(self, capsys, write_doc):
        s = 1 / np.sqrt(2)
        vec_file = write_doc("v.json", {"vector": [[s, 0], [s, 0]]})
        code, out, _ = run_cli(
            capsys, "trace-vectors", write_doc("alg.json", DELTA2_DOC), "--check", vec_file
        )
        assert code == 0
        assert json.loads(out)["result"]["passed"] is True

    def test_check_mode_with_rho0(self, capsys, write_doc):
        vec_file = write_doc("v.json", {"vector": [[np.sqrt(0.75), 0], [0.5, 0]]})
        rho = write_doc("rho0.json", {"rho0": matrix_to_json(np.diag([0.75, 0.25]))})
        code, out, _ = run_cli(
            capsys,
            "trace-vectors",
            write_doc("alg.json", DELTA2_DOC),
            "--check",
            vec_file,
            "--rho0",
            rho,
        )
        assert code == 0
        assert json.loads(out)["result"]["passed"] is True

    def test_wrt_mode_constructs_a_vector(self, capsys, write_doc):
        rho = write_doc("rho0.json", {"rho0": matrix_to_json(np.diag([0.75, 0.25]))})
        code, out, _ = run_cli(
            capsys, "trace-vectors", write_doc("alg.json", DELTA2_DOC), "--rho0", rho
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["passed"] is True
        amps = [complex(re, im) for re, im in doc["result"]["vector"]]
        assert abs(abs(amps[0]) - np.sqrt(0.75)) < 1e-12

    def test_wrt_mode_infeasible_exits_2(self, capsys, write_doc):
        rho = write_doc("rho0.json", {"rho0": matrix_to_json(np.eye(2) / 2)})
        code, _, err = run_cli(
            capsys, "trace-vectors", write_doc("alg.json", FULL2_DOC), "--rho0", rho
        )
        assert code == 2
        assert "Infeasible" in err


class TestCondexp:
    def test_choi_emission(self, capsys, write_doc):
        code, out, _ = run_cli(
            capsys, "condexp", write_doc("alg.json", DELTA2_DOC), "--emit", "choi"
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["result"]["choi"]) == 4

    def test_transfer_with_verification(self, capsys, write_doc):
        code, out, _ = run_cli(
            capsys,
            "condexp",
            write_doc("alg.json", DELTA2_DOC),
            "--emit",
            "transfer",
            "--verify",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["transfer"]["T"] == [
            [0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0],
        ]
        assert doc["result"]["axioms"]["passed"] is True

    def test_non_unital_algebra_exits_2(self, capsys, write_doc):
        doc_in = {"blocks": [[1, 1]], "zero_dim": 1}
        code, _, err = run_cli(capsys, "condexp", write_doc("alg.json", doc_in))
        assert code == 2
        assert "NotUnitalAlgebra" in err


class TestDemoFrame:
    def test_end_to_end(self, capsys):
        code, out, _ = run_cli(capsys, "demo-frame")
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["axioms"]["passed"] is True
        assert abs(doc["result"]["triplet_weight"] - 0.75) <= 1e-9
        assert abs(doc["result"]["singlet_weight"] - 0.25) <= 1e-9
        assert doc["result"]["is_pqc"] is True


class TestPlumbing:
    def test_text_format(self, capsys, write_doc):
        code, out, _ = run_cli(
            capsys, "classify", write_doc("ch.json", IDENTITY_DOC), "--format", "text"
        )
        assert code == 0
        assert out.startswith("command: classify\n")
        assert out.rstrip().endswith("exit_code: 0")

    def test_env_tolerance_is_used(self, capsys, write_doc, monkeypatch):
        monkeypatch.setenv(ENV_TOL, "1e-6")
        code, out, _ = run_cli(capsys, "classify", write_doc("ch.json", IDENTITY_DOC))
        assert code == 0
        assert json.loads(out)["tolerance"] == 1e-6

    def test_flag_overrides_env(self, capsys, write_doc, monkeypatch):
        monkeypatch.setenv(ENV_TOL, "1e-6")
        code, out, _ = run_cli(
            capsys, "classify", write_doc("ch.json", IDENTITY_DOC), "--tol", "1e-12"
        )
        assert code == 0
        assert json.loads(out)["tolerance"] == 1e-12

    def test_unparsable_env_tolerance_exits_1(self, capsys, write_doc, monkeypatch):
        monkeypatch.setenv(ENV_TOL, "tiny")
        code, _, err = run_cli(capsys, "classify", write_doc("ch.json", IDENTITY_DOC))
        assert code == 1
        assert ENV_TOL in err

    def test_output_is_deterministic(self, capsys, write_doc):
        path = write_doc("ch.json", DEPHASING_DOC)
        _, first, _ = run_cli(capsys, "classify", path, "--samples", "8")
        _, second, _ = run_cli(capsys, "classify", path, "--samples", "8")
        assert first == second

    def test_unknown_command_is_a_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["teleport"])
        assert exc.value.code == 2

    def test_module_entry_point(self, write_doc):
        path = write_doc("ch.json", IDENTITY_DOC)
        proc = subprocess.run(
            [sys.executable, "-m", "pqclab.cli", "classify", path],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["result"]["tag"] == "Empty"
