import json
import math
import subprocess
import sys

import numpy as np
import pytest

from quditsim import (
    DigitLabel,
    QuditSystem,
    Representation,
    basis_state,
    planewave,
    state_to_dict,
)
from quditsim.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main


def invoke(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_state(tmp_path, name, state):
    path = tmp_path / name
    path.write_text(json.dumps(state_to_dict(state)), encoding="utf-8")
    return str(path)


def basis(digits, d, rep=Representation.Q):
    return basis_state(DigitLabel(tuple(digits), QuditSystem(len(digits), d)), rep)


def test_transform_basis_to_k(tmp_path, capsys):
    path = write_state(tmp_path, "state.json", basis((0, 0), 3))
    code, out, _ = invoke(capsys, ["transform", "--in", path, "--to", "k"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["rep"] == "k"
    amps = np.array([complex(re, im) for re, im in doc["amplitudes"]])
    assert np.allclose(amps, 1 / 3, atol=1e-12)


def test_transform_same_rep_is_noop(tmp_path, capsys):
    path = write_state(tmp_path, "state.json", basis((1, 0), 3))
    code, out, _ = invoke(capsys, ["transform", "--in", path, "--to", "q"])
    assert code == EXIT_OK
    assert json.loads(out) == json.loads((tmp_path / "state.json").read_text())


def test_transform_round_trip(tmp_path, capsys):
    rng = np.random.default_rng(2)
    amps = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    amps /= np.linalg.norm(amps)
    from quditsim import from_amplitudes

    original = from_amplitudes(QuditSystem(2, 3), Representation.Q, amps)
    path = write_state(tmp_path, "state.json", original)

    code, out, _ = invoke(capsys, ["transform", "--in", path, "--to", "k"])
    assert code == EXIT_OK
    (tmp_path / "k.json").write_text(out)
    code, out, _ = invoke(
        capsys, ["transform", "--in", str(tmp_path / "k.json"), "--to", "q"]
    )
    assert code == EXIT_OK
    back = np.array([complex(re, im) for re, im in json.loads(out)["amplitudes"]])
    assert np.max(np.abs(back - amps)) < 1e-12


def test_transform_planewave_file_to_delta(tmp_path, capsys):
    path = write_state(
        tmp_path, "wave.json", planewave(DigitLabel((1,), QuditSystem(1, 2)))
    )
    code, out, _ = invoke(capsys, ["transform", "--in", path, "--to", "k"])
    assert code == EXIT_OK
    amps = np.array([complex(re, im) for re, im in json.loads(out)["amplitudes"]])
    assert np.max(np.abs(amps - [0, 1])) < 1e-12


def test_transform_missing_file(capsys):
    code, out, err = invoke(
        capsys, ["transform", "--in", "/nonexistent/state.json", "--to", "k"]
    )
    assert code == EXIT_IO
    assert out == ""
    assert "error" in err


def test_transform_rejects_unnormalized(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(
        json.dumps(
            {"n": 1, "d": 2, "rep": "q", "amplitudes": [[1.0, 0.0], [1.0, 0.0]]}
        )
    )
    code, out, err = invoke(capsys, ["transform", "--in", str(path), "--to", "k"])
    assert code == EXIT_VALIDATION
    assert out == ""
    assert "not normalized" in err


def test_transform_rejects_malformed_json(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, _ = invoke(capsys, ["transform", "--in", str(path), "--to", "k"])
    assert code == EXIT_VALIDATION


def test_planewave_uniform(capsys):
    code, out, _ = invoke(capsys, ["planewave", "--n", "2", "--d", "3", "--k", "0,0"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["rep"] == "q"
    amps = np.array([complex(re, im) for re, im in doc["amplitudes"]])
    assert np.allclose(amps, 1 / 3, atol=1e-12)
    assert abs(np.sum(np.abs(amps) ** 2) - 1) < 1e-12


def test_planewave_qubit(capsys):
    code, out, _ = invoke(capsys, ["planewave", "--n", "1", "--d", "2", "--k", "1"])
    assert code == EXIT_OK
    amps = np.array([complex(re, im) for re, im in json.loads(out)["amplitudes"]])
    assert np.max(np.abs(amps - [1 / math.sqrt(2), -1 / math.sqrt(2)])) < 1e-12


def test_planewave_malformed_k(capsys):
    code, out, _ = invoke(capsys, ["planewave", "--n", "2", "--d", "3", "--k", "a,b"])
    assert code == EXIT_USAGE and out == ""
    code, out, _ = invoke(capsys, ["planewave", "--n", "2", "--d", "3", "--k", "0,5"])
    assert code == EXIT_USAGE and out == ""
    code, out, _ = invoke(capsys, ["planewave", "--n", "2", "--d", "3", "--k", "1"])
    assert code == EXIT_USAGE and out == ""


def test_partition_reference_tables(capsys):
    code, out, _ = invoke(capsys, ["partition", "--n", "2", "--d", "3", "--k", "0,1"])
    assert code == EXIT_OK
    assert json.loads(out) == {
        "k": [0, 1],
        "classes": [["00", "10", "20"], ["01", "11", "21"], ["02", "12", "22"]],
    }
    code, out, _ = invoke(capsys, ["partition", "--n", "2", "--d", "3", "--k", "2,1"])
    assert json.loads(out) == {
        "k": [2, 1],
        "classes": [["00", "11", "22"], ["01", "12", "20"], ["02", "10", "21"]],
    }


def test_partition_zero_functional(capsys):
    code, out, _ = invoke(capsys, ["partition", "--n", "2", "--d", "3", "--k", "0,0"])
    assert code == EXIT_OK
    classes = json.loads(out)["classes"]
    assert len(classes[0]) == 9 and classes[1] == [] and classes[2] == []


def test_functional_basis_handlers(tmp_path, capsys):
    path = write_state(tmp_path, "handlers.json", basis((2, 1), 3))
    code, out, _ = invoke(
        capsys, ["functional", "--d", "3", "--handlers", path, "--sources", "1,2"]
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["holder_probabilities"] == [0, 1, 0]
    assert doc["state"]["n"] == 5


def test_functional_superposed_handlers(tmp_path, capsys):
    # handlers (b0|0> + b1|1>) (x) |2>, sources (1,1): functionals (0,2) and
    # (1,2) give holder values 2 and 0 with weights |b0|^2 and |b1|^2
    b0, b1 = 0.6, 0.8
    amps = np.zeros(9, dtype=complex)
    amps[2] = b0  # label (0,2)
    amps[5] = b1  # label (1,2)
    from quditsim import from_amplitudes

    handlers = from_amplitudes(QuditSystem(2, 3), Representation.Q, amps)
    path = write_state(tmp_path, "handlers.json", handlers)
    code, out, _ = invoke(
        capsys, ["functional", "--d", "3", "--handlers", path, "--sources", "1,1"]
    )
    assert code == EXIT_OK
    probs = json.loads(out)["holder_probabilities"]
    assert probs[2] == pytest.approx(0.36, abs=1e-12)
    assert probs[0] == pytest.approx(0.64, abs=1e-12)
    assert probs[1] == pytest.approx(0.0, abs=1e-12)


def test_functional_zero_sources(tmp_path, capsys):
    from quditsim import from_amplitudes

    uniform = from_amplitudes(
        QuditSystem(2, 3), Representation.Q, np.ones(9) / 3
    )
    path = write_state(tmp_path, "handlers.json", uniform)
    code, out, _ = invoke(
        capsys, ["functional", "--d", "3", "--handlers", path, "--sources", "0,0"]
    )
    assert code == EXIT_OK
    assert json.loads(out)["holder_probabilities"][0] == pytest.approx(1.0)


def test_functional_dimension_mismatch(tmp_path, capsys):
    path = write_state(tmp_path, "handlers.json", basis((1, 1), 2))
    code, out, err = invoke(
        capsys, ["functional", "--d", "3", "--handlers", path, "--sources", "1,1"]
    )
    assert code == EXIT_VALIDATION
    assert "d=2" in err


def test_functional_source_errors(tmp_path, capsys):
    path = write_state(tmp_path, "handlers.json", basis((2, 1), 3))
    # out-of-range digit is a malformed argument
    code, _, _ = invoke(
        capsys, ["functional", "--d", "3", "--handlers", path, "--sources", "1,5"]
    )
    assert code == EXIT_USAGE
    # wrong count is a mismatch against the handler file
    code, _, _ = invoke(
        capsys, ["functional", "--d", "3", "--handlers", path, "--sources", "1"]
    )
    assert code == EXIT_VALIDATION


def test_run_empty_circuit(tmp_path, capsys):
    state_path = write_state(tmp_path, "state.json", basis((1, 0), 3))
    circuit_path = tmp_path / "circuit.json"
    circuit_path.write_text(json.dumps({"n": 2, "d": 3, "gates": []}))
    code, out, _ = invoke(
        capsys, ["run", "--circuit", str(circuit_path), "--in", state_path]
    )
    assert code == EXIT_OK
    assert json.loads(out) == json.loads((tmp_path / "state.json").read_text())


def test_run_controlled_add(tmp_path, capsys):
    state_path = write_state(tmp_path, "state.json", basis((1, 0), 3))
    circuit_path = tmp_path / "circuit.json"
    circuit_path.write_text(
        json.dumps(
            {
                "n": 2,
                "d": 3,
                "gates": [
                    {"kind": "cadd", "control": 0, "target": 1, "multiplier": 2}
                ],
            }
        )
    )
    code, out, _ = invoke(
        capsys, ["run", "--circuit", str(circuit_path), "--in", state_path]
    )
    assert code == EXIT_OK
    amps = np.array([complex(re, im) for re, im in json.loads(out)["amplitudes"]])
    assert amps[5] == 1  # index of (1, 2)
    assert abs(np.sum(np.abs(amps) ** 2) - 1) < 1e-10


def test_run_system_mismatch(tmp_path, capsys):
    state_path = write_state(tmp_path, "state.json", basis((1, 0, 0), 3))
    circuit_path = tmp_path / "circuit.json"
    circuit_path.write_text(json.dumps({"n": 2, "d": 3, "gates": []}))
    code, _, _ = invoke(
        capsys, ["run", "--circuit", str(circuit_path), "--in", state_path]
    )
    assert code == EXIT_VALIDATION


def test_analyze_basis_state(tmp_path, capsys):
    path = write_state(tmp_path, "state.json", basis((1, 2), 3))
    code, out, _ = invoke(capsys, ["analyze", "--in", path])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["input_rep"] == "q"
    assert doc["expect_q"] == [1, 2]
    assert doc["entropy"]["h_q"] == 0
    assert doc["entropy"]["h_k"] == pytest.approx(math.log(9), abs=1e-12)
    assert doc["entropy"]["sum"] > 0
    assert doc["d_is_prime"] is True
    assert len(doc["k_distributions"]) == 2


def test_analyze_planewave_expectations(tmp_path, capsys):
    path = write_state(
        tmp_path, "wave.json", planewave(DigitLabel((2, 1), QuditSystem(2, 3)))
    )
    code, out, _ = invoke(capsys, ["analyze", "--in", path])
    doc = json.loads(out)
    assert doc["expect_k"][0] == pytest.approx(2, abs=1e-10)
    assert doc["expect_k"][1] == pytest.approx(1, abs=1e-10)


def test_analyze_accepts_k_rep(tmp_path, capsys):
    path = write_state(tmp_path, "state.json", basis((2, 1), 3, Representation.K))
    code, out, _ = invoke(capsys, ["analyze", "--in", path])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["input_rep"] == "k"
    # a k-rep point mass analyzes as the corresponding planewave
    assert doc["expect_k"] == [pytest.approx(2, abs=1e-10), pytest.approx(1, abs=1e-10)]
    assert doc["d_is_prime"] is True


def test_analyze_non_prime_reported(tmp_path, capsys):
    path = write_state(tmp_path, "state.json", basis((0, 0), 6))
    code, out, _ = invoke(capsys, ["analyze", "--in", path])
    assert json.loads(out)["d_is_prime"] is False


def test_verify_passes(capsys):
    code, out, err = invoke(capsys, ["verify", "--d", "3", "--n", "2"])
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["all_pass"] is True
    assert report["seed"] == 0


def test_verify_non_prime(capsys):
    code, out, _ = invoke(capsys, ["verify", "--d", "6", "--n", "2"])
    assert code == EXIT_OK
    assert json.loads(out)["all_pass"] is True


def test_verify_dimension_cap(capsys):
    code, _, err = invoke(capsys, ["verify", "--d", "2", "--n", "13"])
    assert code == EXIT_VALIDATION
    assert "dimension" in err


def test_usage_errors(capsys):
    assert invoke(capsys, [])[0] == EXIT_USAGE
    assert invoke(capsys, ["transform", "--in", "x.json", "--to", "z"])[0] == EXIT_USAGE
    assert invoke(capsys, ["planewave", "--n", "2", "--d", "3"])[0] == EXIT_USAGE
    assert invoke(capsys, ["nonsense"])[0] == EXIT_USAGE


def test_stdout_is_single_json_document(tmp_path, capsys):
    path = write_state(tmp_path, "state.json", basis((0,), 2))
    code, out, err = invoke(capsys, ["analyze", "--in", path])
    assert code == EXIT_OK
    json.loads(out)  # whole stdout parses as one document
    assert err == ""


def test_verify_bad_arguments_are_usage_errors(capsys):
    assert invoke(capsys, ["verify", "--d", "1", "--n", "2"])[0] == EXIT_USAGE
    assert invoke(capsys, ["verify", "--d", "3", "--n", "0"])[0] == EXIT_USAGE


def test_verify_byte_identical_across_processes():
    cmd = [sys.executable, "-m", "quditsim", "verify", "--d", "3", "--n", "2"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout
    assert first.stdout.endswith(b"\n")


def test_commands_byte_identical_in_process(tmp_path, capsys):
    # determinism holds for every command, not just verify
    path = write_state(tmp_path, "state.json", basis((1, 2), 3))
    for argv in (
        ["planewave", "--n", "2", "--d", "3", "--k", "2,1"],
        ["partition", "--n", "2", "--d", "3", "--k", "2,1"],
        ["analyze", "--in", path],
        ["transform", "--in", path, "--to", "k"],
    ):
        _, first, _ = invoke(capsys, argv)
        _, second, _ = invoke(capsys, argv)
        assert first == second and first
