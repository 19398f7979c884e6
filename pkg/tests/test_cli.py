import csv
import json

import numpy as np
import pytest
from click.testing import CliRunner

from umtrace import DensityMatrix, parse_circuit
from umtrace.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def rows_of(path):
    with open(path) as fh:
        return list(csv.DictReader(fh))


class TestBuild:
    def test_summary_values(self, runner):
        result = runner.invoke(main, ["build", "--m", "8", "--n", "1",
                                      "--s", "4", "--prop", "2"])
        assert result.exit_code == 0
        assert result.output.strip() == "depth=2 qubits=12"

    def test_minimal_swap_test(self, runner):
        result = runner.invoke(main, ["build", "--m", "2", "--n", "1",
                                      "--s", "1", "--prop", "2"])
        assert result.output.strip() == "depth=1 qubits=3"

    def test_writes_parseable_file(self, runner, tmp_path):
        out = tmp_path / "circuit.txt"
        result = runner.invoke(main, ["build", "--m", "5", "--n", "2",
                                      "--s", "2", "--out", str(out)])
        assert result.exit_code == 0
        circuit = parse_circuit(out.read_text())
        assert circuit.width == 12

    def test_qasm_format(self, runner, tmp_path):
        out = tmp_path / "circuit.qasm"
        runner.invoke(main, ["build", "--m", "3", "--n", "1", "--s", "1",
                             "--format", "qasm", "--out", str(out)])
        assert "cswap" in out.read_text()

    def test_s_out_of_range_exits_2(self, runner):
        result = runner.invoke(main, ["build", "--m", "8", "--n", "1",
                                      "--s", "5"])
        assert result.exit_code == 2
        assert "floor(m/2)" in result.output


class TestTradeoff:
    def test_m9_caption_values(self, runner, tmp_path):
        out = tmp_path / "t.csv"
        assert runner.invoke(main, ["tradeoff", "--m", "9", "--n", "1",
                                    "--out", str(out)]).exit_code == 0
        rows = {int(r["s"]): r for r in rows_of(out)}
        assert [int(rows[s]["prop2_depth"]) for s in (1, 2, 3, 4)] == \
            [8, 4, 3, 2]
        # the one spot where the published drawing beats the formula only
        # under block-restricted packing
        assert int(rows[3]["greedy_depth"]) == 3
        assert int(rows[3]["layer_restricted_depth"]) == 4

    def test_m8_n2_sequential_depths(self, runner, tmp_path):
        out = tmp_path / "t.csv"
        runner.invoke(main, ["tradeoff", "--m", "8", "--n", "2",
                             "--out", str(out)])
        rows = rows_of(out)
        assert [int(r["prop1_depth"]) for r in rows] == [14, 8, 6, 4]

    def test_m2_single_row(self, runner):
        result = runner.invoke(main, ["tradeoff", "--m", "2", "--n", "1"])
        lines = result.output.strip().splitlines()
        assert len(lines) == 2


class TestAnsatzState:
    def test_reference_expectations(self, runner, tmp_path):
        clean = tmp_path / "clean.json"
        noisy = tmp_path / "noisy.json"
        r1 = runner.invoke(main, ["ansatz-state", "--out", str(clean)])
        r2 = runner.invoke(main, ["ansatz-state", "--gamma0", "0.4",
                                  "--out", str(noisy)])
        assert abs(float(r1.output.split("=")[1]) - 0.7547) < 5e-4
        assert abs(float(r2.output.split("=")[1]) - 0.4528) < 5e-4
        DensityMatrix.from_json(clean.read_text())

    def test_zero_angles_give_ground_state(self, runner, tmp_path):
        out = tmp_path / "zero.json"
        result = runner.invoke(main, ["ansatz-state", "--alpha", "0", "0",
                                      "0", "0", "--out", str(out)])
        assert float(result.output.split("=")[1]) == 1.0
        rho = DensityMatrix.from_json(out.read_text())
        assert np.abs(rho.data - np.diag([1.0, 0, 0, 0])).max() < 1e-15


class TestEstimate:
    def test_two_copies_of_pure_state(self, runner, tmp_path):
        state = tmp_path / "s.json"
        report = tmp_path / "report.json"
        runner.invoke(main, ["ansatz-state", "--out", str(state)])
        result = runner.invoke(main, [
            "estimate", "--state", str(state), "--state", str(state),
            "--s", "1", "--seed", "3", "--oracle-check", "--out", str(report)])
        assert result.exit_code == 0
        assert "oracle=1+0j" in result.output
        doc = json.loads(report.read_text())
        assert abs(doc["value"]["re"] - 1.0) < 0.05

    def test_malformed_state_exits_3(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"n": 1, "rows": [[0.1]]}')
        result = runner.invoke(main, ["estimate", "--state", str(bad),
                                      "--state", str(bad), "--s", "1"])
        assert result.exit_code == 3
        assert "bad.json" in result.output

    def test_byte_identical_reruns(self, runner, tmp_path):
        state = tmp_path / "s.json"
        runner.invoke(main, ["ansatz-state", "--gamma0", "0.3",
                             "--out", str(state)])
        args = ["estimate", "--state", str(state), "--state", str(state),
                "--s", "1", "--seed", "11", "--shots", "500"]
        a = runner.invoke(main, args)
        b = runner.invoke(main, args)
        assert a.output == b.output


class TestVD:
    def test_exact_cells_at_tabulated_precision(self, runner, tmp_path):
        out = tmp_path / "vd.csv"
        result = runner.invoke(main, ["vd", "--mode", "exact",
                                      "--gammas", "0.4,0.8",
                                      "--out", str(out)])
        assert result.exit_code == 0
        rows = rows_of(out)
        assert len(rows) == 4  # two variants x two gammas
        assert {r["s"] for r in rows} == {"1", "2"}
        for r in rows:
            assert round(float(r["corrected"]), 4) == 0.7546
            assert round(float(r["noisy"]), 4) == 0.4528
            assert round(float(r["ideal"]), 4) == 0.7547
        assert [int(r["rounds"]) for r in rows] == [2, 2, 4, 4]

    def test_m1_equals_noisy(self, runner, tmp_path):
        out = tmp_path / "vd1.csv"
        runner.invoke(main, ["vd", "--m", "1", "--gammas", "0.4",
                             "--out", str(out)])
        row = rows_of(out)[0]
        assert row["corrected"] == row["noisy"]

    def test_shots_mode_runs(self, runner, tmp_path):
        out = tmp_path / "vds.csv"
        result = runner.invoke(main, ["vd", "--mode", "shots", "--gammas",
                                      "0", "--shots", "4000", "--seed", "9",
                                      "--out", str(out)])
        assert result.exit_code == 0
        rows = rows_of(out)
        assert all(int(r["shots"]) > 0 for r in rows)
        for r in rows:
            assert abs(float(r["corrected"]) - 0.7546) < 0.2

    def test_bad_gammas_exits_2(self, runner):
        result = runner.invoke(main, ["vd", "--gammas", "a,b"])
        assert result.exit_code == 2

    def test_noise_crushed_denominator_exits_4(self, runner):
        result = runner.invoke(main, ["vd", "--gammas", "0.99"])
        assert result.exit_code == 4
        assert "denominator" in result.output


class TestSeedEnvVar:
    def test_env_seed_applies(self, runner, tmp_path):
        state = tmp_path / "s.json"
        runner.invoke(main, ["ansatz-state", "--gamma0", "0.3",
                             "--out", str(state)])
        args = ["estimate", "--state", str(state), "--state", str(state),
                "--s", "1", "--shots", "400"]
        via_env = runner.invoke(main, args, env={"UMTRACE_SEED": "21"})
        via_flag = runner.invoke(main, args + ["--seed", "21"])
        default = runner.invoke(main, args)
        assert via_env.output == via_flag.output
        assert via_env.output != default.output
