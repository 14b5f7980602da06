""" Test the command line. """

# pylint: disable=missing-docstring

import json
import os

import numpy as np
import pytest
from numpy.testing import assert_allclose

from holevo_measurement import cli
from holevo_measurement.scenario import Scenario
from holevo_measurement.util import HERMITIAN_TOL, UNITARY_TOL

CNOT_SCENARIO = {
    "system": {"probs": [0.3, 0.7], "phases": [0.0, 0.0]},
    "apparatus": {"eigenvalues": [1.0, 0.0], "basis": None},
    "interaction": {"kind": "shift"},
    "povm": None,
    "options": {"tolerance": 1e-9, "seed": 0, "restarts": 2},
}


@pytest.fixture
def write_scenario(tmp_path):
    def write(**sections):
        raw = json.loads(json.dumps(CNOT_SCENARIO))
        raw.update(sections)
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(raw, indent=2))
        return str(path)

    return write


class TestSimulate:
    def test_cnot(self, write_scenario, tmp_path):
        out = tmp_path / "report.json"
        args = ["simulate", "--scenario", write_scenario(), "--out", str(out)]
        assert cli.main(args) == 0
        report = json.loads(out.read_text())
        assert report["chi_bits"] == pytest.approx(0.8813, abs=1e-3)
        assert report["accessible_info_bits"] >= report["chi_bits"] - 1e-6
        assert report["povm_info_bits"] is None
        assert report["saturated"]
        assert report["bound_satisfied"]
        assert report["von_neumann_defect"] <= 1e-12
        assert report["provenance"]["seed"] == 0

    def test_mixed_apparatus(self, write_scenario):
        path = write_scenario(
            system={"probs": [0.5, 0.5]},
            apparatus={"eigenvalues": [0.9, 0.1]},
        )
        report = cli.cmd_simulate(path, os.devnull)
        assert report.chi_bits == pytest.approx(0.5310, abs=1e-3)
        assert report.saturated

    def test_maximally_mixed_apparatus(self, write_scenario):
        path = write_scenario(apparatus={"eigenvalues": [0.5, 0.5]})
        report = cli.cmd_simulate(path, os.devnull)
        assert report.chi_bits == pytest.approx(0.0, abs=1e-12)
        assert report.information_loss_bits == pytest.approx(0.8813, abs=1e-3)

    def test_povm(self, write_scenario):
        # measuring in the |+>, |-> basis reveals nothing about CNOT outcomes
        plus_minus = [[[0.5, 0.5], [0.5, 0.5]], [[0.5, -0.5], [-0.5, 0.5]]]
        path = write_scenario(povm=plus_minus)
        report = cli.cmd_simulate(path, os.devnull)
        assert report.accessible_info_bits is None
        assert report.povm_info_bits == pytest.approx(0.0, abs=1e-12)
        assert report.bound_satisfied
        assert not report.saturated

    def test_deterministic(self, write_scenario):
        path = write_scenario(apparatus={"eigenvalues": [0.8, 0.2]})
        a = cli.cmd_simulate(path, os.devnull)._asdict()
        b = cli.cmd_simulate(path, os.devnull)._asdict()
        del a["provenance"]["timestamp"]
        del b["provenance"]["timestamp"]
        assert a == b

    def test_tol_override(self, write_scenario):
        report = cli.cmd_simulate(write_scenario(), os.devnull, tol=0.5)
        assert report.provenance["tolerances"]["bound"] == 0.5
        assert report.provenance["tolerances"]["hermitian"] == HERMITIAN_TOL
        assert report.provenance["tolerances"]["unitary"] == UNITARY_TOL

    def test_csv(self, write_scenario, capsys):
        assert cli.main(["simulate", "--scenario", write_scenario(), "--csv"]) == 0
        header = capsys.readouterr().out.splitlines()[0].split(",")
        assert "chi_bits" in header
        assert "provenance.seed" in header

    def test_parse_error(self, write_scenario, capsys):
        path = write_scenario(apparatus={"eigenvalues": [1.5, -0.5]})
        assert cli.main(["simulate", "--scenario", path]) == 2
        assert "apparatus" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        path = str(tmp_path / "nope.json")
        assert cli.main(["simulate", "--scenario", path]) == 2

    def test_non_unitary_blocks(self, write_scenario, capsys):
        blocks = [[[1, 0], [0, 1]], [[1.1, 0], [0, 1.1]]]
        path = write_scenario(interaction={"kind": "blocks", "blocks": blocks})
        assert cli.main(["simulate", "--scenario", path]) == 3
        assert "non-unitary" in capsys.readouterr().err

    def test_negative_seed(self, write_scenario, capsys):
        path = write_scenario(options={"tolerance": 1e-9, "seed": -1, "restarts": 2})
        assert cli.main(["simulate", "--scenario", path]) == 2
        assert "seed must be a nonnegative integer" in capsys.readouterr().err

    @pytest.mark.parametrize("tolerance", ["abc", [1e-9], {"x": 1}])
    def test_bad_tolerance(self, write_scenario, capsys, tolerance):
        path = write_scenario(options={"tolerance": tolerance, "seed": 0})
        assert cli.main(["simulate", "--scenario", path]) == 2
        err = capsys.readouterr().err
        assert "options: tolerance must be a number" in err
        assert "line " in err

    @pytest.mark.parametrize("tol", ["nan", "inf", "-1"])
    def test_bad_tol_override(self, write_scenario, tol):
        assert cli.main(["simulate", "--scenario", write_scenario(), "--tol", tol]) == 2

    def test_blocks_checked_in_computational_basis(self, write_scenario, monkeypatch):
        seen = []
        check = cli.check_conditions

        def spy(u, rho, basis=None):
            seen.append(basis)
            return check(u, rho, basis)

        monkeypatch.setattr(cli, "check_conditions", spy)
        blocks = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
        path = write_scenario(
            apparatus={"eigenvalues": [0.5, 0.5]},
            interaction={"kind": "blocks", "blocks": blocks},
        )
        report = cli.cmd_simulate(path, os.devnull)
        assert_allclose(seen[0], np.eye(2))
        assert report.von_neumann_defect == 0.0


class TestVerifyBound:
    def test_passes(self, capsys):
        args = ["verify-bound", "--dim", "2", "--trials", "30", "--seed", "1"]
        assert cli.main(args) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["failures"] == []
        assert summary["max_gap_bits"] <= 1e-9

    def test_dim_four(self):
        summary = cli.cmd_verify_bound(4, 20, 0)
        assert not summary.failures

    @pytest.mark.parametrize(
        "args",
        [
            ["--dim", "2", "--trials", "0"],
            ["--dim", "9", "--trials", "5"],
            ["--dim", "2", "--trials", "1", "--seed", "-1"],
        ],
    )
    def test_usage(self, args):
        assert cli.main(["verify-bound"] + args) == 2

    def test_violation(self, monkeypatch, capsys):
        monkeypatch.setattr(cli, "random_bound_trial", lambda dim, rng: (1.0, 0.5))
        args = ["verify-bound", "--dim", "2", "--trials", "2", "--seed", "7"]
        assert cli.main(args) == 4
        err = capsys.readouterr().err
        assert "[7, 0]" in err and "[7, 1]" in err


class TestSearchCounterexample:
    def test_qubit(self, capsys):
        assert cli.main(["search-counterexample", "--dim", "2", "--trials", "10"]) == 0
        summary = json.loads(capsys.readouterr().out)
        assert summary["findings"] == []
        assert summary["max_commutator"] <= 1e-6

    def test_dump(self, monkeypatch, tmp_path):
        # every family counts as a finding
        monkeypatch.setattr(cli, "FINDING_TOL", -1.0)
        summary = cli.cmd_search_counterexample(3, 2, 4, str(tmp_path))
        assert len(summary.findings) + summary.non_converged == 2
        for finding in summary.findings:
            assert finding.von_neumann_defect <= 1e-8
            s = Scenario.load(finding.path)
            report = cli.run_scenario(s)
            assert report.von_neumann_defect <= 1e-8

    def test_negative_seed(self):
        args = ["search-counterexample", "--dim", "2", "--trials", "1", "--seed", "-1"]
        assert cli.main(args) == 2

    def test_non_convergence_counted(self, monkeypatch):
        monkeypatch.setattr(cli, "family_factory", lambda name: lambda: _Failing())
        summary = cli.cmd_search_counterexample(3, 3, 0)
        assert summary.non_converged == 3
        assert not summary.findings


class _Failing:
    def generate(self, d, rng):
        raise cli.NoFamilyFoundError(1.0, 0)


class TestMain:
    def test_bad_log_level(self, monkeypatch):
        monkeypatch.setenv("HOLEVO_LOG", "loud")
        assert cli.main(["verify-bound", "--dim", "2", "--trials", "1"]) == 2

    def test_usage(self):
        assert cli.main([]) == 2
        assert cli.main(["frobnicate"]) == 2
