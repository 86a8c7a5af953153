"""Tests for the command-line interface."""

import json
from pathlib import Path
from unittest import mock

import pytest

from rbolab import cli
from rbolab.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, build_parser, main, sample_cochain
from rbolab.group import operator_by_name
from rbolab.kernel import DivergenceError

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Settings come from defaults only."""
    for name in ("RBOLAB_CHECK_TOL", "RBOLAB_SEED", "RBOLAB_SAMPLES", "RBOLAB_RADIUS", "RBOLAB_FORMAT", "RBOLAB_KMAX"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("RBOLAB_CONFIG", "/nonexistent/rbolab/config.env")
    monkeypatch.setenv("DEBUG", "false")


def run_json(capsys, *argv):
    code = main(["--format", "json", *argv])
    return code, json.loads(capsys.readouterr().out)


class TestArgumentParsing:
    """Argument parsing."""

    def test_parser_requires_command(self):
        """Parser should require a subcommand."""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_check_collects_repeated_options(self):
        """--rbo and --group-operator may repeat."""
        args = build_parser().parse_args(["check", "--rbo", "a.json", "--rbo", "b.json", "--group-operator", "up2"])
        assert args.rbo == [Path("a.json"), Path("b.json")]
        assert args.group_operator == ["up2"]
        assert args.mybe == []

    def test_seed_accepts_hex(self):
        """Seeds may be written in hexadecimal."""
        args = build_parser().parse_args(["--seed", "0x10", "cohomology", "x.json"])
        assert args.seed == 16

    def test_operator_source_is_exclusive(self):
        """A file and a registry operator cannot both be given."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["split", "x.json", "--operator", "euclidean(2)"])

    def test_operator_source_is_required(self):
        """One of a file or a registry operator is needed."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["deform"])

    def test_degree_choices(self):
        """Van Est degrees are limited to 1 and 2."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["vanest", "--group", "up2", "--degree", "3"])


class TestCheckCommand:
    """check subcommand."""

    def test_passing_operator(self, capsys):
        """A valid operator exits 0 with the schema tag."""
        code, payload = run_json(capsys, "check", "--rbo", str(FIXTURES / "euclidean2.json"))
        assert code == EXIT_OK
        assert payload["schema"] == "rbo-lab/1"
        assert payload["passed"] is True
        assert payload["reports"][0]["name"] == "rbo:euclidean2"

    def test_failing_operator(self, capsys):
        """A perturbed operator exits 1."""
        code, payload = run_json(capsys, "check", "--rbo", str(FIXTURES / "euclidean2_perturbed.json"))
        assert code == EXIT_FAILED
        assert payload["passed"] is False

    def test_malformed_file(self, capsys):
        """Unreadable input exits 2 with a message on stderr."""
        code = main(["check", "--rbo", str(FIXTURES / "malformed.json")])
        assert code == EXIT_INPUT
        assert "invalid JSON" in capsys.readouterr().err

    def test_nothing_to_check(self, capsys):
        """check without inputs is an input error."""
        assert main(["check"]) == EXIT_INPUT

    def test_modified_r_and_algebra(self, capsys):
        """Modified r-matrices and algebra files run alongside."""
        code, payload = run_json(
            capsys,
            "check",
            "--mybe",
            str(FIXTURES / "euclidean2_modified_r.json"),
            "--algebra",
            str(FIXTURES / "up2_algebra.json"),
        )
        assert code == EXIT_OK
        assert [r["name"] for r in payload["reports"]] == ["algebra:up2_algebra.json", "mybe:euclidean2-R"]

    def test_group_operator(self, capsys):
        """Registry operators run the group suite."""
        code = main(["--samples", "20", "check", "--group-operator", "euclidean(2)"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "group:euclidean(2)/group_rbo" in out

    def test_csv_output(self, capsys):
        """CSV output starts with the column header and names nested checks."""
        code = main(["--format", "csv", "check", "--rbo", str(FIXTURES / "so3_zero.json")])
        lines = capsys.readouterr().out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "check,status,residual,tol,skipped"
        assert any(line.startswith("rbo:so3-zero/rbo/identity,True,") for line in lines[1:])

    def test_bad_override(self, capsys):
        """A nonpositive check tolerance is a configuration error."""
        assert main(["--check-tol", "-1", "check", "--rbo", str(FIXTURES / "euclidean2.json")]) == EXIT_INPUT


class TestAnalysisCommands:
    """cohomology, split, deform and matched."""

    def test_cohomology_table(self, capsys):
        """e(2) has dim H² = 3."""
        code, payload = run_json(capsys, "cohomology", str(FIXTURES / "euclidean2.json"))
        rows = {row["k"]: row["dim_H"] for row in payload["rows"]}
        assert code == EXIT_OK
        assert rows[2] == 3

    def test_cohomology_text(self, capsys):
        """Text output ends with the d² residual."""
        code = main(["cohomology", "--kmax", "2", str(FIXTURES / "euclidean2.json")])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "max |D(k+1) D(k)|" in out

    def test_cohomology_fails_on_nonzero_dd(self, capsys):
        """A D(k+1) D(k) residual above 1e-12 exits 1."""
        table = {"rows": [], "dd_residual": 1e-6}
        with mock.patch.object(cli, "cohomology_table", return_value=table):
            code, payload = run_json(capsys, "cohomology", str(FIXTURES / "euclidean2.json"))
        assert code == EXIT_FAILED
        assert payload["passed"] is False

    def test_cohomology_reports_verdict(self, capsys):
        """A closed complex is reported as passing."""
        code, payload = run_json(capsys, "cohomology", str(FIXTURES / "euclidean2.json"))
        assert code == EXIT_OK
        assert payload["passed"] is True
        assert payload["dd_tol"] == 1e-12

    def test_split_of_registry_operator(self, capsys):
        """Registry operators are differentiated before splitting."""
        code, payload = run_json(capsys, "split", "--operator", "euclidean(2)")
        assert code == EXIT_OK
        assert payload["dims"] == {"g_plus": 1, "g_minus": 2, "k_plus": 1, "k_minus": 2}

    def test_deform(self, capsys):
        """Every reported deformation direction passes."""
        code, payload = run_json(capsys, "deform", str(FIXTURES / "euclidean2.json"))
        assert code == EXIT_OK
        assert len(payload["directions"]) == len(payload["reports"])

    def test_matched_needs_input(self, capsys):
        """matched without --rbo or --group is an input error."""
        assert main(["matched"]) == EXIT_INPUT

    def test_matched_from_file(self, capsys):
        """The algebra construction passes for e(2)."""
        code, payload = run_json(capsys, "matched", "--rbo", str(FIXTURES / "euclidean2.json"))
        assert code == EXIT_OK
        assert payload["reports"][0]["name"] == "matched_pair_from_rbo"


class TestGroupCommands:
    """integrate, vanest, factorize and aks."""

    def test_integrate_file(self, capsys):
        """Integrating a file reports the roundtrip and local identity."""
        code, payload = run_json(
            capsys, "--samples", "10", "integrate", str(FIXTURES / "euclidean2.json"), "--group", "euclidean(2)"
        )
        assert code == EXIT_OK
        assert [r["name"] for r in payload["reports"]] == ["roundtrip", "local_rbo"]
        assert payload["operator"]["provenance"] == "integrated-from:euclidean2"

    def test_integrate_registry_operator(self, capsys):
        """A registry operator is differentiated, integrated and compared."""
        code, payload = run_json(capsys, "--samples", "10", "integrate", "--operator", "euclidean(2)")
        assert code == EXIT_OK
        assert [r["name"] for r in payload["reports"]] == ["roundtrip", "local_rbo", "agreement"]

    def test_integrate_file_needs_group(self, capsys):
        """A file without --group is an input error."""
        assert main(["integrate", str(FIXTURES / "euclidean2.json")]) == EXIT_INPUT

    def test_integrate_failing_operator(self, capsys):
        """Integration of a non-operator exits 1."""
        code = main(["integrate", str(FIXTURES / "euclidean2_perturbed.json"), "--group", "euclidean(2)"])
        assert code == EXIT_FAILED
        assert "rbolab:" in capsys.readouterr().err

    def test_vanest(self, capsys):
        """The commuting square holds for a degree-1 cochain."""
        code, payload = run_json(capsys, "vanest", "--group", "euclidean(2)", "--degree", "1")
        assert code == EXIT_OK
        assert len(payload["van_est"]) == 3

    def test_factorize_single_time(self, capsys):
        """One time and a few directions."""
        code, payload = run_json(capsys, "factorize", "--group", "euclidean(3)", "--t", "0.1", "--directions", "5")
        assert code == EXIT_OK
        assert payload["factorization"]["t"] == 0.1

    def test_aks(self, capsys):
        """The AKS table has one row per grid time."""
        code, payload = run_json(capsys, "aks", "--group", "euclidean(2)", "--steps", "2")
        assert code == EXIT_OK
        assert [row["t"] for row in payload["rows"]] == [0.0, 0.1, 0.2]

    def test_aks_needs_adjoint(self, capsys):
        """Non-adjoint operators are input errors."""
        assert main(["aks", "--group", "up2"]) == EXIT_INPUT

    def test_unknown_registry_name(self, capsys):
        """Unknown operators are input errors."""
        assert main(["factorize", "--group", "heisenberg"]) == EXIT_INPUT


class TestErrorHandling:
    """Exit codes for numeric failures."""

    def test_numeric_error_exits_one(self, capsys):
        """Numeric failures inside a command exit 1 and are reported on stderr."""
        failing = mock.Mock(side_effect=DivergenceError("newton did not converge", 1.0))
        with mock.patch.dict(cli.COMMANDS, {"split": failing}):
            code = main(["split", str(FIXTURES / "euclidean2.json")])
        assert code == EXIT_FAILED
        assert "newton did not converge" in capsys.readouterr().err
        failing.assert_called_once()

    def test_sample_cochain_is_seeded(self):
        """The same seed gives the same sampled cochain."""
        o = operator_by_name("euclidean(2)")
        h = o.H.exp([0.1, 0.2, 0.0])
        a, b = sample_cochain(o, 2, 7), sample_cochain(o, 2, 7)
        assert a.k == 2
        assert (a(h) == b(h)).all()
