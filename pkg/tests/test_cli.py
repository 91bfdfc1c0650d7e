"""Exit-code contract and output shapes of the command-line front end."""

import csv
import io
import json

import pytest

from qginfo.cli import main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_measures_ok(self, capsys):
        code, out, _ = run(["measures", "--n", "1", "--alpha", "2", "--q", "1.5"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["closed"]["Mq"] > 0

    def test_measures_divergent_mq_is_invalid_input(self, capsys):
        code, _, err = run(["measures", "--n", "2", "--alpha", "2", "--q", "0.5"], capsys)
        assert code == 2
        assert "n/(n+alpha)" in err

    def test_measures_divergent_fisher_is_invalid_input(self, capsys):
        code, _, err = run(["measures", "--n", "1", "--alpha", "1", "--q", "1"], capsys)
        assert code == 2

    def test_verify_stam_dimension_bound(self, capsys):
        code, _, err = run(["verify", "--ineq", "stam", "--n", "3", "--q", "0.6"], capsys)
        assert code == 2
        assert "(n-1)/n" in err

    def test_minimize_negative_moment(self, capsys):
        code, _, err = run(["minimize", "--moment", "-1"], capsys)
        assert code == 2

    def test_empty_sweep_grid(self, capsys):
        code, _, err = run(["sweep", "--n", "1", "--q", "", "--alpha", "2", "--gamma", "1"], capsys)
        assert code == 2

    def test_malformed_grid(self, capsys):
        code, _, _ = run(["sweep", "--n", "1", "--q", "1:2", "--alpha", "2", "--gamma", "1"], capsys)
        assert code == 2

    def test_existence_violation(self, capsys):
        code, _, _ = run(["measures", "--n", "3", "--alpha", "2", "--q", "0.2"], capsys)
        assert code == 2


class TestMeasuresCommand:
    def test_both_methods_agree(self, capsys):
        code, out, _ = run(
            ["measures", "--n", "2", "--alpha", "2", "--q", "1.2", "--method", "both"], capsys
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["max_rel_gap"] < 1e-6
        assert payload["closed"]["method"]["Mq"] == "closed-form"
        assert payload["quadrature"]["method"]["Mq"] == "quadrature"

    def test_config_echoed(self, capsys):
        _, out, _ = run(["measures", "--n", "1", "--alpha", "2", "--q", "2"], capsys)
        payload = json.loads(out)
        assert payload["config"]["params"] == {"n": 1, "alpha": 2.0, "q": 2.0, "gamma": 1.0}
        assert payload["config"]["subcommand"] == "measures"

    def test_csv_format(self, capsys):
        code, out, _ = run(
            ["measures", "--n", "1", "--alpha", "2", "--q", "1.5", "--format", "csv"], capsys
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# config:")
        rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
        assert rows[0] == ["measure", "closed"]
        assert len(rows) == 7


class TestVerifyCommand:
    def test_family_member_passes_all(self, capsys):
        code, out, _ = run(["verify", "--all", "--n", "2", "--alpha", "2", "--q", "1.2"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert len(payload["reports"]) == 4
        for report in payload["reports"]:
            assert report["passes"] is True
            assert report["equality"] is True
            assert abs(report["deficit"]) <= 1e-5

    def test_report_keys_frozen(self, capsys):
        _, out, _ = run(["verify", "--ineq", "stam", "--n", "1", "--alpha", "2", "--q", "1.5"], capsys)
        payload = json.loads(out)
        report = payload["reports"][0]
        assert set(report) == {"name", "lhs", "rhs", "ratio", "deficit", "passes",
                               "equality", "params", "density", "tolerances", "method_tags"}
        assert set(report["params"]) >= {"n", "alpha", "beta", "q", "lambda"}

    def test_mixture_density(self, capsys):
        code, out, _ = run(
            ["verify", "--all", "--n", "1", "--alpha", "2", "--q", "1",
             "--density", "mixture:0.5,0,1;0.5,0,4"],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        for report in payload["reports"]:
            assert report["passes"] is True
            assert report["equality"] is False

    def test_mixture_with_offset_center_rejected(self, capsys):
        code, _, err = run(
            ["verify", "--all", "--n", "1", "--alpha", "2", "--q", "1",
             "--density", "mixture:0.5,1,1;0.5,0,4"],
            capsys,
        )
        assert code == 2
        assert "center" in err

    def test_uniform_ball_all_skips_fisher_checks(self, capsys):
        code, out, _ = run(
            ["verify", "--all", "--n", "2", "--alpha", "2", "--q", "1",
             "--density", "uniform-ball"],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        names = {r["name"] for r in payload["reports"]}
        assert names == {"moment-entropy"}
        skipped = {s["name"] for s in payload["skipped"]}
        assert skipped == {"fisher-moment-entropy", "stam", "cramer-rao"}

    def test_explicit_inapplicable_request_is_an_error(self, capsys):
        code, _, _ = run(
            ["verify", "--ineq", "stam", "--n", "2", "--alpha", "2", "--q", "1",
             "--density", "uniform-ball"],
            capsys,
        )
        assert code == 2


class TestSweepCommand:
    def test_small_grid(self, capsys):
        code, out, _ = run(
            ["sweep", "--n", "1,2", "--alpha", "2", "--q", "1,1.5", "--gamma", "0.5,1,2"], capsys
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# config:")
        rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
        assert len(rows) == 12
        for row in rows:
            assert row["error"] == ""
            for col in ("deficit_fisher_moment_entropy", "deficit_moment_entropy",
                        "deficit_stam", "deficit_cramer_rao"):
                assert abs(float(row[col])) <= 1e-5

    def test_range_grammar(self, capsys):
        code, out, _ = run(
            ["sweep", "--n", "1", "--alpha", "2", "--q", "0.9:1.2:0.1", "--gamma", "1"], capsys
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO("\n".join(out.strip().splitlines()[1:]))))
        assert [float(r["q"]) for r in rows] == pytest.approx([0.9, 1.0, 1.1, 1.2])

    def test_gamma_sweep_scale_invariance(self, capsys):
        # deficits are identically zero along a gamma sweep of a family member
        code, out, _ = run(
            ["sweep", "--n", "2", "--alpha", "2", "--q", "1.2", "--gamma", "0.25,1,4"], capsys
        )
        rows = list(csv.DictReader(io.StringIO("\n".join(out.strip().splitlines()[1:]))))
        for row in rows:
            assert abs(float(row["deficit_stam"])) <= 1e-8

    def test_invalid_rows_recorded_not_fatal(self, capsys):
        code, out, _ = run(
            ["sweep", "--n", "2", "--alpha", "2", "--q", "0.4,1.0", "--gamma", "1"], capsys
        )
        assert code == 0
        rows = list(csv.DictReader(io.StringIO("\n".join(out.strip().splitlines()[1:]))))
        assert len(rows) == 2
        assert rows[0]["error"] != ""
        assert rows[1]["error"] == ""


class TestSampleCommand:
    def test_deterministic_files(self, tmp_path, capsys):
        out1 = tmp_path / "a.csv"
        out2 = tmp_path / "b.csv"
        for out in (out1, out2):
            code = main(["sample", "--n", "2", "--alpha", "2", "--q", "1.5",
                         "--count", "50", "--seed", "123", "--out", str(out)])
            capsys.readouterr()
            assert code == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_header_and_rows(self, capsys):
        code, out, _ = run(
            ["sample", "--n", "3", "--alpha", "2", "--q", "1", "--count", "5", "--seed", "1"],
            capsys,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# config:")
        assert lines[1] == "x1,x2,x3"
        assert len(lines) == 7
        config = json.loads(lines[0].split("# config: ", 1)[1])
        assert config["rng"] == "PCG64"
        assert config["seed"] == 1


class TestMinimizeCommand:
    def test_json_payload(self, capsys):
        code, out, _ = run(
            ["minimize", "--n", "1", "--alpha", "2", "--q", "1", "--moment", "1",
             "--nodes", "401"],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["converged"] is True
        assert payload["objective"] == pytest.approx(0.25, rel=1e-3)
        assert payload["prop1"]["rel_gap"] <= 1e-3
        assert len(payload["u_values"]) == 401
        assert set(payload["multipliers"]) == {"a", "b"}

    def test_csv_payload(self, capsys):
        code, out, _ = run(
            ["minimize", "--n", "1", "--alpha", "2", "--q", "1.5", "--moment", "0.4",
             "--nodes", "401", "--format", "csv"],
            capsys,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# config:")
        header = lines[1].split(",")
        assert header == ["r", "u", "closed_form_u"]
