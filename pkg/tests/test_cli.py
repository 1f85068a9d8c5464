import csv
import io
import json
import math
import subprocess
import sys

import pytest

from bertrand_lab.cli import DEFAULT_SEED, SEED_ENV_VAR, main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    return rows


class TestBertrandCommand:
    def test_all_models_schema_and_exacts(self, capsys):
        code, out, _ = run_cli(
            ["bertrand", "--model", "all", "--samples", "20000", "--seed", "42"], capsys
        )
        assert code == 0
        rows = parse_csv(out)
        assert [r["model"] for r in rows] == [
            "midpoint_uniform",
            "tangent_angle_uniform",
            "polar_uniform",
        ]
        assert [r["exact_p"] for r in rows] == ["0.25", "0.333333333", "0.5"]
        for r in rows:
            assert r["n"] == "20000"
            assert r["seed"] == "42"
            assert float(r["ci_low"]) <= float(r["p_hat"]) <= float(r["ci_high"])

    def test_pushforward_row(self, capsys):
        code, out, _ = run_cli(
            ["bertrand", "--model", "polar", "--samples", "1000", "--pushforward"], capsys
        )
        assert code == 0
        rows = parse_csv(out)
        assert rows[-1]["model"] == "midpoint_to_polar_pushforward"
        assert abs(float(rows[-1]["exact_p"]) - 0.25) <= 1e-9
        assert rows[-1]["p_hat"] == ""

    def test_zero_samples_is_a_config_error(self, capsys):
        code, _, err = run_cli(["bertrand", "--samples", "0"], capsys)
        assert code == 2
        assert "samples" in err

    def test_unknown_model_is_a_config_error(self, capsys):
        code, _, _ = run_cli(["bertrand", "--model", "diagonal"], capsys)
        assert code == 2

    def test_indivisible_shards_is_a_config_error(self, capsys):
        code, _, err = run_cli(
            ["bertrand", "--samples", "1000", "--shards", "3"], capsys
        )
        assert code == 2
        assert "divisible" in err


class TestBuffonCommand:
    def test_schema_and_pi_estimates(self, capsys):
        code, out, _ = run_cli(["buffon", "--samples", "100000", "--seed", "42"], capsys)
        assert code == 0
        rows = parse_csv(out)
        assert [r["model"] for r in rows] == ["center_angle", "endpoints"]
        assert float(rows[0]["exact_p"]) == pytest.approx(2.0 / math.pi, abs=1e-8)
        assert float(rows[1]["exact_p"]) == 0.5
        assert float(rows[0]["pi_estimate"]) == pytest.approx(math.pi, abs=0.05)
        assert float(rows[1]["pi_estimate"]) == pytest.approx(4.0, abs=0.05)

    def test_too_few_samples_rejected(self, capsys):
        code, _, _ = run_cli(["buffon", "--samples", "10"], capsys)
        assert code == 2


class TestSquaresCommand:
    def test_default_run_shows_the_paradox(self, capsys):
        code, out, _ = run_cli(["squares"], capsys)
        assert code == 0
        rows = parse_csv(out)
        assert [(r["model"], r["probability"]) for r in rows] == [
            ("uniform_x", "0.5"),
            ("naive_uniform_square", "0.75"),
            ("pushforward_square", "0.5"),
        ]
        assert [r["threshold"] for r in rows] == ["50", "2500", "2500"]

    def test_finite_counting_appends_exact_fractions(self, capsys):
        code, out, _ = run_cli(["squares", "--finite", "100", "--threshold", "50"], capsys)
        assert code == 0
        rows = parse_csv(out)
        assert rows[-2]["model"] == "counting_plain"
        assert rows[-2]["probability"] == "1/2"
        assert rows[-1]["model"] == "counting_squared"
        assert rows[-1]["probability"] == "1/2"
        assert rows[-1]["threshold"] == "2500"

    def test_out_of_range_threshold(self, capsys):
        code, _, _ = run_cli(["squares", "--threshold", "200"], capsys)
        assert code == 2

    def test_fractional_threshold_rejected_for_counting(self, capsys):
        code, _, _ = run_cli(["squares", "--finite", "100", "--threshold", "50.5"], capsys)
        assert code == 2


class TestRationalsCommand:
    def test_atom_value(self, capsys):
        code, out, _ = run_cli(
            ["rationals", "atom", "--q", "1/2", "--law", "geometric:0.5"], capsys
        )
        assert code == 0
        rows = parse_csv(out)
        closed = 2.0 * (math.atanh(0.5) - 0.5)
        assert abs(float(rows[0]["probability"]) - closed) <= 1e-9
        assert rows[0]["q"] == "1/2"

    def test_atom_canonicalizes_input(self, capsys):
        code, out, _ = run_cli(
            ["rationals", "atom", "--q", "3/6", "--law", "degenerate:2"], capsys
        )
        assert code == 0
        rows = parse_csv(out)
        assert rows[0]["q"] == "1/2"
        assert float(rows[0]["probability"]) == pytest.approx(1.0 / 3.0, abs=1e-9)

    def test_cdf_value(self, capsys):
        code, out, _ = run_cli(
            ["rationals", "cdf", "--x", "0.6", "--law", "degenerate:2"], capsys
        )
        assert code == 0
        rows = parse_csv(out)
        assert float(rows[0]["value"]) == pytest.approx(2.0 / 3.0, abs=1e-9)

    def test_interval_misordered_bounds(self, capsys):
        code, _, _ = run_cli(
            ["rationals", "interval", "--a", "0.5", "--b", "0.25", "--law", "degenerate:2"],
            capsys,
        )
        assert code == 2

    def test_sample_emits_sorted_atoms(self, capsys):
        code, out, _ = run_cli(
            ["rationals", "sample", "--law", "degenerate:2", "--samples", "3000", "--seed", "7"],
            capsys,
        )
        assert code == 0
        rows = parse_csv(out)
        assert [r["q"] for r in rows] == ["0/1", "1/1", "1/2"]
        assert sum(int(r["count"]) for r in rows) == 3000

    def test_converge_table(self, capsys):
        code, out, _ = run_cli(
            [
                "rationals", "converge", "--family", "geometric",
                "--ks", "10,100,1000", "--probe", "0,0.5",
            ],
            capsys,
        )
        assert code == 0
        rows = parse_csv(out)
        mus = [float(r["mean_reciprocal"]) for r in rows]
        assert mus == sorted(mus, reverse=True)
        for r in rows:
            assert float(r["interval_error"]) <= 1.5 * float(r["mean_reciprocal"])

    def test_bad_law_string(self, capsys):
        code, _, err = run_cli(
            ["rationals", "atom", "--q", "1/2", "--law", "zipf:3"], capsys
        )
        assert code == 2
        assert "law" in err

    def test_bad_ks(self, capsys):
        code, _, _ = run_cli(
            ["rationals", "converge", "--ks", "100,10"], capsys
        )
        assert code == 2


class TestDeterminism:
    CASES = [
        ["bertrand", "--model", "all", "--samples", "20000", "--seed", "11"],
        ["buffon", "--samples", "10000", "--seed", "11"],
        ["squares", "--finite", "100", "--threshold", "50"],
        ["rationals", "atom", "--q", "1/2", "--law", "geometric:0.5"],
        ["rationals", "sample", "--law", "degenerate:3", "--samples", "5000", "--seed", "11"],
        ["rationals", "converge", "--ks", "10,100"],
    ]

    @pytest.mark.parametrize("argv", CASES, ids=lambda c: c[0] + "_" + c[1].lstrip("-"))
    def test_two_runs_are_byte_identical(self, argv, capsys):
        _, out1, _ = run_cli(argv, capsys)
        _, out2, _ = run_cli(argv, capsys)
        assert out1 == out2

    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_shard_count_does_not_change_output(self, fmt, capsys):
        outputs = []
        for shards in ("1", "2", "4"):
            _, out, _ = run_cli(
                ["bertrand", "--model", "midpoint", "--samples", "65536",
                 "--seed", "11", "--shards", shards, "--format", fmt],
                capsys,
            )
            outputs.append(out)
        assert outputs[0] == outputs[1] == outputs[2]


class TestOutputFormats:
    def test_json_mirrors_csv_fields(self, capsys):
        argv = ["squares", "--finite", "4", "--threshold", "2"]
        _, csv_out, _ = run_cli(argv, capsys)
        _, json_out, _ = run_cli(argv + ["--format", "json"], capsys)
        csv_rows = parse_csv(csv_out)
        json_rows = json.loads(json_out)["rows"]
        assert len(csv_rows) == len(json_rows)
        for c, j in zip(csv_rows, json_rows):
            assert set(c) == set(j)
            assert c["model"] == j["model"]

    def test_csv_uses_lf_line_endings(self, capsys):
        _, out, _ = run_cli(["squares"], capsys)
        assert "\r" not in out
        assert out.endswith("\n")

    def test_out_file_matches_stdout(self, tmp_path, capsys):
        argv = ["rationals", "converge", "--ks", "10,100"]
        _, stdout_text, _ = run_cli(argv, capsys)
        path = tmp_path / "table.csv"
        code, empty, _ = run_cli(argv + ["--out", str(path)], capsys)
        assert code == 0
        assert empty == ""
        assert path.read_bytes().decode() == stdout_text


class TestSeedResolution:
    def test_env_var_overrides_default(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "777")
        _, out, _ = run_cli(["bertrand", "--model", "polar", "--samples", "1000"], capsys)
        assert parse_csv(out)[0]["seed"] == "777"

    def test_flag_beats_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "777")
        _, out, _ = run_cli(
            ["bertrand", "--model", "polar", "--samples", "1000", "--seed", "5"], capsys
        )
        assert parse_csv(out)[0]["seed"] == "5"

    def test_default_seed_documented_constant(self, capsys, monkeypatch):
        monkeypatch.delenv(SEED_ENV_VAR, raising=False)
        _, out, _ = run_cli(["bertrand", "--model", "polar", "--samples", "1000"], capsys)
        assert parse_csv(out)[0]["seed"] == str(DEFAULT_SEED)

    def test_garbage_env_var_is_a_config_error(self, capsys, monkeypatch):
        monkeypatch.setenv(SEED_ENV_VAR, "not-a-seed")
        code, _, _ = run_cli(["bertrand", "--model", "polar", "--samples", "1000"], capsys)
        assert code == 2


class TestModuleEntryPoint:
    def test_python_dash_m_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "bertrand_lab", "squares"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines()[0] == "model,threshold,probability"
