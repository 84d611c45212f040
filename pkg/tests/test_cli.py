"""CLI tests: exit codes, artifact layout, determinism, error mapping."""

import json

import numpy as np
import pytest

import floqbound.harness
from floqbound.cli import EXIT_INCONSISTENT, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, run
from floqbound.cli import _sanitize, render_plots
from floqbound.errors import ValidationError
from floqbound.harness import ConclusionRecord, TheoremReport
from floqbound.systems import builtin_system, serialize_system


def read_report(out_dir):
    return json.loads((out_dir / "report.json").read_text())


class TestListExamples:
    def test_prints_catalog(self, capsys):
        assert run(["list-examples"]) == EXIT_OK
        out = capsys.readouterr().out
        for name in ("rotation", "hyperbolic-diag", "scalar-zero",
                     "damped", "expansive"):
            assert name in out
        assert "dichotomic" in out


class TestAnalyze:
    def test_dichotomic_system(self, tmp_path, capsys):
        out = tmp_path / "o"
        assert run(["analyze", "hyperbolic-diag", "--out-dir", str(out)]) == EXIT_OK
        report = read_report(out)
        assert report["classification"] == "dichotomic"
        assert report["eta"] == 1
        assert report["projector"]["stable_dimension"] == 1
        assert (out / "plots" / "spectrum.svg").exists()
        assert "dichotomic (eta=1)" in capsys.readouterr().out

    def test_rotation_spectrum(self, tmp_path):
        out = tmp_path / "o"
        assert run(["analyze", "rotation", "--out-dir", str(out)]) == EXIT_OK
        report = read_report(out)
        assert report["classification"] == "non-dichotomic"
        assert report["projector"] is None
        (ev,) = report["eigenvalues"]
        assert ev["multiplicity"] == 2
        assert ev["re"] == pytest.approx(1.0, abs=1e-9)
        assert ev["im"] == pytest.approx(0.0, abs=1e-9)

    def test_format_json_suppresses_svg(self, tmp_path):
        out = tmp_path / "o"
        assert run(["analyze", "rotation", "--out-dir", str(out),
                    "--format", "json"]) == EXIT_OK
        assert (out / "report.json").exists()
        assert not (out / "plots").exists()

    def test_system_from_toml_file(self, tmp_path):
        path = tmp_path / "sys.toml"
        path.write_text(serialize_system(builtin_system("damped")))
        out = tmp_path / "o"
        assert run(["analyze", str(path), "--out-dir", str(out)]) == EXIT_OK
        assert read_report(out)["classification"] == "stable"

    def test_builtin_name_wins_over_file(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "rotation").write_text("not toml at all")
        out = tmp_path / "o"
        assert run(["analyze", "rotation", "--out-dir", str(out)]) == EXIT_OK
        assert "both a built-in and a file" in capsys.readouterr().err
        assert read_report(out)["classification"] == "non-dichotomic"


class TestProbe:
    def test_scalar_resonance(self, tmp_path, capsys):
        out = tmp_path / "o"
        assert run(["probe", "scalar-zero", "--mu", "0",
                    "--out-dir", str(out)]) == EXIT_OK
        report = read_report(out)
        assert report["status"] == "linear-growth"
        assert report["slope"] == pytest.approx(1.0, rel=1e-3)
        assert (out / "traces" / "sups.csv").exists()
        assert (out / "plots" / "sups.svg").exists()
        assert "linear-growth" in capsys.readouterr().out

    def test_format_csv_suppresses_svg(self, tmp_path):
        out = tmp_path / "o"
        assert run(["probe", "scalar-zero", "--mu", "0", "--format", "csv",
                    "--out-dir", str(out)]) == EXIT_OK
        assert (out / "traces" / "sups.csv").exists()
        assert not (out / "plots").exists()

    def test_small_horizon_is_usage_error(self, tmp_path):
        out = tmp_path / "o"
        assert run(["probe", "scalar-zero", "--mu", "0", "--periods", "5",
                    "--out-dir", str(out)]) == EXIT_USAGE


class TestSimulate:
    def test_bounded_oscillation(self, tmp_path):
        out = tmp_path / "o"
        assert run(["simulate", "scalar-zero", "--mu", "1", "--periods", "3",
                    "--out-dir", str(out)]) == EXIT_OK
        report = read_report(out)
        assert report["sup_norm"] <= 2.0 + 1e-9
        assert len(report["per_period_sup"]) == 3
        assert (out / "traces" / "trace.csv").exists()
        assert (out / "plots" / "trace.svg").exists()

    def test_custom_vector(self, tmp_path):
        out = tmp_path / "o"
        assert run(["simulate", "hyperbolic-diag", "--mu", "0.5", "--b", "1,-i",
                    "--periods", "2", "--out-dir", str(out)]) == EXIT_OK
        report = read_report(out)
        assert report["b"] == [{"re": 1.0, "im": 0.0}, {"re": 0.0, "im": -1.0}]

    def test_wrong_vector_length(self, tmp_path):
        out = tmp_path / "o"
        assert run(["simulate", "hyperbolic-diag", "--mu", "0", "--b", "1",
                    "--out-dir", str(out)]) == EXIT_USAGE

    def test_zero_periods_rejected(self, tmp_path):
        out = tmp_path / "o"
        assert run(["simulate", "scalar-zero", "--mu", "0", "--periods", "0",
                    "--out-dir", str(out)]) == EXIT_USAGE

    def test_numerical_blowup_maps_to_exit_3(self, tmp_path):
        stiff = tmp_path / "stiff.toml"
        stiff.write_text(
            'dimension = 1\nperiod = 1.0\n\n[coefficient]\nkind = "constant"\n'
            'matrix = [["2000"]]\n')
        out = tmp_path / "o"
        with np.errstate(over="ignore", invalid="ignore"):
            code = run(["simulate", str(stiff), "--mu", "0", "--periods", "1",
                        "--out-dir", str(out)])
        assert code == EXIT_NUMERICAL


class TestSweep:
    def test_scalar_zero_flags_resonance(self, tmp_path, capsys):
        out = tmp_path / "o"
        assert run(["sweep", "scalar-zero", "--grid-points", "4",
                    "--out-dir", str(out)]) == EXIT_OK
        report = read_report(out)
        assert 0.0 in report["unbounded_mus"]
        assert report["statuses"]["linear-growth"] >= 1
        assert (out / "traces" / "sweep.csv").exists()
        assert "unbounded at" in capsys.readouterr().out

    def test_zero_grid_rejected(self, tmp_path):
        out = tmp_path / "o"
        assert run(["sweep", "scalar-zero", "--grid-points", "0",
                    "--out-dir", str(out)]) == EXIT_USAGE


class TestVerify:
    def test_rotation_reproduction(self, tmp_path):
        out = tmp_path / "o"
        assert run(["verify", "rotation", "rotation-counterexample",
                    "--out-dir", str(out)]) == EXIT_OK
        report = read_report(out)
        assert report["overall"] == "pass"
        (check,) = report["checks"]
        assert check["check_id"] == "rotation-counterexample"
        assert check["status"] == "pass"

    def test_power_growth_check(self, tmp_path, capsys):
        out = tmp_path / "o"
        assert run(["verify", "scalar-zero", "power-growth",
                    "--out-dir", str(out)]) == EXIT_OK
        assert "power-growth: pass" in capsys.readouterr().out

    def test_converse_on_scalar_zero(self, tmp_path):
        out = tmp_path / "o"
        assert run(["verify", "scalar-zero", "converse-dichotomy",
                    "--out-dir", str(out)]) == EXIT_OK
        (check,) = read_report(out)["checks"]
        assert check["status"] == "pass"

    def test_vacuous_counts_as_success(self, tmp_path):
        out = tmp_path / "o"
        assert run(["verify", "scalar-zero", "forward-boundedness",
                    "--out-dir", str(out)]) == EXIT_OK
        report = read_report(out)
        assert report["status_counts"] == {"vacuous": 1}

    def test_failed_check_maps_to_exit_1(self, tmp_path, monkeypatch):
        def broken(system, settings=None, n_periods=100, **kw):
            return TheoremReport("uniform-stability", (),
                                 ConclusionRecord("x", "y", False))
        monkeypatch.setattr(floqbound.harness, "verify_uniform_stability", broken)
        out = tmp_path / "o"
        code = run(["verify", "scalar-zero", "uniform-stability",
                    "--out-dir", str(out)])
        assert code == EXIT_INCONSISTENT
        assert read_report(out)["overall"] == "fail"

    def test_rotation_check_warns_on_other_system(self, tmp_path, capsys):
        out = tmp_path / "o"
        assert run(["verify", "scalar-zero", "rotation-counterexample",
                    "--out-dir", str(out)]) == EXIT_OK
        assert "built-in rotation system" in capsys.readouterr().err

    def test_unknown_check_rejected(self, tmp_path):
        assert run(["verify", "rotation", "no-such-check"]) == EXIT_USAGE


class TestUsageErrors:
    def test_unknown_system(self, tmp_path):
        out = tmp_path / "o"
        assert run(["analyze", "pendulum", "--out-dir", str(out)]) == EXIT_USAGE

    def test_bad_toml_file(self, tmp_path):
        bad = tmp_path / "bad.toml"
        bad.write_text("dimension = [unclosed")
        assert run(["analyze", str(bad), "--out-dir",
                    str(tmp_path / "o")]) == EXIT_USAGE

    def test_unknown_subcommand(self):
        assert run(["frobnicate"]) == EXIT_USAGE

    def test_missing_required_flag(self):
        assert run(["probe", "scalar-zero"]) == EXIT_USAGE

    def test_too_coarse_step(self, tmp_path):
        out = tmp_path / "o"
        assert run(["analyze", "scalar-zero", "--step", "0.5",
                    "--out-dir", str(out)]) == EXIT_USAGE


class TestOutDirResolution:
    def test_env_var_default(self, tmp_path, monkeypatch):
        target = tmp_path / "envdir"
        monkeypatch.setenv("FLOQUET_OUT_DIR", str(target))
        assert run(["probe", "scalar-zero", "--mu", "0.5"]) == EXIT_OK
        assert (target / "report.json").exists()

    def test_flag_beats_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("FLOQUET_OUT_DIR", str(tmp_path / "envdir"))
        out = tmp_path / "flagdir"
        assert run(["probe", "scalar-zero", "--mu", "0.5",
                    "--out-dir", str(out)]) == EXIT_OK
        assert (out / "report.json").exists()
        assert not (tmp_path / "envdir").exists()


class TestDeterminism:
    def snapshots(self, argv, out, names):
        # same invocation twice into the same directory: inputs are identical
        runs = []
        for _ in range(2):
            assert run(argv) == EXIT_OK
            runs.append([(out / n).read_bytes() for n in names])
        return zip(*runs)

    def test_analyze_outputs_are_byte_identical(self, tmp_path):
        out = tmp_path / "o"
        argv = ["analyze", "hyperbolic-diag", "--out-dir", str(out)]
        for a, b in self.snapshots(argv, out, ["report.json", "plots/spectrum.svg"]):
            assert a == b

    def test_probe_outputs_are_byte_identical(self, tmp_path):
        out = tmp_path / "o"
        argv = ["probe", "scalar-zero", "--mu", "0", "--out-dir", str(out)]
        names = ["report.json", "traces/sups.csv", "plots/sups.svg"]
        for a, b in self.snapshots(argv, out, names):
            assert a == b

    def test_report_keys_sorted(self, tmp_path):
        out = tmp_path / "o"
        run(["probe", "scalar-zero", "--mu", "0.5", "--out-dir", str(out)])
        text = (out / "report.json").read_text()
        assert json.loads(text) == json.loads(
            json.dumps(json.loads(text), sort_keys=True))
        top_keys = list(json.loads(text))
        assert top_keys == sorted(top_keys)


class TestPlumbing:
    def test_sanitize_non_finite_and_numpy(self):
        got = _sanitize({
            "nan": float("nan"),
            "inf": np.float64("inf"),
            "z": 1 + 2j,
            "arr": np.array([1.0, 2.0]),
            "count": np.int64(3),
            "flag": np.bool_(True),
            "consistent": True,
        })
        assert got["nan"] == "nan"
        assert got["inf"] == "inf"
        assert got["z"] == {"re": 1.0, "im": 2.0}
        assert got["arr"] == [1.0, 2.0]
        assert got["count"] == 3
        assert got["flag"] is True
        assert got["consistent"] is True
        json.dumps(got, allow_nan=False)

    def test_render_plots_requires_traces(self, tmp_path):
        with pytest.raises(ValidationError, match="no traces"):
            render_plots({}, [], tmp_path)
