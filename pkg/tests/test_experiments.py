import json
import math
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domainwall import ConfigError, InvalidSample, NumericalError, coupling, make_single_wall
from domainwall import cli
from domainwall.experiments import (
    CSV_SCHEMA,
    SWEEP_COLUMNS,
    ExperimentConfig,
    fit_decay_rate,
    read_csv,
    run_sweep,
    sweep_row,
    write_csv,
)


class TestFit:
    @settings(max_examples=50, deadline=None)
    @given(st.floats(-8, 8), st.floats(-20, 20), st.lists(st.floats(0.5, 10), min_size=3, max_size=8, unique=True))
    def test_exact_on_exponentials(self, slope, c, xs):
        if max(xs) - min(xs) < 0.5:
            return
        fit = fit_decay_rate([(x, math.exp(c + slope * x)) for x in xs])
        assert fit.slope == pytest.approx(slope, abs=1e-9)
        assert fit.intercept == pytest.approx(c, abs=1e-8)
        assert fit.max_residual <= 1e-9

    def test_confidence_band_contains_slope(self):
        rng = np.random.default_rng(1)
        xs = np.arange(3.0, 9.0)
        ys = np.exp(-4 * xs + 0.05 * rng.normal(size=xs.size))
        fit = fit_decay_rate(zip(xs, ys))
        lo, hi = fit.confidence
        assert lo < fit.slope < hi
        assert lo < -4 < hi

    @pytest.mark.parametrize("samples", [[(1, 1.0), (2, 0.5)], [(1, 1.0), (2, 0.0), (3, 0.1)],
                                         [(1, 1.0), (2, math.nan), (3, 0.1)]])
    def test_rejects_bad_samples(self, samples):
        with pytest.raises(InvalidSample):
            fit_decay_rate(samples)


class TestConfig:
    @settings(max_examples=50, deadline=None)
    @given(
        st.sampled_from(["mollifier", "tanh", "sgn"]),
        st.integers(1, 6),
        st.lists(st.floats(1.01, 20, allow_nan=False), min_size=1, max_size=5),
        st.floats(0.05, 0.95),
        st.integers(0, 2**63 - 1),
    )
    def test_json_round_trip(self, kind, n, deltas, window, seed):
        cfg = ExperimentConfig(kind=kind, n=n, deltas=deltas, window=window, seed=seed).validate()
        back = ExperimentConfig.from_json(cfg.to_json())
        assert back == cfg

    @pytest.mark.parametrize("patch", [
        {"kind": "parabola"}, {"n": 0}, {"deltas": [0.5]}, {"spacing": 0.0}, {"window": 1.0},
        {"half_length": 20.0}, {"half_length": 20.0, "points": 100}, {"centers": [0.0]},
        {"energy_window": 1.5}, {"jobs": 0}, {"bump": {"center": 1.0}}, {"verb": "plot"},
    ])
    def test_validation(self, patch):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict(patch)

    def test_unknown_keys_and_bad_json(self):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_dict({"colour": "red"})
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json("{not json")
        with pytest.raises(ConfigError):
            ExperimentConfig.from_json("[1, 2]")


class TestCsv:
    def test_header_and_round_trip(self, tmp_path):
        p = write_csv(tmp_path / "t.csv", "demo", ["a", "b"], [{"a": 0.1, "b": "x"}, [1e-300, ""]])
        header, rows = read_csv(p)
        assert header == f"# {CSV_SCHEMA} demo"
        assert float(rows[0]["a"]) == 0.1 and float(rows[1]["a"]) == 1e-300

    def test_missing_header(self, tmp_path):
        p = tmp_path / "bad.csv"
        p.write_text("a,b\n1,2\n")
        with pytest.raises(InvalidSample):
            read_csv(p)


def _tanh_cfg(tmp_path, **kw):
    base = dict(kind="tanh", n=2, deltas=[2.0, 2.5, 3.0], spacing=0.02, refinements=1, trials=10,
                out=str(tmp_path))
    base.update(kw)
    return ExperimentConfig(**base).validate()


class TestSweep:
    def test_row_contents(self, tmp_path):
        row = sweep_row(_tanh_cfg(tmp_path), 2.0)
        assert set(row) == set(SWEEP_COLUMNS)
        assert row["error"] == ""
        assert row["gap_count"] == row["shoot_count"] == row["root_count"] == 2
        assert row["a"] == pytest.approx(coupling(make_single_wall("tanh"), 2.0))
        assert row["cross_method"] <= 1e-6

    def test_errors_land_in_column(self, tmp_path):
        row = sweep_row(ExperimentConfig(n=2, deltas=[3.0], out=str(tmp_path)), 0.8)
        assert row["error"].startswith("SpacingTooSmall")

    def test_parallel_equals_serial(self, tmp_path):
        cfg = _tanh_cfg(tmp_path, deltas=[2.0, 3.0], refinements=0, spacing=0.05, shoot_step=0.05)
        serial = run_sweep(cfg)
        cfg.jobs = 2
        parallel = run_sweep(cfg)
        assert [r["E_witten"] for r in serial] == [r["E_witten"] for r in parallel]


def _write_cfg(tmp_path, **kw):
    cfg = _tanh_cfg(tmp_path, **kw)
    tmp_path.mkdir(parents=True, exist_ok=True)
    path = tmp_path / "cfg.json"
    path.write_text(cfg.to_json())
    return path


class TestCli:
    def test_sweep_then_fit(self, tmp_path, capsys):
        cfgp = _write_cfg(tmp_path)
        assert cli.main(["sweep", "--config", str(cfgp)]) == 0
        header, rows = read_csv(tmp_path / "sweep.csv")
        assert header.startswith(f"# {CSV_SCHEMA}") and len(rows) == 3
        assert cli.main(["fit", "--config", str(cfgp), "--column", "a"]) == 0
        fit = json.loads((tmp_path / "fit_a.json").read_text())
        # a = 0.5 sech^2(delta) decays like exp(-2 delta)
        assert fit["slope"] == pytest.approx(-2.0, abs=0.05)

    def test_spectrum_reports_energy_estimate(self, tmp_path):
        cfgp = _write_cfg(tmp_path, deltas=[2.0])
        assert cli.main(["spectrum", "--config", str(cfgp), "--eigenfunctions"]) == 0
        out = json.loads((tmp_path / "spectrum.json").read_text())
        assert len(out[0]["gap_eigenvalues"]) == 2
        assert "energy_estimate" in out[0]
        assert (tmp_path / "eigenfunctions_delta_2.csv").exists()

    def test_reduce_and_asymptotics(self, tmp_path):
        cfgp = _write_cfg(tmp_path, deltas=[3.0], refinements=2)
        assert cli.main(["reduce", "--config", str(cfgp)]) == 0
        out = json.loads((tmp_path / "reduce.json").read_text())
        assert max(out[0]["agreement_with_direct"]) <= 1e-6
        assert cli.main(["asymptotics", "--config", str(cfgp)]) == 0
        asy = json.loads((tmp_path / "asymptotics.json").read_text())
        assert asy[0]["eigenvalues"][1] == pytest.approx(0.5 / math.cosh(3.0) ** 2)

    def test_dump(self, tmp_path):
        cfgp = _write_cfg(tmp_path, deltas=[3.0], refinements=0)
        assert cli.main(["dump", "--config", str(cfgp)]) == 0
        for name in ("profile_single", "mode_single", "two_wall_modes", "three_wall_zero"):
            assert read_csv(tmp_path / f"{name}.csv")[0].startswith(f"# {CSV_SCHEMA}")

    def test_seed_and_out_flags(self, tmp_path):
        cfgp = _write_cfg(tmp_path / "a")
        other = tmp_path / "b"
        assert cli.main(["asymptotics", "--config", str(cfgp), "--out", str(other), "--seed", "5"]) == 0
        assert (other / "asymptotics.json").exists()

    def test_validation_failure_exit_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"n": -1}))
        assert cli.main(["sweep", "--config", str(bad)]) == 2
        assert cli.main(["sweep", "--config", str(tmp_path / "missing.json")]) == 2
        assert cli.main(["fit", "--input", str(bad), "--out", str(tmp_path)]) == 2

    def test_numerical_failure_exit_3(self, tmp_path, monkeypatch):
        def boom(*a, **k):
            raise NumericalError("did not converge")

        monkeypatch.setattr(cli, "asymptotic_eigenvalues", boom)
        assert cli.main(["asymptotics", "--out", str(tmp_path)]) == 3

    def test_console_entry(self, tmp_path):
        r = subprocess.run([sys.executable, "-m", "domainwall", "asymptotics", "--out", str(tmp_path)],
                           capture_output=True, text=True, timeout=120)
        assert r.returncode == 0
        assert json.loads(r.stdout)[0]["delta"] == 3.0
