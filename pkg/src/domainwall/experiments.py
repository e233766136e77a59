"""Parameter sweeps, decay-rate fits and figure data."""
from __future__ import annotations

import csv
import dataclasses
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy import stats

from .errors import ConfigError, DomainWallError, InvalidSample
from .modes import exact_zero_mode, residual_norm, shifted_modes, zero_mode
from .profiles import MassProfile, add_bump, antiderivative, glue_at, glue_walls, make_single_wall
from .reduction import (
    approximate_eigenfunctions,
    asymptotic_eigenvalues,
    assemble_full_matrix,
    coupling,
    det_roots,
    leading_eigenpairs,
    reconstruct_corrector,
)
from .solver import Grid, dirac_spectrum_in_gap, energy_estimate_check, shooting_oracle

__all__ = [
    "CSV_SCHEMA",
    "SWEEP_COLUMNS",
    "ExperimentConfig",
    "DecayFit",
    "fit_decay_rate",
    "build_profile",
    "sweep_row",
    "run_sweep",
    "write_csv",
    "read_csv",
    "dump_figures",
]

CSV_SCHEMA = "domainwall-csv v1"

SWEEP_COLUMNS = (
    "delta",
    "n_walls",
    "a",
    "gap_count",
    "shoot_count",
    "root_count",
    "E_witten",
    "E_shoot",
    "E_reduced",
    "E_leading",
    "E_zero",
    "err_eigenvalue",
    "err_eigenfunction",
    "err_zero_mode",
    "cross_method",
    "reduction_vs_direct",
    "remainder",
    "correction_norm",
    "mode_residual",
    "error",
)

VERBS = ("spectrum", "reduce", "asymptotics", "sweep", "fit", "dump")
KINDS = ("mollifier", "tanh", "sgn")


@dataclass
class ExperimentConfig:
    """Everything a CLI verb needs; serialized as JSON."""

    verb: str = "sweep"
    kind: str = "mollifier"
    kappa_inf: float = 1.0
    n: int = 2
    deltas: list[float] = field(default_factory=lambda: [3.0, 4.0, 5.0, 6.0])
    centers: list[float] | None = None
    spacing: float = 0.01
    margin: float = 20.0
    half_length: float | None = None
    points: int | None = None
    window: float = 0.9
    refinements: int = 2
    tol: float = 1e-12
    shoot_step: float = 0.01
    bump: dict | None = None
    seed: int = 0
    trials: int = 100
    energy_window: float = 0.5
    out: str = "results"
    jobs: int = 1

    def validate(self) -> "ExperimentConfig":
        if self.verb not in VERBS:
            raise ConfigError(f"verb must be one of {VERBS}")
        if self.kind not in KINDS:
            raise ConfigError(f"kind must be one of {KINDS}")
        if not self.kappa_inf > 0:
            raise ConfigError("kappa_inf must be positive")
        if not isinstance(self.n, int) or self.n < 1:
            raise ConfigError("n must be a positive integer")
        if self.kind != "tanh" and any(d <= 1 for d in self.deltas):
            raise ConfigError("compact walls need every delta > 1")
        if any(not d > 0 for d in self.deltas):
            raise ConfigError("deltas must be positive")
        if self.centers is not None and len(self.centers) != self.n:
            raise ConfigError("centers must list n values")
        if not 0 < self.spacing <= 0.05 / self.kappa_inf * 2:
            raise ConfigError("spacing must be positive and resolve the wall cores")
        if (self.half_length is None) != (self.points is None):
            raise ConfigError("give both half_length and points, or neither")
        if self.points is not None and (self.points < 3 or self.points % 2 == 0):
            raise ConfigError("points must be odd and at least 3")
        if not 0 < self.window < 1:
            raise ConfigError("window is a fraction of kappa_inf in (0, 1)")
        if not 0 < self.energy_window < self.kappa_inf:
            raise ConfigError("energy_window must lie in (0, kappa_inf)")
        if self.refinements < 0 or self.jobs < 1 or self.trials < 0 or self.seed < 0:
            raise ConfigError("refinements, trials and seed must be nonnegative, jobs positive")
        if self.bump is not None and not {"amplitude"} <= set(self.bump) <= {"amplitude", "center", "width"}:
            raise ConfigError("bump needs amplitude and optionally center, width")
        return self

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(**data)
        cfg.deltas = [float(d) for d in cfg.deltas]
        return cfg.validate()

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    @classmethod
    def load(cls, path: str | os.PathLike) -> "ExperimentConfig":
        return cls.from_json(Path(path).read_text())

    @property
    def window_abs(self) -> float:
        return self.window * self.kappa_inf


@dataclass(frozen=True)
class DecayFit:
    """Least-squares fit of ln(error) = intercept + slope * parameter."""

    samples: tuple[tuple[float, float], ...]
    slope: float
    intercept: float
    max_residual: float
    stderr: float
    confidence: tuple[float, float]

    def to_dict(self) -> dict:
        return {
            "samples": [list(s) for s in self.samples],
            "slope": self.slope,
            "intercept": self.intercept,
            "max_residual": self.max_residual,
            "stderr": self.stderr,
            "confidence": list(self.confidence),
        }


def fit_decay_rate(samples: Iterable[tuple[float, float]], level: float = 0.95) -> DecayFit:
    pts = tuple((float(x), float(y)) for x, y in samples)
    if len(pts) < 3:
        raise InvalidSample("a decay fit needs at least 3 samples")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.any(~np.isfinite(y)) or np.any(y <= 0):
        raise InvalidSample("errors must be finite and positive")
    ly = np.log(y)
    fit = stats.linregress(x, ly)
    resid = ly - (fit.intercept + fit.slope * x)
    t = stats.t.ppf(0.5 + level / 2, len(pts) - 2)
    band = (fit.slope - t * fit.stderr, fit.slope + t * fit.stderr)
    return DecayFit(pts, float(fit.slope), float(fit.intercept), float(np.max(np.abs(resid))),
                    float(fit.stderr), (float(band[0]), float(band[1])))


def build_profile(cfg: ExperimentConfig, delta: float | None = None) -> tuple[MassProfile, MassProfile]:
    """(base wall, glued profile) for one delta or for the configured centers."""
    base = make_single_wall(cfg.kind, cfg.kappa_inf)
    if cfg.centers is not None:
        prof = glue_at(base, cfg.centers)
    else:
        prof = glue_walls(base, cfg.n, delta)
    if cfg.bump is not None:
        prof = add_bump(prof, **cfg.bump)
    return base, prof


def _grid(cfg: ExperimentConfig, prof: MassProfile) -> Grid:
    if cfg.half_length is not None:
        return Grid(cfg.half_length, cfg.points)
    return Grid.around(prof, cfg.spacing, cfg.margin)


def _join(values) -> str:
    return ";".join(repr(float(v)) for v in values)


def _pair_errors(values, reference):
    values, reference = np.asarray(values), np.asarray(reference)
    if values.shape != reference.shape:
        return math.nan
    return float(np.max(np.abs(values - reference), initial=0.0))


def sweep_row(cfg: ExperimentConfig, delta: float) -> dict:
    """All quantities for one half-spacing; failures land in the ``error`` column."""
    row = {c: "" for c in SWEEP_COLUMNS}
    row.update(delta=float(delta), n_walls=cfg.n)
    try:
        base, prof = build_profile(cfg, delta)
        a = coupling(base, delta)
        row["a"] = a
        grid = _grid(cfg, prof)
        spec = dirac_spectrum_in_gap(prof, grid, cfg.tol, cfg.refinements)
        K = cfg.window_abs
        shoot = shooting_oracle(prof, (-K, K), step=cfg.shoot_step)
        inside = spec.eigenvalues[np.abs(spec.eigenvalues) <= K]
        leading = asymptotic_eigenvalues(cfg.n, delta, base)
        row.update(gap_count=spec.count, shoot_count=len(shoot), E_witten=_join(spec.eigenvalues),
                   E_shoot=_join(shoot), E_leading=_join(leading))
        row["cross_method"] = _pair_errors(inside, shoot)
        if spec.count == cfg.n:
            nonzero = np.abs(leading) > 0
            row["err_eigenvalue"] = float(np.max(np.abs(spec.eigenvalues - leading)[nonzero], initial=0.0))
            if cfg.n % 2:
                mid = cfg.n // 2
                row["E_zero"] = float(spec.eigenvalues[mid])
                row["err_zero_mode"] = spec.eigenfunction_error(mid, exact_zero_mode(prof)(grid.nodes))
            approx = approximate_eigenfunctions(cfg.n, delta, base)
            errs = [spec.eigenfunction_error(k, ap.combination(grid.nodes))
                    for k, ap in enumerate(approx) if ap.energy != 0.0]
            row["err_eigenfunction"] = max(errs, default=math.nan)
        modes = shifted_modes(base, cfg.n, delta)
        row["mode_residual"] = residual_norm(prof, modes[0])
        if cfg.bump is None and cfg.centers is None:
            red = assemble_full_matrix(cfg.n, delta, base, window=K)
            roots = det_roots(red)
            row.update(root_count=len(roots), E_reduced=_join(roots))
            row["reduction_vs_direct"] = _pair_errors(roots, inside)
            row["remainder"] = max(red.remainder(E) for E in (0.0, a, -a))
            vals, vecs = leading_eigenpairs(cfg.n, delta, base)
            top = int(np.argmax(vals))
            if len(roots):
                row["correction_norm"] = reconstruct_corrector(red, vecs[:, top], float(roots[-1])).norm
        if isinstance(row["cross_method"], float) and not row["cross_method"] <= 1e-6:
            row["error"] = f"witten/shooting disagreement {row['cross_method']:.2e}"
    except DomainWallError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _row_worker(args):
    cfg, delta = args
    return sweep_row(cfg, delta)


def run_sweep(cfg: ExperimentConfig, path: str | os.PathLike | None = None) -> list[dict]:
    """One row per delta in ``cfg.deltas``; written to ``path`` as CSV when given."""
    cfg.validate()
    tasks = [(cfg, d) for d in cfg.deltas]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_row_worker, tasks))
    else:
        rows = [_row_worker(t) for t in tasks]
    if path is not None:
        write_csv(path, "sweep", SWEEP_COLUMNS, rows)
    return rows


def write_csv(path, name: str, columns: Sequence[str], rows: Iterable[dict | Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        fh.write(f"# {CSV_SCHEMA} {name}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            vals = [r.get(c, "") for c in columns] if isinstance(r, dict) else list(r)
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in vals])
    return path


def read_csv(path) -> tuple[str, list[dict]]:
    """(schema line, rows as dicts of strings)."""
    with Path(path).open() as fh:
        header = fh.readline().strip()
        if not header.startswith(f"# {CSV_SCHEMA}"):
            raise InvalidSample(f"{path}: missing '{CSV_SCHEMA}' header")
        return header, list(csv.DictReader(fh))


def _spinor_rows(x, *spinors):
    cols = [x]
    for s in spinors:
        cols += [s[0].real, s[0].imag, s[1].real, s[1].imag]
    return np.column_stack(cols)


def _spinor_cols(*labels):
    out = ["x"]
    for lab in labels:
        out += [f"re_{lab}1", f"im_{lab}1", f"re_{lab}2", f"im_{lab}2"]
    return out


def dump_figures(cfg: ExperimentConfig, out: str | os.PathLike | None = None) -> list[Path]:
    """CSV data for the wall profile, zero modes and the split pairs.

    Uses the first configured delta for the glued profiles.
    """
    cfg.validate()
    out = Path(out or cfg.out)
    delta = cfg.deltas[0] if cfg.deltas else 2.0
    base = make_single_wall(cfg.kind, cfg.kappa_inf)
    K = antiderivative(base)
    paths = []
    x = np.linspace(-3, 3, 601)
    paths.append(write_csv(out / "profile_single.csv", "profile", ["x", "kappa", "K"],
                           np.column_stack([x, base(x), K(x)])))
    z = zero_mode(base)
    x = np.linspace(-8, 8, 1601)
    paths.append(write_csv(out / "mode_single.csv", "mode", _spinor_cols("a"), _spinor_rows(x, z(x))))

    for n, name in ((2, "two_wall"), (3, "three_wall")):
        prof = glue_walls(base, n, delta)
        Kp = antiderivative(prof)
        grid = _grid(cfg, prof)
        xs = grid.nodes
        paths.append(write_csv(out / f"profile_{name}.csv", "profile", ["x", "kappa", "K"],
                               np.column_stack([xs, prof(xs), Kp(xs)])))
        spec = dirac_spectrum_in_gap(prof, grid, cfg.tol, cfg.refinements)
        minus, plus = spec.eigenfunctions[0], spec.eigenfunctions[-1]
        paths.append(write_csv(out / f"{name}_modes.csv", "mode", _spinor_cols("plus", "minus"),
                               _spinor_rows(xs, plus, minus)))
        if n == 3:
            ez = exact_zero_mode(prof)
            paths.append(write_csv(out / "three_wall_zero.csv", "mode", _spinor_cols("a"), _spinor_rows(xs, ez(xs))))
    return paths
