"""Command-line entry point: ``domainwall <verb> [--config FILE] [--out DIR] ...``."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .errors import ConfigError, InvalidParameter, NumericalError
from .experiments import (
    VERBS,
    ExperimentConfig,
    _grid,
    build_profile,
    dump_figures,
    fit_decay_rate,
    read_csv,
    run_sweep,
    write_csv,
)
from .reduction import (
    assemble_full_matrix,
    asymptotic_eigenvalues,
    coupling,
    det_roots,
    leading_eigenpairs,
    reconstruct_corrector,
)
from .solver import dirac_spectrum_in_gap, energy_estimate_check, shooting_oracle

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3

log = logging.getLogger("domainwall")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="domainwall", description="Gap spectra of multi-domain-wall Dirac operators.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--config", type=Path, help="JSON experiment config")
    p.add_argument("--out", type=Path, help="output directory (overrides the config)")
    p.add_argument("--seed", type=int, help="seed for random trial functions")
    p.add_argument("--jobs", type=int, help="worker processes for sweeps")
    p.add_argument("--input", type=Path, help="fit: CSV produced by 'sweep'")
    p.add_argument("--column", default="err_eigenvalue", help="fit: column to fit against delta")
    p.add_argument("--eigenfunctions", action="store_true", help="spectrum: also dump eigenfunction CSVs")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _config(args) -> ExperimentConfig:
    cfg = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()
    cfg.verb = args.verb
    if args.out is not None:
        cfg.out = str(args.out)
    if args.seed is not None:
        cfg.seed = args.seed
    if args.jobs is not None:
        cfg.jobs = args.jobs
    return cfg.validate()


def _emit(out: Path, name: str, payload) -> None:
    out.mkdir(parents=True, exist_ok=True)
    text = json.dumps(payload, indent=2)
    (out / name).write_text(text + "\n")
    print(text)


def _deltas(cfg):
    return [None] if cfg.centers is not None else cfg.deltas


def cmd_spectrum(cfg: ExperimentConfig, args) -> None:
    results = []
    for d in _deltas(cfg):
        _, prof = build_profile(cfg, d)
        grid = _grid(cfg, prof)
        K = cfg.window_abs
        spec = dirac_spectrum_in_gap(prof, grid, cfg.tol, cfg.refinements)
        entry = spec.to_dict() | {"delta": d, "shooting": [float(v) for v in shooting_oracle(prof, (-K, K), step=cfg.shoot_step)]}
        if cfg.n == 2 and cfg.centers is None and cfg.bump is None and cfg.trials:
            from .modes import shifted_modes

            base = build_profile(cfg, d)[0]
            modes = shifted_modes(base, 2, d)
            rep = energy_estimate_check(prof, modes, cfg.energy_window, cfg.trials, cfg.seed, grid, modes[0])
            entry["energy_estimate"] = {"min_ratio": rep.min_ratio, "bound": rep.bound, "passed": rep.passed,
                                        "seed": rep.seed, "trials": rep.trials,
                                        "unorthogonalized_ratio": rep.unorthogonalized_ratio}
        results.append(entry)
        if args.eigenfunctions:
            cols = ["x"]
            data = [grid.nodes]
            for k, f in enumerate(spec.eigenfunctions):
                cols += [f"re_{k}_1", f"im_{k}_1", f"re_{k}_2", f"im_{k}_2"]
                data += [f[0].real, f[0].imag, f[1].real, f[1].imag]
            tag = "centers" if d is None else f"delta_{d:g}"
            write_csv(Path(cfg.out) / f"eigenfunctions_{tag}.csv", "eigenfunctions", cols, np.column_stack(data))
    _emit(Path(cfg.out), "spectrum.json", results)


def cmd_reduce(cfg: ExperimentConfig, args) -> None:
    if cfg.centers is not None or cfg.bump is not None:
        raise ConfigError("reduce supports equally spaced walls without a bump")
    results = []
    for d in cfg.deltas:
        base, prof = build_profile(cfg, d)
        red = assemble_full_matrix(cfg.n, d, base, window=cfg.window_abs)
        roots = det_roots(red)
        vals, vecs = leading_eigenpairs(cfg.n, d, base)
        eta = reconstruct_corrector(red, vecs[:, -1], float(roots[-1])) if len(roots) else None
        direct = dirac_spectrum_in_gap(prof, _grid(cfg, prof), cfg.tol, cfg.refinements).eigenvalues
        agree = [float(abs(r - e)) for r, e in zip(roots, direct)] if len(direct) == len(roots) else []
        results.append({
            "n": cfg.n,
            "delta": d,
            "a": coupling(base, d),
            "leading_eigenvalues": [float(v) for v in vals],
            "det_roots": [float(r) for r in roots],
            "correction_norm": None if eta is None else eta.norm,
            "agreement_with_direct": agree,
        })
    _emit(Path(cfg.out), "reduce.json", results)


def cmd_asymptotics(cfg: ExperimentConfig, args) -> None:
    base = build_profile(cfg, cfg.deltas[0] if cfg.deltas else 2.0)[0]
    rows = [{"delta": d, "a": coupling(base, d),
             "eigenvalues": [float(v) for v in asymptotic_eigenvalues(cfg.n, d, base)]} for d in cfg.deltas]
    _emit(Path(cfg.out), "asymptotics.json", rows)


def cmd_sweep(cfg: ExperimentConfig, args) -> None:
    path = Path(cfg.out) / "sweep.csv"
    rows = run_sweep(cfg, path)
    failed = [r for r in rows if r["error"]]
    print(json.dumps({"csv": str(path), "rows": len(rows), "errors": len(failed)}))


def cmd_fit(cfg: ExperimentConfig, args) -> None:
    src = args.input or Path(cfg.out) / "sweep.csv"
    _, rows = read_csv(src)
    samples = [(float(r["delta"]), float(r[args.column])) for r in rows if r.get(args.column) not in ("", None)]
    fit = fit_decay_rate(samples)
    _emit(Path(cfg.out), f"fit_{args.column}.json", fit.to_dict())


def cmd_dump(cfg: ExperimentConfig, args) -> None:
    paths = dump_figures(cfg)
    print(json.dumps([str(p) for p in paths], indent=2))


COMMANDS = {
    "spectrum": cmd_spectrum,
    "reduce": cmd_reduce,
    "asymptotics": cmd_asymptotics,
    "sweep": cmd_sweep,
    "fit": cmd_fit,
    "dump": cmd_dump,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = _config(args)
        COMMANDS[cfg.verb](cfg, args)
    except (NumericalError, ArithmeticError, np.linalg.LinAlgError) as exc:
        log.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except (InvalidParameter, ValueError, NotImplementedError, FileNotFoundError) as exc:
        log.error("invalid input: %s", exc)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
