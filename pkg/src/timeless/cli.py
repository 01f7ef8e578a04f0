"""Command line entry point: ``timeless {fig1,verify,sweep}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage, config or I/O error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import astuple, dataclass, fields
from pathlib import Path

import numpy as np

from .config import ConfigError, ScenarioConfig, load_config
from .embedding import (MAX_COMPOSITE_DIM, CompositeTooLargeError, DiscreteClock,
                        build_universe_density, discrete_delta_S, scenario_from_density)
from .evolution import EvolutionWindow, time_average
from .indicators import DEFAULT_WITNESS_TOL, delta_S, indicator_report
from .qstate import DensityMatrix, linear_entropy
from .spectra import EnergySpectrum
from .verify import run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# Qubit used for the figure data: sigma_00 = 0.2, levels (0, 1).
FIG1_SIGMA00 = 0.2
FIG1_X = 1.2
FIG1_LEFT_GRID = (0.0, 0.4, 201)
FIG1_RIGHT_GRID = (0.0, 10.0, 501)
FIG1_RIGHT_COHERENCES = (0.25, 0.35)


@dataclass(frozen=True)
class SweepRow:
    x: float | None
    T: float
    S_global: float
    S_reduced: float
    delta_S: float
    delta_S_max: float
    short_time_estimate: float
    witness: int
    discrete_delta_S: float | None
    N: int | None


SWEEP_HEADER = [f.name for f in fields(SweepRow)]


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def _qubit(sigma01: float) -> DensityMatrix:
    return DensityMatrix([[FIG1_SIGMA00, sigma01], [np.conj(sigma01), 1.0 - FIG1_SIGMA00]])


def fig1_left_rows():
    spec = EnergySpectrum([0.0, 1.0])
    window = EvolutionWindow.from_x(FIG1_X, 1.0)
    for s01 in np.linspace(*FIG1_LEFT_GRID):
        sigma = _qubit(float(s01))
        yield (float(s01), linear_entropy(time_average(sigma, spec, window)),
               linear_entropy(sigma))


def fig1_right_rows():
    spec = EnergySpectrum([0.0, 1.0])
    states = [_qubit(c) for c in FIG1_RIGHT_COHERENCES]
    for x in np.linspace(*FIG1_RIGHT_GRID):
        window = EvolutionWindow.from_x(float(x), 1.0)
        yield (float(x), *(delta_S(s, spec, window) for s in states))


def cmd_fig1(panel: str, out) -> int:
    if panel == "left":
        header, rows = ["sigma01", "S_reduced", "S_global"], fig1_left_rows()
    else:
        header, rows = ["x", "delta_S_025", "delta_S_035"], fig1_right_rows()
    try:
        write_csv(out, header, rows)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def sweep_rows(cfg: ScenarioConfig, max_dim: int = MAX_COMPOSITE_DIM,
               witness_tol: float = DEFAULT_WITNESS_TOL):
    """Rows in order: state case, then window value ascending, then N ascending."""
    spec = cfg.spec
    eps = cfg.epsilon
    for case in cfg.cases:
        for value, T in zip(cfg.window_values, cfg.T_values):
            window = EvolutionWindow(T, spec.hbar)
            rep = indicator_report(case.sigma, spec, window, witness_tol)
            x = value if cfg.window_var == "x" else (window.x(eps) if eps is not None else None)
            base = dict(x=x, T=T, S_global=rep.S_global, S_reduced=rep.S_reduced,
                        delta_S=rep.delta_S, delta_S_max=rep.delta_S_max,
                        short_time_estimate=rep.short_time_estimate,
                        witness=int(rep.entangled_witness))
            if not cfg.embedding_enabled:
                yield SweepRow(**base, discrete_delta_S=None, N=None)
                continue
            for N in cfg.embedding_N:
                clock = DiscreteClock(N, T)
                rho_u = build_universe_density(scenario_from_density(case.sigma, spec, clock), max_dim)
                yield SweepRow(**base, discrete_delta_S=discrete_delta_S(rho_u, spec.dim, N), N=N)


def cmd_sweep(config, out=None, max_dim: int = MAX_COMPOSITE_DIM) -> int:
    try:
        cfg = load_config(config)
        target = out or cfg.output_path
        if not target:
            raise ConfigError("no output path: pass --out or set output.path")
        rows = [astuple(r) for r in sweep_rows(cfg, max_dim)]
    except (ConfigError, CompositeTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        write_csv(target, SWEEP_HEADER, rows)
    except OSError as exc:
        print(f"error: cannot write {target}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_verify(config, seed: int = 0, max_dim: int = MAX_COMPOSITE_DIM, stream=None) -> int:
    stream = stream or sys.stdout
    try:
        cfg = load_config(config)
        results = run_checks(cfg, seed=seed, max_dim=max_dim)
    except (ConfigError, CompositeTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for r in results:
        print(r.line(), file=stream)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=stream)
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timeless",
        description="Clock-system entanglement indicator for mixed Page-Wootters states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig1", help="write the qubit figure data as CSV")
    p.add_argument("--panel", choices=["left", "right"], required=True)
    p.add_argument("--out", required=True, type=Path)

    p = sub.add_parser("verify", help="run identity and convergence checks for a config")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized batch")
    p.add_argument("--max-dim", type=int, default=MAX_COMPOSITE_DIM,
                   help="cap on the composite dimension d*N")

    p = sub.add_parser("sweep", help="evaluate the indicator over the config's window grid")
    p.add_argument("--config", required=True, type=Path)
    p.add_argument("--out", type=Path, help="CSV path (overrides output.path)")
    p.add_argument("--max-dim", type=int, default=MAX_COMPOSITE_DIM,
                   help="cap on the composite dimension d*N")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "fig1":
        return cmd_fig1(args.panel, args.out)
    if args.command == "verify":
        return cmd_verify(args.config, args.seed, args.max_dim)
    return cmd_sweep(args.config, args.out, args.max_dim)


if __name__ == "__main__":
    sys.exit(main())
