"""Convergence of the discrete-clock composite and of the short-time law.

Prints two tables for a handful of states:
  * |discrete delta_S - analytic| against the tick count N, with successive ratios
  * |delta_S - short-time estimate| against the window T, with quarter-T ratios

    python scripts/convergence_study.py [--seed 0] [--csv out.csv]
"""

import argparse
import csv
import sys

import numpy as np

from timeless.evolution import EvolutionWindow
from timeless.indicators import delta_S, short_time_delta_S
from timeless.qstate import DensityMatrix
from timeless.sampling import random_density, random_spectrum
from timeless.spectra import EnergySpectrum
from timeless.verify import embedding_errors

NS = (8, 16, 32, 64, 128, 256)


def cases(seed):
    rng = np.random.default_rng(seed)
    yield "qubit s01=0.25", DensityMatrix([[0.2, 0.25], [0.25, 0.8]]), EnergySpectrum([0.0, 1.0])
    yield "qutrit degenerate", random_density(rng, 3), EnergySpectrum([1.0, 1.0, 2.0])
    for d in (3, 4):
        yield f"random d={d}", random_density(rng, d), random_spectrum(rng, d, degenerate=False)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description="discrete clock and short-time convergence tables")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--T", type=float, default=2.4, help="window length for the clock study")
    ap.add_argument("--csv", help="also write the clock table here")
    args = ap.parse_args(argv)

    rows = []
    print(f"discrete clock, T = {args.T:g}")
    print(f"{'case':<20}{'N':>6}{'error':>14}{'ratio':>9}")
    for name, sigma, spec in cases(args.seed):
        errs, tick_res, _ = embedding_errors(sigma, spec, args.T, NS)
        for i, (N, e) in enumerate(zip(NS, errs)):
            ratio = errs[i - 1] / e if i and e > 0 else float("nan")
            print(f"{name:<20}{N:>6}{e:>14.3e}{ratio:>9.3f}")
            rows.append((name, N, e, ratio))
        print(f"{'':<20}tick residual {tick_res:.1e}")

    print("\nshort-time law")
    print(f"{'case':<20}{'T':>10}{'discrepancy':>14}{'ratio':>9}")
    for name, sigma, spec in cases(args.seed):
        T0 = 0.4 / np.max(np.abs(spec.gaps))
        prev = None
        for j in range(4):
            T = T0 / 4 ** j
            w = EvolutionWindow(T)
            disc = abs(delta_S(sigma, spec, w) - short_time_delta_S(sigma, spec, w))
            ratio = prev / disc if prev else float("nan")
            print(f"{name:<20}{T:>10.3e}{disc:>14.3e}{ratio:>9.2f}")
            prev = disc

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["case", "N", "error", "ratio"])
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
