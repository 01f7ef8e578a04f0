"""Write both qubit figure panels as CSV, and a PNG when matplotlib is available.

    python scripts/fig1.py --outdir results/ [--plot]
"""

import argparse
import sys
from pathlib import Path

from timeless.cli import (FIG1_RIGHT_COHERENCES, FIG1_X, EXIT_OK, cmd_fig1,
                          fig1_left_rows, fig1_right_rows)


def plot(outdir: Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    left, right = list(fig1_left_rows()), list(fig1_right_rows())
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9, 3.5))
    s01 = [r[0] for r in left]
    ax0.plot(s01, [r[1] for r in left], label="reduced (time averaged)")
    ax0.plot(s01, [r[2] for r in left], "--", label="global")
    ax0.set_xlabel(r"$|\sigma_{01}|$")
    ax0.set_ylabel("linear entropy")
    ax0.set_title(f"x = {FIG1_X:g}")
    ax0.legend(frameon=False)
    xs = [r[0] for r in right]
    for j, c in enumerate(FIG1_RIGHT_COHERENCES, start=1):
        ax1.plot(xs, [r[j] for r in right], label=rf"$|\sigma_{{01}}| = {c:g}$")
        ax1.axhline(2 * c * c, color="grey", lw=0.6, ls=":")
    ax1.set_xlabel("x")
    ax1.set_ylabel(r"$\Delta S$")
    ax1.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(outdir / "fig1.png", dpi=150)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", type=Path, default=Path("results"))
    ap.add_argument("--plot", action="store_true", help="also write fig1.png (needs matplotlib)")
    args = ap.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for panel in ("left", "right"):
        code = cmd_fig1(panel, args.outdir / f"fig1_{panel}.csv")
        if code != EXIT_OK:
            return code
    if args.plot:
        plot(args.outdir)
    print(f"wrote {args.outdir}/fig1_left.csv, fig1_right.csv" + (", fig1.png" if args.plot else ""))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
