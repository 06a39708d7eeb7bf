#!/usr/bin/env python3
"""Runaway-region map from a `resonance-scan` CSV.

Heatmap of the spectral radius over the (theta, s) grid with the analytic
threshold curve s_c(theta) overlaid; the curve values come from the CSV's
s_c_formula column, no physics is recomputed here.

Usage: plot_resonance_map.py --in scan.csv --out fig.png
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from plotcommon import load_rows, run_script, save_figure

REQUIRED = ("theta", "s", "spectral_radius", "s_c_formula")


def pivot(rows):
    thetas = sorted({float(r["theta"]) for r in rows})
    svals = sorted({float(r["s"]) for r in rows})
    ti = {t: i for i, t in enumerate(thetas)}
    si = {s: i for i, s in enumerate(svals)}
    grid = np.full((len(svals), len(thetas)), np.nan)
    threshold = {}
    for r in rows:
        t, s = float(r["theta"]), float(r["s"])
        grid[si[s], ti[t]] = float(r["spectral_radius"])
        threshold[t] = float(r["s_c_formula"])
    curve = np.array([threshold[t] for t in thetas])
    return np.array(thetas), np.array(svals), grid, curve


def build_figure(rows):
    thetas, svals, grid, curve = pivot(rows)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    mesh = ax.pcolormesh(thetas, svals, np.log10(grid), shading="nearest", cmap="magma")
    fig.colorbar(mesh, ax=ax, label=r"$\log_{10}$ spectral radius")
    inside = (curve >= svals[0]) & (curve <= svals[-1])
    ax.plot(
        thetas[inside],
        curve[inside],
        color="cyan",
        lw=1.8,
        label=r"$s_c = (1 + |\sin\theta|)/|\cos\theta|$",
    )
    ax.set_xlabel(r"rotation angle $\theta$")
    ax.set_ylabel(r"per-switch gain $s$")
    ax.set_title("runaway squeezing region")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    return fig, ax


def worker(argv):
    args = parse_args(argv)
    rows = load_rows(args.infile, REQUIRED)
    fig, _ = build_figure(rows)
    save_figure(fig, args.out)
    plt.close(fig)
    return 0


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="infile", required=True)
    parser.add_argument("--out", required=True)
    return parser.parse_args(argv)


def main(argv=None):
    return run_script(worker, argv)


if __name__ == "__main__":
    sys.exit(main())
