#!/usr/bin/env python3
"""Entropy-excess scaling figure from an `entropy` CSV.

Log-log plot of the entropy excess against the squeezing strength for each
omega/T value, with the exact, perturbative, and leading-order columns
overlaid and a slope-2 reference line anchored to the exact data.  The
fitted log-log slope of the exact column is annotated per panel.  Rows with
epsilon = 0 are excluded from the log axes.

Usage: plot_entropy_scaling.py --in entropy.csv --out fig.png
"""

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from plotcommon import SchemaError, load_rows, run_script, save_figure

REQUIRED = ("omega_over_t", "epsilon", "delta_s_exact", "delta_s_pert", "delta_s_leading")

SERIES = (
    ("delta_s_exact", "exact", "o-"),
    ("delta_s_pert", "perturbative", "s--"),
    ("delta_s_leading", "leading", "^:"),
)


def group_by_omega(rows):
    grouped = {}
    for row in rows:
        eps = float(row["epsilon"])
        if eps <= 0.0:
            continue  # log axes cannot carry the zero-squeezing row
        grouped.setdefault(float(row["omega_over_t"]), []).append(row)
    if not grouped:
        raise SchemaError("no rows with epsilon > 0")
    for rows_u in grouped.values():
        rows_u.sort(key=lambda r: float(r["epsilon"]))
    return dict(sorted(grouped.items()))


def fit_slope(eps, values):
    """Least-squares slope of ln(values) against ln(eps)."""
    return float(np.polyfit(np.log(eps), np.log(values), 1)[0])


def build_figure(rows):
    grouped = group_by_omega(rows)
    fig, axes = plt.subplots(1, len(grouped), figsize=(5.0 * len(grouped), 3.8), squeeze=False)
    slopes = {}
    for ax, (u, rows_u) in zip(axes[0], grouped.items()):
        eps = np.array([float(r["epsilon"]) for r in rows_u])
        for column, label, style in SERIES:
            vals = np.array([float(r[column]) for r in rows_u])
            ax.loglog(eps, vals, style, ms=3.5, label=label)
        exact = np.array([float(r["delta_s_exact"]) for r in rows_u])
        slope = fit_slope(eps, exact)
        slopes[u] = slope
        ref = exact[0] * (eps / eps[0]) ** 2
        ax.loglog(eps, ref, "k-", lw=0.9, alpha=0.6, label="slope-2 reference")
        ax.set_xlabel(r"squeezing $\varepsilon$")
        ax.set_ylabel(r"entropy excess $\delta S$ (nats)")
        ax.set_title(rf"$\omega/T$ = {u:g}, fitted slope {slope:.3f}")
        ax.legend(fontsize=8)
    fig.tight_layout()
    return fig, axes[0], slopes


def worker(argv):
    args = parse_args(argv)
    rows = load_rows(args.infile, REQUIRED)
    fig, _, slopes = build_figure(rows)
    save_figure(fig, args.out)
    plt.close(fig)
    for u, slope in slopes.items():
        print(f"omega_over_t={u:g} fitted_slope={slope:.4f}")
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
