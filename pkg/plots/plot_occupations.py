#!/usr/bin/env python3
"""Occupation curves p_n(epsilon) from an `occupations` CSV.

One curve per level, one panel per omega/T value; panels are labeled
(a), (b), ... in increasing omega/T order, matching the stock two-panel
dataset (a: omega/T = 0.2 with levels 8..12, b: 0.4 with 3..7).

Usage: plot_occupations.py --in data.csv --out fig.png [--panel a|b]
"""

import argparse
import string
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from plotcommon import SchemaError, load_rows, run_script, save_figure

REQUIRED = ("omega_over_t", "epsilon", "n", "p_exact")


def group_panels(rows):
    """{omega_over_t: {n: [(eps, p), ...]}} with sorted curves."""
    panels = {}
    for row in rows:
        u = float(row["omega_over_t"])
        n = int(row["n"])
        panels.setdefault(u, {}).setdefault(n, []).append(
            (float(row["epsilon"]), float(row["p_exact"]))
        )
    for curves in panels.values():
        for pts in curves.values():
            pts.sort()
    return dict(sorted(panels.items()))


def panel_label(index, omega_over_t):
    return f"({string.ascii_lowercase[index]}) $\\omega/T$ = {omega_over_t:g}"


def build_figure(rows, panel=None):
    panels = group_panels(rows)
    keys = list(panels)
    if panel is not None:
        index = string.ascii_lowercase.index(panel)
        if index >= len(keys):
            raise SchemaError(f"panel {panel!r} requested but only {len(keys)} panel(s) present")
        keys = [keys[index]]
        offsets = [index]
    else:
        offsets = list(range(len(keys)))
    fig, axes = plt.subplots(1, len(keys), figsize=(5.0 * len(keys), 3.8), squeeze=False)
    for ax, u, index in zip(axes[0], keys, offsets):
        for n, pts in sorted(panels[u].items()):
            eps = [e for e, _ in pts]
            pn = [p for _, p in pts]
            ax.plot(eps, pn, label=f"n = {n}")
        ax.set_xlabel(r"squeezing $\varepsilon = |s - 1|$")
        ax.set_ylabel(r"$p_n$")
        ax.set_title(panel_label(index, u))
        ax.legend(fontsize=8)
    fig.tight_layout()
    return fig, axes[0]


def worker(argv):
    args = parse_args(argv)
    rows = load_rows(args.infile, REQUIRED)
    fig, _ = build_figure(rows, panel=args.panel)
    save_figure(fig, args.out)
    plt.close(fig)
    return 0


def parse_args(argv):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--in", dest="infile", required=True)
    parser.add_argument("--out", required=True)
    parser.add_argument("--panel", choices=tuple(string.ascii_lowercase[:6]), default=None)
    return parser.parse_args(argv)


def main(argv=None):
    return run_script(worker, argv)


if __name__ == "__main__":
    sys.exit(main())
