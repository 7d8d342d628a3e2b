#!/usr/bin/env python3
"""Offline plots for the CSV files written by the elbie experiment runner.

Modes map onto the runner's outputs:

    plot_results.py convergence out/convergence.csv
    plot_results.py gmres       out/gmres.csv
    plot_results.py condition   out/condition.csv
    plot_results.py spectrum    out/spectrum_N256.csv
    plot_results.py field       out/field_N256.csv

Each mode reads one CSV and writes a PNG next to it (or to --output).
"""

import argparse
import csv
import math
import sys


def read_rows(path):
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        rows = [row for row in reader]
    if not rows:
        sys.exit(f"{path}: no data rows")
    return rows


def column(rows, name):
    if name not in rows[0]:
        sys.exit(f"missing column '{name}' (have: {', '.join(rows[0])})")
    return [float(r[name]) for r in rows]


def plot_convergence(ax, rows):
    N = column(rows, "N")
    err = column(rows, "farfield_error")
    ax.loglog(N, err, "o-", base=2)
    ax.set_xlabel("N")
    ax.set_ylabel("far-field error")
    ax.set_title("convergence")
    ax.grid(True, which="both", alpha=0.3)


def plot_gmres(ax, rows):
    N = column(rows, "N")
    it = column(rows, "iterations")
    ax.semilogx(N, it, "s-", base=2)
    ax.set_xlabel("N")
    ax.set_ylabel("GMRES iterations")
    ax.set_title("iteration counts")
    ax.grid(True, alpha=0.3)


def plot_condition(ax, rows):
    N = column(rows, "N")
    for key in ("cond_regularized", "cond_unregularized"):
        ax.loglog(N, column(rows, key), "o-", base=2, label=key)
    ax.set_xlabel("N")
    ax.set_ylabel("condition number")
    ax.set_title("conditioning")
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)


def plot_spectrum(ax, rows):
    re = column(rows, "re")
    im = column(rows, "im")
    ax.scatter(re, im, s=8, alpha=0.6)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title("eigenvalues")
    ax.set_aspect("equal", adjustable="datalim")
    ax.grid(True, alpha=0.3)


def plot_field(ax, rows):
    x = column(rows, "x")
    y = column(rows, "y")
    mag = [
        math.hypot(
            math.hypot(float(r["Re u1"]), float(r["Im u1"])),
            math.hypot(float(r["Re u2"]), float(r["Im u2"])),
        )
        for r in rows
    ]
    sc = ax.scatter(x, y, c=mag, s=10)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title("|u| at the probe points")
    ax.set_aspect("equal", adjustable="datalim")
    ax.figure.colorbar(sc, ax=ax)


MODES = {
    "convergence": plot_convergence,
    "gmres": plot_gmres,
    "condition": plot_condition,
    "spectrum": plot_spectrum,
    "field": plot_field,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("mode", choices=sorted(MODES))
    parser.add_argument("csv_file")
    parser.add_argument("-o", "--output", help="PNG path (default: CSV path with .png)")
    args = parser.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required: pip install matplotlib")

    rows = read_rows(args.csv_file)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    MODES[args.mode](ax, rows)
    out = args.output or args.csv_file.rsplit(".", 1)[0] + ".png"
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(out)


if __name__ == "__main__":
    main()
