#!/usr/bin/env python3
"""Render xxz_cli CSV output.

Usage: plot_csv.py file.csv [xcol] [ycol ...]

Defaults to the first column on x and every numeric column on y.
Ladder files (first column L) are drawn on log-log axes.
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> int:
    if len(sys.argv) < 2:
        print(__doc__)
        return 1
    path = sys.argv[1]
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header, data = rows[0], rows[1:]

    xcol = sys.argv[2] if len(sys.argv) > 2 else header[0]
    ycols = sys.argv[3:] or [c for c in header[1:]]
    xi = header.index(xcol)

    def numeric(col):
        try:
            return [float(r[header.index(col)]) for r in data]
        except ValueError:
            return None

    xs = numeric(xcol)
    loglog = xcol == "L"
    fig, ax = plt.subplots(figsize=(7, 5))
    for c in ycols:
        ys = numeric(c)
        if ys is None:
            continue
        if loglog:
            ax.loglog(xs, [abs(v) for v in ys], "o-", label=c)
        else:
            ax.plot(xs, ys, label=c)
    ax.set_xlabel(xcol)
    ax.legend()
    ax.grid(True, which="both", alpha=0.3)
    out = path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=130, bbox_inches="tight")
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
