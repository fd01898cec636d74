#!/usr/bin/env python3
"""Plot J_C against the swept parameter from a qar_cli CSV, one line per series."""
import argparse
import csv
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("--out", default=None, help="image path (default: <csv>.png)")
    args = ap.parse_args()

    with open(args.csv, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)

    axis = header[0]
    diag_start = {"p0", "mean_n1"}
    series_cols = []
    for i, name in enumerate(header[2:], start=2):
        if name in diag_start or name == "error":
            break
        series_cols.append(i)

    curves = defaultdict(list)
    for r in rows:
        if not r[1]:
            continue
        key = ", ".join(f"{header[i]}={r[i]}" for i in series_cols)
        curves[key].append((float(r[0]), float(r[1])))

    fig, ax = plt.subplots(figsize=(5, 3.5))
    for key, pts in curves.items():
        xs, ys = zip(*pts)
        ax.plot(xs, ys, marker=".", label=key or None)
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel(axis)
    ax.set_ylabel("J_C")
    if series_cols:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(args.out or args.csv.rsplit(".", 1)[0] + ".png", dpi=150)


if __name__ == "__main__":
    main()
