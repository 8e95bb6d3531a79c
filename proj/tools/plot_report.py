#!/usr/bin/env python3
"""Plot per-sample bulk and edge values from bulkedge CSV reports."""
import argparse
import csv
import math
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    header, body = rows[0], rows[1:]
    cols = {h: [] for h in header}
    for r in body:
        for h, v in zip(header, r):
            cols[h].append(float(v) if v else math.nan)
    return cols


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", nargs="+")
    ap.add_argument("-o", "--out", default="report.png")
    args = ap.parse_args()

    fig, (bulk, edge) = plt.subplots(1, 2, figsize=(10, 4))
    for path in args.csv:
        c = load(path)
        name = os.path.splitext(os.path.basename(path))[0]
        x = c["sample"]
        bulk.plot(x, c["bulk_raw"], "o", label=f"{name} raw")
        bulk.plot(x, c["bulk_value"], "x", label=f"{name} index")
        for key in ("edge_sigma", "z2_edge_sigma", "edge_crossings"):
            if any(not math.isnan(v) for v in c.get(key, [])):
                edge.plot(x, c[key], "s", label=f"{name} {key}")
    bulk.set_xlabel("sample")
    bulk.set_title("bulk")
    edge.set_xlabel("sample")
    edge.set_title("edge")
    for ax in (bulk, edge):
        ax.grid(alpha=0.3)
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)


if __name__ == "__main__":
    main()
