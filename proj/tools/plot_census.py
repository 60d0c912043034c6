#!/usr/bin/env python3
"""Plot census CSV from `ttrose census --format csv`.

Left panel: certified words, distinct matrices and classes against n (log y).
Right panel: log log(classes) against max log lambda, the quantity the
entropy regression fits.
"""
import argparse
import csv
import math
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with (open(path, newline="") if path != "-" else sys.stdin) as f:
        rows = [r for r in csv.DictReader(f) if r.get("rank")]
    return sorted(rows, key=lambda r: (int(r["rank"]), int(r["n"])))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv", help="census CSV, or - for stdin")
    ap.add_argument("-o", "--out", default="census.png")
    args = ap.parse_args()

    rows = load(args.csv)
    if not rows:
        sys.exit("no census rows")
    fig, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    for rank in sorted({int(r["rank"]) for r in rows}):
        sub = [r for r in rows if int(r["rank"]) == rank]
        n = [int(r["n"]) for r in sub]
        for key, style in (("certified", "o-"), ("distinct_matrices", "s--"), ("classes", "^:")):
            left.semilogy(n, [max(int(r[key]), 1) for r in sub], style, label=f"r={rank} {key}")
        pts = [(float(r["max_log_lambda"]), math.log(math.log(int(r["classes"]))))
               for r in sub if int(r["classes"]) >= 2]
        if pts:
            right.plot(*zip(*pts), "o-", label=f"r={rank}")
    left.set_xlabel("inner word length n")
    left.legend(fontsize="small")
    right.set_xlabel("max log lambda")
    right.set_ylabel("log log classes")
    right.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)


if __name__ == "__main__":
    main()
