#!/usr/bin/env python3
"""Asymptotics of the conjugate of the exponential Young function.

For psi(p) = p^(1/m) the companion Young function grows like exp(m u^... )
in the exponent scale, and its conjugate should behave like

    N*(y)  ~  y * ln^(1/m)(e + y)        (up to constants)

for large y.  The script tabulates the ratio N*(y) / (y ln^(1/m)(e + y))
over a log grid of y for several m and prints it, so the stabilization of
the ratio (and the constant it stabilizes to) can be eyeballed or plotted
from the optional CSV.
"""
import argparse
import csv
import math

import numpy as np

from glsnum.orlicz import build_N, conjugate_young
from glsnum.psi import make_power_psi


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=float, nargs="+", default=[1.0, 2.0, 3.0])
    ap.add_argument("--y-min", type=float, default=10.0)
    ap.add_argument("--y-max", type=float, default=1e4)
    ap.add_argument("--points", type=int, default=13)
    ap.add_argument("--csv", default=None)
    args = ap.parse_args()

    ys = np.geomspace(args.y_min, args.y_max, args.points)
    Ns = {m: build_N(make_power_psi(m)) for m in args.m}
    table = []
    header = ["y"] + [f"ratio_m={m:g}" for m in args.m]
    print("  ".join(f"{h:>14s}" for h in header))
    for y in ys:
        row = [float(y)]
        for m in args.m:
            val = conjugate_young(Ns[m], float(y))
            row.append(val / (y * math.log(math.e + y) ** (1.0 / m)))
        table.append(row)
        print("  ".join(f"{x:14.6g}" for x in row))

    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(table)


if __name__ == "__main__":
    main()
