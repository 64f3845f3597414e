"""Spectral radii of the named families against their threshold expressions, as CSV.

Example::

    python scripts/spectral_margins.py --n-max 200 > margins.csv
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

from spexgraph.constructions import build_graph
from spexgraph.spectral import spectral_radius


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=10)
    ap.add_argument("--n-max", type=int, default=100)
    args = ap.parse_args()

    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "sqrt_n_minus_1", "rho_star_plus", "rho_k4_star", "rho_k33_star", "rho_c4_star",
                "star_plus_margin", "k4_star_margin", "k33_square_gap"])
    for n in range(args.n_min, args.n_max + 1):
        s = math.sqrt(n - 1)
        sp = spectral_radius(build_graph("star-plus", n=n)).rho
        k4 = spectral_radius(build_graph("k4-star", n=n)).rho
        k33 = spectral_radius(build_graph("k33-star", n=n)).rho
        c4 = spectral_radius(build_graph("c4-star", n=n)).rho
        w.writerow([n, f"{s:.12g}", f"{sp:.12g}", f"{k4:.12g}", f"{k33:.12g}", f"{c4:.12g}",
                    f"{sp - s - 1 / (n - 1):.6g}", f"{k4 - s - 3 / (n - 1):.6g}", f"{(n - 1) - k33 * k33:.6g}"])


if __name__ == "__main__":
    main()
