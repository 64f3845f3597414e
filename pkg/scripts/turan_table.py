"""Exhaustive ex(n, gamma-k-free) next to floor(n^2/4) + k - 1.

Example::

    python scripts/turan_table.py --n-max 8 --k 1 2 3
"""

from __future__ import annotations

import argparse

from spexgraph.search import turan_number


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=3)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()

    print(f"{'n':>3} {'k':>3} {'ex':>4} {'formula':>8} {'#extremal':>10}  first extremal")
    for n in range(args.n_min, args.n_max + 1):
        for k in args.k:
            res = turan_number(n, f"gamma-{k}-free")
            formula = n * n // 4 + k - 1
            flag = "" if res.max_edges == formula else "  <-- differs"
            print(f"{n:>3} {k:>3} {res.max_edges:>4} {formula:>8} {len(res.extremal):>10}  {res.extremal[0]}{flag}")


if __name__ == "__main__":
    main()
