# Tabulate Loewy lengths of descent algebras over a range of ranks.
# Each row is computed twice when the group is small enough (pullback
# through the invariant face algebra, and directly from minimal coset
# representatives) and the two must agree.
#
# Usage:  python3 scripts/run_loewy_table.py [--max-rank N] [--long-running]

import argparse
import time

from descent_loewy import loewy_length_descent
from descent_loewy.coxeter import group_order

CROSS_CHECK_MAX_ORDER = 2000


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-rank", type=int, default=6)
    ap.add_argument("--long-running", action="store_true",
                    help="include rank 7 (hours)")
    args = ap.parse_args()

    rows = []
    for family in ("A", "B", "D"):
        lo = 1 if family == "A" else 2
        hi = args.max_rank + (1 if args.long_running else 0)
        for rank in range(lo, hi + 1):
            if family == "D" and rank < 3:
                continue
            t = time.time()
            res = loewy_length_descent(family, rank)
            if group_order(family, rank) <= CROSS_CHECK_MAX_ORDER:
                direct = loewy_length_descent(family, rank,
                                              method="group-direct")
                assert direct["loewy_length"] == res["loewy_length"]
                assert direct["radical_power_dims"] == \
                    res["radical_power_dims"]
            rows.append((family, rank, res["loewy_length"],
                         res["radical_power_dims"], time.time() - t))
            print(f"{family}{rank:<2d} dim {2 ** rank:4d}  "
                  f"loewy {rows[-1][2]}  rad dims {rows[-1][3]}  "
                  f"({rows[-1][4]:.1f}s)")

    print()
    print("family rank : loewy length")
    for family, rank, ll, _, _ in rows:
        print(f"  {family}{rank} : {ll}")


if __name__ == "__main__":
    main()
