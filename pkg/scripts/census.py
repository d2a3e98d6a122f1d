"""Census of every semigroup table of order <= N.

Prints, per order, how many tables are regular, locally inverse and inverse,
and how many left ideal categories are normal and unambiguous.
"""
import argparse
import time

from locinv.categories import classify_category, left_ideal_category
from locinv.fixtures import all_semigroups
from locinv.semigroup import classify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=3)
    args = ap.parse_args()
    t = time.perf_counter()
    print(f"{'n':>2} {'tables':>7} {'regular':>8} {'loc.inv':>8} {'inverse':>8} {'normal':>7} {'unamb.':>7}")
    for n in range(1, args.max_order + 1):
        rows = [S for S in all_semigroups(n) if S.order == n]
        counts = [0] * 5
        for S in rows:
            c = classify(S)
            counts[0] += c.is_regular
            counts[1] += c.is_locally_inverse
            counts[2] += c.is_inverse
            if c.is_regular:
                rep = classify_category(left_ideal_category(S))
                counts[3] += rep.is_normal
                counts[4] += rep.is_unambiguous
        print(f"{n:>2} {len(rows):>7} " + " ".join(f"{v:>8}" if k < 3 else f"{v:>7}" for k, v in enumerate(counts)))
    print(f"elapsed {time.perf_counter() - t:.2f}s")


if __name__ == "__main__":
    main()
