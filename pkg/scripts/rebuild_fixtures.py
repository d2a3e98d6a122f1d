"""Rebuild every locally inverse fixture from its cross-connection.

Runs S -> ΩS -> SΩ and prints one JSON report per fixture.
"""
import argparse
import sys

from locinv.crossconn import rebuild_check
from locinv.fixtures import corpus
from locinv.semigroup import is_locally_inverse


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=9)
    args = ap.parse_args()
    failed = 0
    for name, S in corpus().items():
        if S.order > args.max_order or not is_locally_inverse(S).holds:
            continue
        rep = rebuild_check(S, name)
        print(rep.to_json())
        failed += not rep.ok
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
