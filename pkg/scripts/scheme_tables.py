#!/usr/bin/env python3
"""Print the exact eigenvalue tables of the Hermitian rank scheme for the
desk-scale parameter sets, together with the rank census of the full space.

Usage:
    python scripts/scheme_tables.py [--q Q --n N]...
"""

import argparse
import sys

from hermcodes import eigenvalues, make_tower


def show(q: int, n: int) -> None:
    tower = make_tower(q, 1, n)
    eig = eigenvalues(tower)
    print(f"# q = {q}, n = {n}: {q ** (n * n)} Hermitian matrices")
    print(f"rank census |H_k|: {list(eig.rank_counts)}")
    width = max(len(str(v)) for row in eig.table for v in row) + 1
    header = " " * 6 + "".join(f"i={i}".rjust(width) for i in range(n + 1))
    print(header)
    for k, row in enumerate(eig.table):
        print(f"Q_{k}(i)" + "".join(str(v).rjust(width) for v in row))
    print()


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=int, action="append", default=None)
    ap.add_argument("--n", type=int, action="append", default=None)
    args = ap.parse_args(argv)
    if args.q:
        pairs = list(zip(args.q, args.n or [3] * len(args.q)))
    else:
        pairs = [(2, 2), (2, 3), (3, 3)]
    for q, n in pairs:
        show(q, n)
    return 0


if __name__ == "__main__":
    sys.exit(main())
