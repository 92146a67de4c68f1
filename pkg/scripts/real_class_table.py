#!/usr/bin/env python3
"""Tabulate real conjugacy class counts of GL_n(q) over a small grid,
confirming the direct count against |s(2)|/|G| on every cell."""

import argparse
import sys

from squarefibers.gl_classes import class_count, gl_order
from squarefibers.real_classes import real_class_count_direct, real_class_count_ms


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=3)
    parser.add_argument("--q", type=int, nargs="+", default=[3, 5, 7])
    args = parser.parse_args()

    print(f"{'n':>3} {'q':>4} {'|GL_n(q)|':>14} {'classes':>8} "
          f"{'real':>6} {'|s(2)|/|G|':>11}")
    for q in args.q:
        for n in range(1, args.max_n + 1):
            direct = real_class_count_direct(n, q)
            ms = real_class_count_ms(n, q)
            marker = "" if direct == ms else "  <- MISMATCH"
            print(f"{n:>3} {q:>4} {gl_order(n, q):>14} {class_count(n, q):>8} "
                  f"{direct:>6} {ms:>11}{marker}")
            if direct != ms:
                return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
