"""Widths of Cartesian products of ordinals: exact values and bounds.

Prints a grid of w(a x b) for a few ordinals, then the interval the engine
certifies for powers w x ... x w.
"""

import argparse

from ordinv.expr import CartProd, Ord
from ordinv.invariants import invariants, wprod2
from ordinv.ordinal import OMEGA, parse_ordinal

SAMPLES = ["3", "w", "w+1", "w*2", "w^2", "w^2+w", "w^3*2", "w^w", "w^w*2+1"]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-power", type=int, default=6)
    args = parser.parse_args()

    ords = [parse_ordinal(s) for s in SAMPLES]
    cells = [[str(wprod2(a, b)) for b in ords] for a in ords]
    width = max(len(c) for row in cells for c in row + SAMPLES)
    print("w(a x b)".ljust(width), *(s.ljust(width) for s in SAMPLES))
    for s, row in zip(SAMPLES, cells):
        print(s.ljust(width), *(c.ljust(width) for c in row))

    print()
    for k in range(2, args.max_power + 1):
        t = invariants(CartProd([Ord(OMEGA)] * k))
        print(f"w^{k} product: o = {t.o}, h = {t.h}, w = {t.w}")


if __name__ == "__main__":
    main()
