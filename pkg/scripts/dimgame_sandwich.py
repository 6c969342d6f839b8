"""Dimension-game payoffs for F_M as the horizon grows.

For each M the lower arm is the density strategy against the avoiding
Player 2; the upper arm is the best of the greedy variants against it.
"""

import argparse

from hdgames import canopy as cp
from hdgames import dimgame as dg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--horizons", type=int, nargs="+", default=[100, 300, 1000, 3000])
    args = ap.parse_args()
    sets = [("multiples of 3", cp.multiples(3), 1 / 3), ("odds", cp.odds(), 1 / 2), ("empty", cp.empty(), 0.0)]
    for name, M, delta in sets:
        print(f"M = {name} (density {delta:.4f})")
        for steps in args.horizons:
            sw = dg.value_sandwich_FM(M, steps)
            print(f"  steps {steps:>5}: lower {sw.lower:.4f}  upper {sw.upper:.4f}  gap {sw.gap:.4f}")


if __name__ == "__main__":
    main()
