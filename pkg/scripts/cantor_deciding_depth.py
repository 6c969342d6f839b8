"""Iterative deepening on the W_C game: the first depth at which Player II provably wins.

Prints the deciding depth, the size of the extracted Player II strategy and
whether exhaustive replay confirms it.
"""

import argparse
import time

from hdgames import canopy as cp
from hdgames import gamekit as gk


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cap", type=int, default=32)
    ap.add_argument("--max-digits", type=int, default=64)
    ap.add_argument("--show-strategy", action="store_true")
    args = ap.parse_args()

    tree = cp.binary_tree()
    W = cp.make_cantor_WC(args.max_digits)
    t0 = time.perf_counter()
    res = gk.solve_iterative(tree, W, args.cap)
    dt = time.perf_counter() - t0
    print(f"winner {res.winner}  definitive {res.definitive}  depth {res.depth}  ({dt:.2f}s)")
    for n in res.tried:
        r = gk.solve(tree, W, n, extract=False)
        print(f"  depth {n:>2}: {r.winner}{'' if r.definitive else ' (provisional)'}")
    if res.strategy is not None and res.definitive:
        ok = gk.verify_strategy(tree, W, res.strategy, res.winner, res.depth)
        print(f"strategy positions {len(res.strategy)}  verified {ok}")
        if args.show_strategy:
            for p, a in sorted(res.strategy.items()):
                print(f"  {''.join(map(str, p)) or '<>':>8} -> {a}")
    elif res.depth == args.cap:
        print(f"cap {args.cap} reached without a decision")


if __name__ == "__main__":
    main()
