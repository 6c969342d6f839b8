"""Survival curves of coin-flip Player II against several Player I strategies.

Each line is the share of plays whose prefix is still not excluded from the
target at the given depth.
"""

import argparse

from hdgames import canopy as cp
from hdgames import gamekit as gk


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=60)
    ap.add_argument("--trials", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--every", type=int, default=10, help="print every n-th depth")
    args = ap.parse_args()

    W = cp.make_cantor_WC()
    runs = {
        "follow W_C": gk.mc_flipcoin(W, gk.follow_strategy(W), args.depth, args.trials, args.seed),
        "always 0": gk.mc_flipcoin(W, gk.constant_strategy(gk.Player.I, 0), args.depth, args.trials, args.seed),
        "pseudorandom": gk.mc_flipcoin(W, gk.pseudorandom_strategy(gk.Player.I, args.seed), args.depth,
                                       args.trials, args.seed),
    }
    depths = list(range(0, args.depth + 1, args.every))
    print("depth " + "".join(f"{name:>16}" for name in runs))
    for n in depths:
        print(f"{n:>5} " + "".join(f"{r.curve[n]:>16.5f}" for r in runs.values()))
    print("monotone " + "  ".join(f"{name}={r.monotone}" for name, r in runs.items()))


if __name__ == "__main__":
    main()
