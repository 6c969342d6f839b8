"""Box-count slopes for the standard targets, printed as a table.

Each set is fitted over its own depth window; the F_K and F_L bounds only
settle once the sparse pairs of N have been passed a few times.

    python3 scripts/dimension_table.py
"""

import argparse
import json
import math
from fractions import Fraction

from hdgames import canopy as cp
from hdgames import hausdorff as hd


def targets():
    N = cp.default_N()
    M = cp.default_M(Fraction(3, 4), N)
    FK, FL = cp.wdelta_bounds(N, M)
    return [
        ("F_M, M = multiples of 3", cp.make_FM(cp.multiples(3)), 1 / 3, (9, 45)),
        ("Y0", cp.make_Y0(), 1 / 2, (2, 40)),
        ("W_C", cp.make_cantor_WC(), math.log(2, 5), (8, 32)),
        ("F_K", FK, 3 / 4, (16, 48)),
        ("F_L", FL, 3 / 4, (16, 48)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cantor-depth", type=int, default=32, help="deepest level for W_C (40 takes ~20 s)")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for name, S, expect, (lo, hi) in targets():
        if name == "W_C":
            hi = args.cantor_depth
        est = hd.dim_estimate(S, lo, hi)
        rows.append({"set": name, "depths": f"{lo}-{hi}", "slope": est.slope, "expected": expect,
                     "error": est.slope - expect, "count_at_depth": est.counts[-1]})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'set':<26}{'depths':>8}{'slope':>9}{'expected':>10}{'error':>9}{'N_last':>16}")
    for r in rows:
        print(f"{r['set']:<26}{r['depths']:>8}{r['slope']:>9.4f}{r['expected']:>10.4f}{r['error']:>+9.4f}"
              f"{r['count_at_depth']:>16}")


if __name__ == "__main__":
    main()
