"""The acceptance suite: twelve finite-depth checks, each a pass/fail row.

Constructors are looked up through a context object so a test can swap in a
corrupted oracle and watch the matching row turn red.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import canopy as cp
from . import dimgame as dg
from . import gamekit as gk
from . import hausdorff as hd
from . import schmidt as sc

LOG5_2 = math.log(2) / math.log(5)


@dataclass
class Row:
    key: str
    title: str
    passed: bool
    detail: dict
    seconds: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.key:<22} {self.title} ({self.seconds:.2f}s)"


@dataclass
class Context:
    """Factories the criteria use; override any of them for negative controls."""

    make_FM: Callable = cp.make_FM
    make_Y0: Callable = cp.make_Y0
    make_cantor_WC: Callable = cp.make_cantor_WC
    mc_trials: int = 100_000
    seed: int = 7


@dataclass(frozen=True)
class Criterion:
    number: int
    key: str
    title: str
    budget: float
    run: Callable[[Context], tuple]


def _close(x: float, target: float, tol: float) -> bool:
    return abs(x - target) <= tol


def density_dimension(ctx: Context):
    out = {}
    ok = True
    for label, M, lo, hi, target in (("multiples of 3", cp.multiples(3), 9, 45, 1 / 3),
                                     ("odds", cp.odds(), 2, 40, 1 / 2)):
        t = time.perf_counter()
        est = hd.dim_estimate(ctx.make_FM(M), lo, hi)
        dt = time.perf_counter() - t
        good = _close(est.slope, target, 0.02) and dt < 10
        out[label] = {"slope": est.slope, "target": target, "seconds": dt, "pass": good}
        ok &= good
    return ok, out


def half_measure(ctx: Context):
    res = hd.measure_estimate(ctx.make_Y0(), Fraction(1, 2), 7)
    exact = res.exact and res.value == hd.RadicalSum(2, 2, (Fraction(0), Fraction(1)))
    f = float(res)
    return exact and abs(f - 0.7071067811865476) < 1e-12, {"exact": res.expr(), "float": f}


def cantor_dimension(ctx: Context):
    est = hd.dim_estimate(ctx.make_cantor_WC(), 8, 40)
    return _close(est.slope, LOG5_2, 0.03), {"slope": est.slope, "target": LOG5_2, "N_40": est.counts[-1]}


def coin_flip_decay(ctx: Context):
    W = ctx.make_cantor_WC()
    mc = gk.mc_flipcoin(W, gk.follow_strategy(W), 60, ctx.mc_trials, ctx.seed)
    sI = gk.pseudorandom_strategy(gk.Player.I, ctx.seed)
    freq = gk.check_cylinder_frequencies(sI, 8, ctx.mc_trials, ctx.seed + 1)
    ok = mc.monotone and mc.survival <= 0.01 and freq.ok
    return ok, {"survival_60": mc.survival, "monotone": mc.monotone,
                "cylinder_worst_z": freq.worst_z, "cylinders": freq.checked}


def dimension_game_sandwich(ctx: Context):
    out = {}
    ok = True
    for label, M, target in (("multiples of 3", cp.multiples(3), 1 / 3), ("odds", cp.odds(), 1 / 2)):
        s = dg.value_sandwich_FM(M, 3000)
        good = _close(s.lower, target, 0.01) and _close(s.upper, target, 0.01)
        out[label] = {"lower": s.lower, "upper": s.upper, "pass": good}
        ok &= good
    return ok, out


def packing_lemma(ctx: Context):
    out = {}
    ok = True
    for d in (1, 2, 3):
        r = hd.verify_packing_lemma(d)
        good = r.passed and (r.pack, r.bound) == (3**d, 8**d)
        out[d] = r.to_json()
        ok &= good
    return ok, out


def solver_ground_truths(ctx: Context):
    T = cp.binary_tree()
    out = {}
    r1 = gk.solve(T, cp.cylinder_target((0,)), 1)
    r2 = gk.solve(T, cp.cylinder_target((0, 0)), 2)
    r3 = gk.solve(T, ctx.make_Y0(), 20)
    forced = cp.forced_zero_tree()
    r4 = gk.solve(forced, cp.cylinder_target((1, 0, 1, 0), forced), 4)
    W = ctx.make_cantor_WC()
    r5 = gk.solve_iterative(T, W, 32)
    verified = r5.winner is gk.Player.II and gk.verify_strategy(T, W, r5.strategy, gk.Player.II, r5.depth)
    out = {"cylinder 0": str(r1.winner), "cylinder 00": str(r2.winner), "Y0 depth 20": str(r3.winner),
           "forced-zero tree": str(r4.winner), "W_C winner": str(r5.winner), "W_C deciding depth": r5.depth,
           "W_C strategy verified": verified}
    ok = (r1.winner is gk.Player.I and r2.winner is gk.Player.II and r3.winner is gk.Player.I
          and r4.winner is gk.Player.I and r5.definitive and verified)
    return ok, out


def w_delta_construction(ctx: Context):
    N = cp.default_N()
    M = cp.default_M(Fraction(3, 4), N)
    FK, FL = cp.wdelta_bounds(N, M)
    sk = hd.dim_estimate(FK, 16, 48).slope
    sl = hd.dim_estimate(FL, 16, 48).slope
    W = cp.make_Wdelta(ctx.make_Y0(), N, M)
    bad = 0
    for p in itertools.product((0, 1), repeat=12):
        l_in = FL.verdict(p) is not cp.OUTSIDE
        w_in = W.verdict(p) is not cp.OUTSIDE
        k_in = FK.verdict(p) is not cp.OUTSIDE
        bad += (l_in and not w_in) or (w_in and not k_in)
    ok = _close(sk, 0.75, 0.03) and _close(sl, 0.75, 0.03) and bad == 0
    return ok, {"slope_F_K": sk, "slope_F_L": sl, "inclusion_violations": bad}


def strategy_lifting(ctx: Context):
    N = cp.default_N()
    M = cp.default_M(Fraction(3, 4), N)
    T = cp.binary_tree()
    W = cp.cylinder_target((0,))
    Wd = cp.make_Wdelta(W, N, M)
    n_idx = N.members_below(64)
    g_depth = n_idx[3] + 1
    agree = 0
    mismatches = 0
    roundtrip_ok = True
    for table in gk.enumerate_strategies(4):
        sp = gk.table_strategy(gk.Player.I, table)
        wins_prime = gk.strategy_wins(T, W, sp, 4)
        lifted = gk.expand_strategy(sp, N, M)
        wins_lift = gk.strategy_wins(T, Wd, lifted, g_depth)
        if wins_prime == wins_lift:
            agree += 1
        else:
            mismatches += 1
        back = gk.restrict_strategy(lifted, N, M)
        for q in gk._reachable_I(T, sp, 4):
            if back(q) != sp(q):
                roundtrip_ok = False
    return mismatches == 0 and roundtrip_ok, {"strategies": agree + mismatches, "agree": agree,
                                              "G_depth": g_depth, "roundtrip": roundtrip_ok}


def isometry(ctx: Context):
    pairs = 0
    ok = True
    for seed in range(5):
        sI = gk.pseudorandom_strategy(gk.Player.I, 1000 + seed)
        pts = gk.strategy_subcanopy(sI, 10)
        imgs = [gk.isometry_phi(x, sI) for x in pts]
        for i, j in itertools.combinations(range(len(pts)), 2):
            pairs += 1
            if cp.metric_distance(pts[i], pts[j]) != cp.metric_distance(imgs[i], imgs[j]):
                ok = False
    return ok and pairs == 5 * 32 * 31 // 2, {"pairs": pairs}


def mass_certificate(ctx: Context):
    S = ctx.make_FM(cp.multiples(3))
    mu = hd.uniform_on(S)
    good = hd.mass_bound_certificate(mu, S, Fraction(1, 3), 1, 30)
    bad = hd.mass_bound_certificate(mu, S, 0.4, 1, 30)
    return good.holds and not bad.holds, {"delta=1/3": good.message, "delta=0.4": bad.message}


def _transcript_checks(n: int, seed0: int) -> bool:
    configs = [sc.dyadic_interval_game(), sc.quaternary_interval_game(), sc.quaternary_square_game(),
               sc.madic_cube_game(2, 2), sc.madic_cube_game(3, 1),
               sc.lattice_subgame(Fraction(1, 3), Fraction(1, 2))]
    for i in range(n):
        cfg = configs[i % len(configs)]
        t = sc.play_schmidt(cfg, sc.seeded_random_strategy(seed0 + 2 * i),
                            sc.seeded_random_strategy(seed0 + 2 * i + 1), 10)
        sc.check_transcript(cfg, t.balls)
    return True


def schmidt_laws(ctx: Context):
    t1 = sc.threshold(Fraction(1, 4), Fraction(1, 4), 4).exact
    t2 = sc.threshold(Fraction(1, 2), Fraction(1, 2), 4).exact
    madic = all(sc.threshold(Fraction(1, m), Fraction(1, m), m**d).exact == Fraction(d, 2)
                for m in (2, 3, 4, 5) for d in (1, 2, 3))
    try:
        laws = _transcript_checks(100, ctx.seed)
    except sc.IllegalMove:
        laws = False
    game = sc.collapse_alphabeta(sc.dyadic_interval_game())
    rt = True
    for s in range(50):
        rng = random.Random(s)
        c = game.play(lambda h, opts: rng.randrange(len(opts)), 10)
        game.check(c)
        rt &= game.pack(game.unpack(c)) == c
    ok = t1 == Fraction(1, 2) and t2 == 1 and madic and laws and rt
    return ok, {"log16(4)": str(t1), "log4(4)": str(t2), "m-adic d/2": madic,
                "transcripts": laws, "collapse round trip": rt}


CRITERIA: list = [
    Criterion(1, "density-dimension", "box-count slope of F_M equals the density of M", 20, density_dimension),
    Criterion(2, "half-measure", "half-dimensional measure of Y0 is exactly sqrt(1/2)", 1, half_measure),
    Criterion(3, "cantor-dimension", "box-count slope of W_C is log_5 2", 60, cantor_dimension),
    Criterion(4, "coin-flip-decay", "coin-flip Player II excludes W_C; cylinder laws exact", 60, coin_flip_decay),
    Criterion(5, "dimgame-sandwich", "dimension game arms bracket the density", 5, dimension_game_sandwich),
    Criterion(6, "packing-lemma", "sup-norm packing of B(x,3r) is at most D^3", 1, packing_lemma),
    Criterion(7, "solver-ground-truths", "backward induction winners and W_C deciding depth", 60,
              solver_ground_truths),
    Criterion(8, "w-delta-construction", "F_L, W_delta, F_K nest; F_K and F_L slopes near 3/4", 60,
              w_delta_construction),
    Criterion(9, "strategy-lifting", "lifted strategies win exactly when the originals do", 30, strategy_lifting),
    Criterion(10, "isometry", "zeroing even coordinates preserves distances", 1, isometry),
    Criterion(11, "mass-certificate", "uniform measure on F_mult3 certifies dimension 1/3", 5, mass_certificate),
    Criterion(12, "schmidt-laws", "thresholds, radius and nesting laws, collapse round trip", 10, schmidt_laws),
]


def select(only: Optional[Sequence[str]] = None) -> list:
    if not only:
        return list(CRITERIA)
    wanted = {str(o).lower() for o in only}
    chosen = [c for c in CRITERIA if c.key in wanted or str(c.number) in wanted]
    unknown = wanted - {c.key for c in chosen} - {str(c.number) for c in chosen}
    if unknown:
        raise KeyError(f"unknown criteria: {sorted(unknown)}")
    return chosen


def run_criterion(c: Criterion, ctx: Optional[Context] = None) -> Row:
    ctx = ctx or Context()
    t = time.perf_counter()
    try:
        passed, detail = c.run(ctx)
    except Exception as e:  # a crashing check is a failing row, not a crashed suite
        passed, detail = False, {"error": f"{type(e).__name__}: {e}"}
    dt = time.perf_counter() - t
    detail = dict(detail)
    detail["budget_s"] = c.budget
    within = dt <= c.budget
    detail["within_budget"] = within
    return Row(c.key, c.title, bool(passed) and within, detail, dt)


def run_acceptance(only: Optional[Sequence[str]] = None, ctx: Optional[Context] = None,
                   echo: Optional[Callable[[str], None]] = None) -> list:
    rows = []
    for c in select(only):
        row = run_criterion(c, ctx)
        rows.append(row)
        if echo:
            echo(row.line())
    return rows
