"""Command-line front end.

Every subcommand turns its flags into a params dict and hands it to the same
handler that ``run`` uses for JSON config files, so a config and the
equivalent command line produce identical result payloads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Callable, Optional


from . import __version__
from . import acceptance as acc
from . import canopy as cp
from . import dimgame as dg
from . import gamekit as gk
from . import hausdorff as hd
from . import schmidt as sc
from .config import ExperimentConfig, ValidationError, build_index_set, build_target, build_tree, dumps, jsonable
from .errors import IllegalMove

EXIT_OK, EXIT_FAIL, EXIT_VALIDATION, EXIT_ILLEGAL = 0, 1, 2, 3


def _frac(x) -> Fraction:
    try:
        return sc.parse_frac(x)
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"not a number: {x!r}", "delta") from None


def _int(params: dict, key: str, default=None) -> int:
    v = params.get(key, default)
    if v is None:
        raise ValidationError(f"missing {key}", key)
    try:
        v = int(v)
    except (TypeError, ValueError):
        raise ValidationError(f"{key} must be an integer", key) from None
    return v


# ---------------------------------------------------------------------------
# handlers: params dict -> results dict


def h_estimate_dim(params: dict) -> dict:
    S = build_target(params)
    lo, hi = params.get("depths", [8, 24])
    est = hd.dim_estimate(S, int(lo), int(hi), bool(params.get("endpoints", False)))
    return {"set": S.name, **est.to_json()}


def h_measure(params: dict) -> dict:
    S = build_target(params)
    delta = params.get("delta", "1/2")
    delta = float(delta) if isinstance(delta, float) else _frac(delta)
    res = hd.measure_estimate(S, delta, _int(params, "depth", 7))
    return {"set": S.name, "delta": delta, "depth": res.depth,
            "value": res.value if res.exact else float(res), "exact": res.expr(), "float": float(res)}


def h_solve(params: dict) -> dict:
    S = build_target(params)
    tree = build_tree(params["tree"]) if "tree" in params else S.tree
    if tree is not S.tree:
        S = cp.TargetOracle(tree, S.verdict_fn, S.name, S.step, S.initial)
    style = params.get("style", "closed")
    if "cap" in params:
        res = gk.solve_iterative(tree, S, _int(params, "cap"), style)
    else:
        res = gk.solve(tree, S, _int(params, "depth", 10), style)
    out = {"set": S.name, **res.to_json()}
    if res.strategy is not None and res.definitive:
        out["strategy_verified"] = gk.verify_strategy(tree, S, res.strategy, res.winner, res.depth, style)
        out["strategy"] = {"".join(map(str, p)) or "<>": a for p, a in sorted(res.strategy.items())}
    return out


def h_dimgame(params: dict) -> dict:
    steps = _int(params, "steps", 1000)
    if params.get("sandwich"):
        M = build_index_set(params.get("M", {"kind": "multiples", "of": 3}))
        return dg.value_sandwich_FM(M, steps).to_json()
    S = build_target(params)
    k = _int(params, "k", 1)
    s1 = params.get("strategy1", "sigma1")
    if s1 == "sigma1":
        if "M" not in params:
            raise ValidationError("sigma1 needs an index set M", "M")
        p1 = dg.sigma1_FM(build_index_set(params["M"]))
    elif s1 == "greedy":
        p1 = dg.block_greedy(S, k)
    elif s1 == "everything":
        p1 = dg.offer_everything(k)
    else:
        raise ValidationError(f"unknown strategy1 {s1!r}", "strategy1")
    s2 = params.get("strategy2", "avoid")
    if s2 == "avoid":
        p2 = dg.sigma2_avoid(S)
    elif s2 == "smallest":
        p2 = dg.smallest_pick()
    else:
        raise ValidationError(f"unknown strategy2 {s2!r}", "strategy2")
    t = dg.run_dim_game(p1, p2, steps, 2, S)
    out = {"set": S.name, "k": t.k, "steps": steps, "payoff": t.payoff.to_json()}
    if params.get("transcript"):
        out["transcript"] = t.to_json()
    return out


def _schmidt_config(params: dict) -> sc.SchmidtConfig:
    model = params.get("model", "interval")
    if model == "madic":
        m, d = params.get("madic", [2, 1])
        return sc.madic_cube_game(int(m), int(d))
    if model == "lattice" or "alpha" in params:
        return sc.lattice_subgame(_frac(params.get("alpha", "1/2")), _frac(params.get("beta", "1/2")),
                                  _int(params, "d", 1))
    try:
        return sc.config_from_spec({"model": model})
    except KeyError as e:
        raise ValidationError(str(e), "model") from None


def _schmidt_target(params: dict, config: sc.SchmidtConfig):
    target = params.get("target", "none")
    if target == "none":
        return None
    if target == "cantor":
        if config.dim != 1:
            raise ValidationError("the Cantor target lives on the interval", "target")
        return sc.cantor_ball_verdict
    raise ValidationError(f"unknown target {target!r}", "target")


def _schmidt_strategy(name: str, seed: int, target) -> Callable:
    if name == "smallest":
        return sc.smallest_index
    if name == "random":
        return sc.seeded_random_strategy(seed)
    if name in ("follow", "avoid"):
        if target is None:
            raise ValidationError(f"strategy {name} needs a target", "target")
        return sc.target_strategy(target, avoid=name == "avoid")
    raise ValidationError(f"unknown Schmidt strategy {name!r}", "strategy")


def h_schmidt(params: dict) -> dict:
    config = _schmidt_config(params)
    out: dict = {"model": config.name, "alpha": config.alpha, "beta": config.beta}
    if "threshold" in params:
        out["threshold"] = sc.threshold(config.alpha, config.beta, _int(params, "threshold")).to_json()
    if "hypothesis" in params:
        mb, depth = params["hypothesis"]
        rep = sc.check_m_balls_hypothesis(config, int(mb), int(depth))
        out["hypothesis"] = {"holds": rep.holds, "checked": rep.checked, "min_family": rep.min_family}
    if params.get("structural") and config.m is not None:
        out["structural"] = sc.structural_checks(config.m, config.dim, _int(params, "structural_depth", 5)).to_json()
    steps = _int(params, "steps", 10)
    target = _schmidt_target(params, config)
    seed = int(params.get("seed", 0) or 0)
    sI = _schmidt_strategy(params.get("strategyI", "smallest"), seed, target)
    sII = _schmidt_strategy(params.get("strategyII", "smallest"), seed + 1, target)
    t = sc.play_schmidt(config, sI, sII, steps, target)
    sc.check_transcript(config, t.balls)
    center, radius = sc.project_point(t.balls)
    out["transcript"] = t.to_json()
    out["point"] = {"center": [sc.frac_str(c) for c in center], "enclosure": sc.frac_str(radius)}
    return out


def _mc_strategy(name: str, S: cp.TargetOracle, seed: int):
    if name == "follow":
        return gk.follow_strategy(S)
    if name == "zero":
        return gk.constant_strategy(gk.Player.I, 0)
    if name == "random":
        return gk.pseudorandom_strategy(gk.Player.I, seed, S.tree.arity)
    raise ValidationError(f"unknown strategy {name!r}", "strategy")


def h_mc(params: dict) -> dict:
    S = build_target(params)
    seed = _int(params, "seed")
    sI = _mc_strategy(params.get("strategy", "follow"), S, seed)
    res = gk.mc_flipcoin(S, sI, _int(params, "depth", 60), _int(params, "trials", 10_000), seed)
    return {"set": S.name, **res.to_json()}


def h_packing(params: dict) -> dict:
    d = _int(params, "d", 2)
    if "R" in params or "r" in params:
        return {"d": d, "pack": hd.packing_number_linf(d, _frac(params.get("R", 3)), _frac(params.get("r", 1)))}
    try:
        return hd.verify_packing_lemma(d).to_json()
    except ValueError as e:
        raise ValidationError(str(e), "d") from None


HANDLERS = {
    "estimate-dim": h_estimate_dim,
    "measure": h_measure,
    "solve": h_solve,
    "dimgame": h_dimgame,
    "schmidt": h_schmidt,
    "mc": h_mc,
    "packing": h_packing,
}


def run_config(cfg: ExperimentConfig) -> dict:
    """Report for one experiment; ``results`` is bit-reproducible for a fixed config."""
    if cfg.cmd not in HANDLERS:
        raise ValidationError(f"unknown command {cfg.cmd!r}", "cmd")
    params = dict(cfg.params)
    if cfg.seed is not None:
        params["seed"] = cfg.seed
    t = time.perf_counter()
    results = HANDLERS[cfg.cmd](params)
    return {
        "experiment": cfg.cmd,
        "inputs": cfg.to_json(),
        "results": jsonable(results),
        "wall_clock_s": time.perf_counter() - t,
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# interactive play


def play_interactive_tree(S: cp.TargetOracle, depth: int, machine: str = "coinflip", seed: int = 0,
                          input_fn: Callable[[str], str] = input, print_fn: Callable[[str], None] = print) -> dict:
    """Human Player I against a machine Player II on the tree of S."""
    tree = S.tree
    rng = gk.trial_rng(seed, 0)
    avoid = gk.avoid_strategy(S)
    p: tuple = ()
    verdicts = [str(S.verdict(p))]
    ended = "depth"
    while len(p) < depth:
        acts = tree.actions(p)
        print_fn(f"position {list(p)}  verdict {S.verdict(p)}  actions {acts}")
        if len(p) % 2 == 0:
            while True:
                try:
                    raw = input_fn("Player I> ")
                except EOFError:
                    ended = "eof"
                    break
                try:
                    a = int(raw.strip())
                except ValueError:
                    print_fn(f"enter one of {acts}")
                    continue
                if a in acts:
                    break
                print_fn(f"{a} is not available; enter one of {acts}")
            if ended == "eof":
                break
        else:
            a = avoid(p) if machine == "avoid" else acts[int(rng.integers(len(acts)))]
            print_fn(f"Player II plays {a}")
        p = p + (a,)
        verdicts.append(str(S.verdict(p)))
    print_fn(f"final position {list(p)}  verdict {S.verdict(p)}")
    return {"position": list(p), "verdicts": verdicts, "ended": ended, "machine": machine, "set": S.name}


def play_interactive_schmidt(config: sc.SchmidtConfig, sII: Callable, steps: int, target=None,
                             input_fn: Callable[[str], str] = input,
                             print_fn: Callable[[str], None] = print) -> dict:
    """Human Player I picks admissible balls by index; the machine plays Player II."""
    history: tuple = ()
    verdicts = []
    ended = "steps"
    for stage in range(-1, steps):
        options = config.options(history)
        if stage == -1 or stage % 2 == 1:
            choice = sII(history, options)
            ball = choice if isinstance(choice, sc.Ball) else options[choice]
            print_fn(f"stage {stage}: Player II chooses {ball} (radius {sc.frac_str(ball.radius)})")
        else:
            for i, b in enumerate(options):
                tag = f"  {target(b)}" if target else ""
                print_fn(f"  [{i}] {b}{tag}")
            while True:
                try:
                    raw = input_fn(f"stage {stage} Player I> ")
                except EOFError:
                    ended = "eof"
                    break
                try:
                    i = int(raw.strip())
                except ValueError:
                    print_fn(f"enter an index in 0..{len(options) - 1}")
                    continue
                if 0 <= i < len(options):
                    break
                print_fn(f"enter an index in 0..{len(options) - 1}")
            if ended == "eof":
                break
            ball = options[i]
        sc.check_move(config, history, ball, stage)
        history = history + (ball,)
        if target:
            verdicts.append(str(target(ball)))
            print_fn(f"verdict {verdicts[-1]}")
    return {"balls": [b.to_json() for b in history], "verdicts": verdicts, "ended": ended}


# ---------------------------------------------------------------------------
# argument parsing


def _target_params(ns) -> dict:
    params: dict = {}
    if getattr(ns, "set", None):
        s = ns.set.strip()
        params.update(json.loads(s) if s.startswith("{") else {"set": s})
    if getattr(ns, "M", None):
        m = ns.M.strip()
        if m.startswith("{"):
            params["M"] = json.loads(m)
        elif ":" in m:
            kind, arg = m.split(":", 1)
            params["M"] = {"kind": kind, "of": int(arg)} if kind == "multiples" else {"kind": kind}
        else:
            params["M"] = {"kind": m}
        params.setdefault("set", "F_M")
    if getattr(ns, "tree", None):
        params["tree"] = ns.tree
    return params


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags without clobbering values given before the subcommand
    d = {"default": argparse.SUPPRESS} if suppress else {}
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--config", help="JSON experiment config", **d)
    g.add_argument("--seed", type=int, help="64-bit unsigned seed", **d)
    g.add_argument("--out", help="write the JSON report here", **d)
    g.add_argument("--json", action="store_true", help="print the JSON report", **d)
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(True)
    ap = argparse.ArgumentParser(prog="hdgames", parents=[_global_flags(False)],
                                 description="Dimension games, Schmidt games and Hausdorff estimators.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd")

    def target_flags(p):
        p.add_argument("--set", help='set name or JSON, e.g. cantor_WC or {"set":"F_M","M":{"kind":"odds"}}')
        p.add_argument("--M", help="index set for F_M: odds, evens, empty, all, multiples:3 or JSON")

    p = sub.add_parser("estimate-dim", parents=[common], help="box counts and log-slope")
    target_flags(p)
    p.add_argument("--depths", type=int, nargs=2, default=[8, 24])
    p.add_argument("--endpoints", action="store_true")

    p = sub.add_parser("measure", parents=[common], help="optimal cylinder-cover cost")
    target_flags(p)
    p.add_argument("--delta", default="1/2")
    p.add_argument("--depth", type=int, default=7)

    p = sub.add_parser("solve", parents=[common], help="winner of a depth-truncated game")
    target_flags(p)
    p.add_argument("--tree")
    p.add_argument("--depth", type=int)
    p.add_argument("--cap", type=int, help="iterative deepening up to this depth")
    p.add_argument("--style", choices=["closed", "open"], default="closed")

    p = sub.add_parser("dimgame", parents=[common], help="Hausdorff dimension game")
    target_flags(p)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--strategy1", default="sigma1", choices=["sigma1", "greedy", "everything"])
    p.add_argument("--strategy2", default="avoid", choices=["avoid", "smallest"])
    p.add_argument("--sandwich", action="store_true")
    p.add_argument("--transcript", action="store_true")

    p = sub.add_parser("schmidt", parents=[common], help="Schmidt game engine")
    p.add_argument("--model", default="interval", choices=["interval", "quaternary", "square", "madic", "lattice"])
    p.add_argument("--alpha")
    p.add_argument("--beta")
    p.add_argument("--d", type=int)
    p.add_argument("--madic", type=int, nargs=2, metavar=("M", "D"))
    p.add_argument("--target", default="none", choices=["cantor", "none"])
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--strategyI", default="smallest", choices=["smallest", "random", "follow", "avoid"])
    p.add_argument("--strategyII", default="smallest", choices=["smallest", "random", "follow", "avoid"])
    p.add_argument("--threshold", type=int, metavar="M_BALLS")
    p.add_argument("--hypothesis", type=int, nargs=2, metavar=("M_BALLS", "DEPTH"))
    p.add_argument("--structural", action="store_true")
    p.add_argument("--interactive", action="store_true")

    p = sub.add_parser("mc", parents=[common], help="coin-flip Monte Carlo")
    target_flags(p)
    p.add_argument("--depth", type=int, default=60)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--strategy", default="follow", choices=["follow", "zero", "random"])

    p = sub.add_parser("packing", parents=[common], help="sup-norm packing numbers")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--R")
    p.add_argument("--r")

    p = sub.add_parser("play", parents=[common], help="interactive play as Player I")
    target_flags(p)
    p.add_argument("--tree")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--machine", default="coinflip", choices=["coinflip", "avoid"])

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", action="append", help="criterion key or number (repeatable)")
    p.add_argument("--list", action="store_true")

    p = sub.add_parser("run", parents=[common], help="run a JSON config")
    p.add_argument("path", nargs="?")
    return ap


def _params_from_ns(ns) -> dict:
    cmd = ns.cmd
    params = _target_params(ns) if cmd in ("estimate-dim", "measure", "solve", "dimgame", "mc", "play") else {}
    skip = {"cmd", "config", "seed", "out", "json", "set", "M", "tree", "interactive", "only", "list", "path"}
    for k, v in vars(ns).items():
        if k not in skip and v is not None and v is not False:
            params[k] = v
    return params


def _colour(text: str, ok: bool) -> str:
    if os.environ.get("NO_COLOR") or not sys.stdout.isatty():
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _emit(report: dict, ns, print_fn=print) -> None:
    if ns.out:
        with open(ns.out, "w") as f:
            f.write(dumps(report))
    if ns.json:
        print_fn(dumps(report))
    else:
        print_fn(dumps(report["results"]) if "results" in report else dumps(report))


def _verify(ns, print_fn=print) -> int:
    if ns.list:
        for c in acc.CRITERIA:
            print_fn(f"{c.number:>2} {c.key:<22} {c.title}")
        return EXIT_OK
    try:
        chosen = acc.select(ns.only)
    except KeyError as e:
        raise ValidationError(str(e), "only") from None
    ctx = acc.Context(seed=ns.seed if ns.seed is not None else 7)
    rows = []
    for c in chosen:
        row = acc.run_criterion(c, ctx)
        rows.append(row)
        print_fn(_colour(row.line(), row.passed))
    failed = [r for r in rows if not r.passed]
    print_fn(f"{len(rows) - len(failed)}/{len(rows)} criteria passed")
    if ns.out or ns.json:
        rep = {"rows": [{"key": r.key, "title": r.title, "passed": r.passed, "seconds": r.seconds,
                         "detail": r.detail} for r in rows]}
        if ns.out:
            with open(ns.out, "w") as f:
                f.write(dumps(rep))
        if ns.json:
            print_fn(dumps(rep))
    return EXIT_FAIL if failed else EXIT_OK


def main(argv: Optional[list] = None, input_fn: Callable[[str], str] = input,
         print_fn: Callable[[str], None] = print) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        if ns.cmd is None and ns.config is None:
            ap.print_help()
            return EXIT_VALIDATION
        if ns.cmd == "verify":
            return _verify(ns, print_fn)
        if ns.cmd in (None, "run"):
            path = getattr(ns, "path", None) or ns.config
            if not path:
                raise ValidationError("run needs a config path", "config")
            with open(path) as f:
                cfg = ExperimentConfig.from_json(json.load(f))
            if ns.seed is not None:
                cfg.seed = ns.seed
            if cfg.out and not ns.out:
                ns.out = cfg.out
            _emit(run_config(cfg), ns, print_fn)
            return EXIT_OK
        if ns.cmd == "play":
            params = _params_from_ns(ns)
            S = build_target(params or {"set": "Y0"})
            if "tree" in params:
                tree = build_tree(params["tree"])
                S = cp.TargetOracle(tree, S.verdict_fn, S.name, S.step, S.initial)
            rec = play_interactive_tree(S, ns.depth, ns.machine, ns.seed or 0, input_fn, print_fn)
            if ns.out:
                with open(ns.out, "w") as f:
                    f.write(dumps(rec))
            return EXIT_OK
        if ns.cmd == "schmidt" and ns.interactive:
            params = _params_from_ns(ns)
            config = _schmidt_config(params)
            target = _schmidt_target(params, config)
            sII = _schmidt_strategy(ns.strategyII, (ns.seed or 0) + 1, target)
            rec = play_interactive_schmidt(config, sII, ns.steps, target, input_fn, print_fn)
            if ns.out:
                with open(ns.out, "w") as f:
                    f.write(dumps(rec))
            return EXIT_OK
        params = _params_from_ns(ns)
        if ns.config:
            with open(ns.config) as f:
                base = json.load(f)
            base.update({k: v for k, v in params.items()})
            params = {k: v for k, v in base.items() if k != "cmd"}
        cfg = ExperimentConfig(ns.cmd, params, ns.seed, ns.out).validate()
        _emit(run_config(cfg), ns, print_fn)
        return EXIT_OK
    except IllegalMove as e:
        print_fn(f"illegal move: {e}")
        return EXIT_ILLEGAL
    except (ValidationError, cp.ConstructionError) as e:
        key = getattr(e, "key", None)
        print_fn(f"validation error{f' ({key})' if key else ''}: {e}")
        return EXIT_VALIDATION
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print_fn(f"validation error: {e}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
