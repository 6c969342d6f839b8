"""Win-lose alternating-move games on trees.

Player I moves at even stages, Player II at odd ones.  The solver works on a
depth truncation of the game and knows two target styles: closed (I wins a
truncation by never being excluded) and open (I must reach Inside).
"""

from __future__ import annotations

import enum
import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import mpmath
import numpy as np

from .canopy import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    IndexSet,
    Position,
    TargetOracle,
    TreeOracle,
    Verdict,
    binary_tree,
    check_N,
    first_difference,
    verdict_along,
)
from .errors import IllegalMove, NotInSubcanopy


class Player(enum.Enum):
    I = "PlayerI"
    II = "PlayerII"
    UNDECIDED = "UndecidedAtDepth"

    def __str__(self) -> str:
        return self.value


def mover(p: Position) -> Player:
    return Player.I if len(p) % 2 == 0 else Player.II


@dataclass(frozen=True)
class PureStrategy:
    side: Player
    choose: Callable[[Position], int]
    name: str = "strategy"

    def __call__(self, p: Position) -> int:
        return self.choose(tuple(p))


@dataclass(frozen=True)
class BehaviorStrategy:
    """``distribution(p, actions)`` returns probabilities aligned with ``actions``."""

    side: Player
    distribution: Callable[[Position, list], list]
    name: str = "behavior"

    def probabilities(self, tree: TreeOracle, p: Position) -> dict:
        acts = tree.actions(p)
        probs = self.distribution(tuple(p), acts)
        return dict(zip(acts, probs))


def constant_strategy(side: Player, a: int) -> PureStrategy:
    return PureStrategy(side, lambda p: a, f"constant {a}")


def table_strategy(side: Player, table: dict, default: int = 0) -> PureStrategy:
    return PureStrategy(side, lambda p: table.get(p, default), "table")


def pseudorandom_strategy(side: Player, seed: int, arity: int = 2) -> PureStrategy:
    """Deterministic in (seed, position), independent of call order."""
    return PureStrategy(side, lambda p: random.Random(f"{seed}:{p}").randrange(arity), f"pseudorandom {seed}")


def play(tree: TreeOracle, sI: Callable, sII: Callable, depth: int) -> Position:
    """The length-``depth`` prefix of the play generated by two pure strategies."""
    p: Position = ()
    for n in range(depth):
        a = (sI if n % 2 == 0 else sII)(p)
        if not tree.contains(p + (a,)):
            raise IllegalMove(f"action {a} unavailable at {p}", p, "availability")
        p = p + (a,)
    return p


def follow_strategy(S: TargetOracle, side: Player = Player.I) -> PureStrategy:
    """Smallest action whose cylinder is not Outside; smallest available otherwise."""
    cache: dict = {}

    def choose(p):
        if p not in cache:
            acts = S.tree.actions(p)
            cache[p] = next((a for a in acts if S.verdict(p + (a,)) is not OUTSIDE), acts[0])
        return cache[p]

    return PureStrategy(side, choose, f"follow {S.name}")


def avoid_strategy(S: TargetOracle, side: Player = Player.II) -> PureStrategy:
    """Smallest action that makes the cylinder Outside; smallest available otherwise."""
    cache: dict = {}

    def choose(p):
        if p not in cache:
            acts = S.tree.actions(p)
            cache[p] = next((a for a in acts if S.verdict(p + (a,)) is OUTSIDE), acts[0])
        return cache[p]

    return PureStrategy(side, choose, f"avoid {S.name}")


def coin_flip_strategy() -> BehaviorStrategy:
    """Player II mixes uniformly over the available actions."""
    return BehaviorStrategy(Player.II, lambda p, acts: [Fraction(1, len(acts))] * len(acts), "coin flip")


# ---------------------------------------------------------------------------
# solver


@dataclass
class SolveResult:
    winner: Player
    depth: int
    style: str
    definitive: bool
    strategy: Optional[dict] = field(default=None, repr=False)
    tried: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "winner": str(self.winner),
            "depth": self.depth,
            "style": self.style,
            "definitive": self.definitive,
            "strategy_size": None if self.strategy is None else len(self.strategy),
            "tried": self.tried,
        }


class _Sweep:
    """Backward induction on the depth truncation; True means Player I wins."""

    def __init__(self, S: TargetOracle, depth: int, boundary_wins: bool):
        self.S = S
        self.depth = depth
        self.boundary_wins = boundary_wins
        self.memo: dict = {}
        self.complete = S.tree.complete

    def value(self, p, state, v) -> bool:
        if v is OUTSIDE:
            return False
        if v is INSIDE:
            return True
        n = len(p)
        if n == self.depth:
            return self.boundary_wins
        key = (state, n) if self.complete else p
        try:
            hit = self.memo.get(key)
        except TypeError:
            key, hit = p, self.memo.get(p)
        if hit is not None:
            return hit
        kids = (self.S.child(state, n, a) + (a,) for a in self.S.tree.actions(p))
        if n % 2 == 0:
            res = any(self.value(p + (a,), cs, cv) for cs, cv, a in kids)
        else:
            res = all(self.value(p + (a,), cs, cv) for cs, cv, a in kids)
        self.memo[key] = res
        return res

    def extract(self, side: Player) -> dict:
        """Winning moves for ``side`` at every position reachable when it follows them."""
        want = side is Player.I
        table = {}
        st, v = self.S.root()
        stack = [((), st, v)]
        while stack:
            p, state, v = stack.pop()
            if v is not BOUNDARY or len(p) == self.depth:
                continue
            kids = [(a, *self.S.child(state, len(p), a)) for a in self.S.tree.actions(p)]
            if mover(p) is side:
                for a, cs, cv in kids:
                    if self.value(p + (a,), cs, cv) == want:
                        table[p] = a
                        stack.append((p + (a,), cs, cv))
                        break
            else:
                stack.extend((p + (a,), cs, cv) for a, cs, cv in kids)
        return table


def solve(tree: TreeOracle, S: TargetOracle, depth: int, style: str = "closed",
          extract: bool = True) -> SolveResult:
    """Three-valued winner of the depth-truncated game.

    Optimistic sweep (Boundary at the horizon counts for I) lost: Player II
    forces Outside, which is final.  Pessimistic sweep (only Inside counts)
    won: Player I forces Inside, also final.  Otherwise the truncation is not
    decisive; closed style reports Player I as the provisional winner
    (survival to the horizon), open style reports Undecided.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if style not in ("closed", "open"):
        raise ValueError("style must be 'closed' or 'open'")
    if tree is not S.tree and tree.arity != S.tree.arity:
        raise ValueError("target lives on a different tree")
    if tree is not S.tree:
        S = TargetOracle(tree, S.verdict_fn, S.name, S.step, S.initial, S.spec)
    state, v = S.root()
    optimistic = _Sweep(S, depth, True)
    if not optimistic.value((), state, v):
        return SolveResult(Player.II, depth, style, True, optimistic.extract(Player.II) if extract else None)
    pessimistic = _Sweep(S, depth, False)
    if pessimistic.value((), state, v):
        return SolveResult(Player.I, depth, style, True, pessimistic.extract(Player.I) if extract else None)
    if style == "closed":
        return SolveResult(Player.I, depth, style, False, optimistic.extract(Player.I) if extract else None)
    return SolveResult(Player.UNDECIDED, depth, style, False, None)


def solve_iterative(tree: TreeOracle, S: TargetOracle, cap: int, style: str = "closed",
                    start: int = 1) -> SolveResult:
    """Deepen until the result is definitive or ``cap`` is reached."""
    tried = []
    res = None
    for n in range(start, cap + 1):
        res = solve(tree, S, n, style)
        tried.append(n)
        if res.definitive:
            res.tried = tried
            return res
    res = res or solve(tree, S, cap, style)
    res.tried = tried
    return res


def verify_strategy(tree: TreeOracle, S: TargetOracle, table: dict, side: Player, depth: int,
                    style: str = "closed") -> bool:
    """Play ``table`` against every opponent line to ``depth``.

    Player I (closed): no line reaches Outside.  Player I (open): every line
    reaches Inside.  Player II: every line reaches Outside.
    """
    state, v = S.root()
    stack = [((), state, v)]
    while stack:
        p, state, v = stack.pop()
        if v is OUTSIDE:
            if side is Player.I:
                return False
            continue
        if v is INSIDE:
            if side is Player.II:
                return False
            continue
        if len(p) == depth:
            if side is Player.II or style == "open":
                return False
            continue
        if mover(p) is side:
            if p not in table:
                return False
            acts = [table[p]]
        else:
            acts = tree.actions(p)
        for a in acts:
            if not tree.contains(p + (a,)):
                return False
            stack.append((p + (a,), *S.child(state, len(p), a)))
    return True


# ---------------------------------------------------------------------------
# strategy subcanopies and the zero-even isometry


def strategy_subcanopy(sI: Callable, depth: int, tree: Optional[TreeOracle] = None) -> list:
    """Every length-``depth`` position consistent with a Player I strategy, lexicographic."""
    tree = tree or binary_tree()
    out = [()]
    for n in range(depth):
        nxt = []
        for p in out:
            if n % 2 == 0:
                nxt.append(p + (sI(p),))
            else:
                nxt.extend(p + (a,) for a in tree.actions(p))
        out = nxt
    return out


def isometry_phi(x: Position, sI: Callable) -> Position:
    """Zero the even coordinates of a play consistent with sI."""
    for n in range(0, len(x), 2):
        if x[n] != sI(x[:n]):
            raise NotInSubcanopy(f"{x} departs from the strategy at stage {n}")
    return tuple(0 if n % 2 == 0 else a for n, a in enumerate(x))


def cylinder_probability(p: Position, sI: Callable, m: int = 2) -> Fraction:
    """Probability of the cylinder of p when I plays sI and II flips fair m-sided coins."""
    if len(p) % 2:
        raise ValueError("cylinder_probability is stated for even lengths")
    for n in range(0, len(p), 2):
        if p[n] != sI(p[:n]):
            return Fraction(0)
    return Fraction(1, m ** (len(p) // 2))


def enclosing_even_cylinder(x: Position, y: Position) -> Position:
    """Even-length p whose cylinder holds both plays, with diam <= 2 d(x, y)."""
    n = first_difference(x, y)
    if n is None:
        raise ValueError("prefixes are indistinguishable; deepen them first")
    return x[:n] if n % 2 == 0 else x[: n - 1]


# ---------------------------------------------------------------------------
# Monte Carlo


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Stream for one trial: PCG64 seeded by SeedSequence(seed, spawn_key=(trial,))."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(trial,))))


@dataclass
class MCResult:
    survival: float
    curve: list
    trials: int
    depth: int
    seed: int

    @property
    def monotone(self) -> bool:
        return all(b <= a for a, b in zip(self.curve, self.curve[1:]))

    def to_json(self) -> dict:
        return {"survival": self.survival, "curve": self.curve, "trials": self.trials,
                "depth": self.depth, "seed": self.seed, "monotone": self.monotone}


def mc_flipcoin(S: TargetOracle, sI: Callable, depth: int, trials: int, seed: int) -> MCResult:
    """Share of coin-flip plays against sI whose depth-n prefix is not Outside, per n."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    m = S.tree.arity
    death = np.full(trials, depth + 1)
    root_state, root_v = S.root()
    for t in range(trials):
        if root_v is OUTSIDE:
            death[t] = 0
            continue
        coins = trial_rng(seed, t).integers(0, m, size=depth // 2 + 1)
        p: Position = ()
        state = root_state
        for n in range(depth):
            if n % 2 == 0:
                a = sI(p)
            else:
                acts = S.tree.actions(p)
                a = acts[int(coins[n // 2]) % len(acts)] if not S.tree.complete else int(coins[n // 2])
            state, v = S.child(state, n, a)
            p = p + (a,)
            if v is OUTSIDE:
                death[t] = n + 1
                break
    curve = [float(np.mean(death > n)) for n in range(depth + 1)]
    return MCResult(curve[-1], curve, trials, depth, seed)


def cylinder_frequencies(sI: Callable, depth: int, trials: int, seed: int, m: int = 2) -> Counter:
    """Counts of every prefix (all lengths <= depth) over coin-flip plays against sI."""
    counts: Counter = Counter()
    for t in range(trials):
        coins = trial_rng(seed, t).integers(0, m, size=depth // 2 + 1)
        p: Position = ()
        counts[p] += 1
        for n in range(depth):
            a = sI(p) if n % 2 == 0 else int(coins[n // 2])
            p = p + (a,)
            counts[p] += 1
    return counts


@dataclass
class FrequencyCheck:
    ok: bool
    worst_z: float
    checked: int


def check_cylinder_frequencies(sI: Callable, depth: int, trials: int, seed: int, z: float = 3.0) -> FrequencyCheck:
    """Empirical frequency of every even-length consistent cylinder against its exact probability."""
    counts = cylinder_frequencies(sI, depth, trials, seed)
    worst = 0.0
    checked = 0
    for n in range(0, depth + 1, 2):
        for p in strategy_subcanopy(sI, n):
            prob = float(cylinder_probability(p, sI))
            se = (prob * (1 - prob) / trials) ** 0.5
            freq = counts[p] / trials
            checked += 1
            if se == 0:
                if freq != prob:
                    return FrequencyCheck(False, float("inf"), checked)
                continue
            worst = max(worst, abs(freq - prob) / se)
    return FrequencyCheck(worst <= z, worst, checked)


# ---------------------------------------------------------------------------
# strategy liftings between G' (target W) and G (target W_delta)


def _n_list(N: IndexSet, upto: int) -> list:
    return N.members_below(upto)


def expand_strategy(sPrime: Callable, N: IndexSet, M: IndexSet, horizon: int = 4096) -> PureStrategy:
    """G-strategy: consult s' on the N-subsequence at stages in N, play 0 elsewhere."""
    check_N(N, horizon)
    idx = _n_list(N, horizon)
    pos = {n: k for k, n in enumerate(idx)}

    def choose(p):
        if len(p) in pos:
            return sPrime(tuple(p[i] for i in idx if i < len(p)))
        return 0

    return PureStrategy(Player.I, choose, "expanded")


def restrict_strategy(s: Callable, N: IndexSet, M: IndexSet, horizon: int = 4096) -> PureStrategy:
    """G'-strategy: embed q as the N-coordinates of a position that is 0 elsewhere."""
    check_N(N, horizon)
    idx = _n_list(N, horizon)

    def choose(q):
        k = len(q)
        p = [0] * idx[k]
        for j, a in enumerate(q):
            p[idx[j]] = a
        return s(tuple(p))

    return PureStrategy(Player.I, choose, "restricted")


def normalize_strategy(s: Callable, N: IndexSet, M: IndexSet) -> PureStrategy:
    """Play 0 at even stages outside M ∪ N, otherwise as s."""

    def choose(p):
        n = len(p)
        if n % 2 == 0 and not M.member(n) and not N.member(n):
            return 0
        return s(p)

    return PureStrategy(Player.I, choose, "normalized")


def lift_strategy(sPrime: Callable, N: IndexSet, M: IndexSet, direction: str = "expand") -> PureStrategy:
    if direction == "expand":
        return expand_strategy(sPrime, N, M)
    if direction == "restrict":
        return restrict_strategy(sPrime, N, M)
    raise ValueError("direction must be 'expand' or 'restrict'")


def enumerate_strategies(depth: int, m: int = 2) -> Iterable[dict]:
    """Every Player I strategy table on the complete tree, defined on even lengths < depth."""
    spots = [p for n in range(0, depth, 2) for p in itertools.product(range(m), repeat=n)]
    for choice in itertools.product(range(m), repeat=len(spots)):
        yield dict(zip(spots, choice))


def strategy_wins(tree: TreeOracle, S: TargetOracle, sI: Callable, depth: int, style: str = "closed") -> bool:
    """Does sI win the depth-truncated game against every Player II line?"""
    table = {}
    for p in _reachable_I(tree, sI, depth):
        table[p] = sI(p)
    return verify_strategy(tree, S, table, Player.I, depth, style)


def _reachable_I(tree, sI, depth):
    out = []
    stack = [()]
    while stack:
        p = stack.pop()
        if len(p) >= depth:
            continue
        if len(p) % 2 == 0:
            out.append(p)
            stack.append(p + (sI(p),))
        else:
            stack.extend(p + (a,) for a in tree.actions(p))
    return out


def lifting_parity_ok(s: Callable, N: IndexSet, M: IndexSet, depth: int) -> bool:
    """Every reachable position of s keeps the zero constraints off M ∪ N."""
    tree = binary_tree()
    for p in strategy_subcanopy(s, depth, tree):
        for i in range(0, len(p), 2):
            if p[i] != 0 and not M.member(i) and not N.member(i):
                return False
    return True


# ---------------------------------------------------------------------------
# the monotone criterion


def _as_mpf(x):
    if hasattr(x, "to_mpf"):
        return x.to_mpf()
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


def monotone_criterion(xi_W, t, borel_or_regular: bool) -> dict:
    """If the dimension-type quantity of W is below t, Player I has no winning
    strategy; for Borel/regular W Player II then has one."""
    with mpmath.workdps(50):
        a, b = _as_mpf(xi_W), _as_mpf(t)
        if a < 0 or b < 0:
            raise ValueError("xi_W and t must be >= 0")
        below = a < b
    if not below:
        verdict = "criterion inconclusive"
    elif borel_or_regular:
        verdict = "PlayerII has a winning strategy"
    else:
        verdict = "PlayerI has no winning strategy"
    return {
        "verdict": verdict,
        "player_I_has_no_winning_strategy": below,
        "player_II_wins": below and borel_or_regular,
    }
