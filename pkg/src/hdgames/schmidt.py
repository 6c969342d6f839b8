"""Schmidt games on lattice models of R^d with the sup norm.

Balls are exact: rational centres and radii, so containment, interior
disjointness and separation are decided without rounding.  Under the sup norm
a closed ball is an axis-parallel cube, which is what makes the m-adic cube
systems line up with (1/m, 1/m)-games.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .canopy import BOUNDARY, INSIDE, OUTSIDE, Verdict
from .errors import IllegalMove


def frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, float):
        return Fraction(str(s))
    return Fraction(s)


@dataclass(frozen=True)
class Ball:
    """Closed sup-norm ball: centre (tuple of Fractions) and radius > 0."""

    center: tuple
    radius: Fraction
    model: str = "interval"

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(Fraction(c) for c in self.center))
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    @property
    def dim(self) -> int:
        return len(self.center)

    def bounds(self) -> list:
        return [(c - self.radius, c + self.radius) for c in self.center]

    def contains(self, other: "Ball") -> bool:
        slack = self.radius - other.radius
        return slack >= 0 and all(abs(a - b) <= slack for a, b in zip(self.center, other.center))

    def contains_point(self, x: Sequence) -> bool:
        return all(abs(Fraction(a) - c) <= self.radius for a, c in zip(x, self.center))

    def interiors_disjoint(self, other: "Ball") -> bool:
        reach = self.radius + other.radius
        return any(abs(a - b) >= reach for a, b in zip(self.center, other.center))

    def gap(self, other: "Ball") -> Fraction:
        """Sup-norm distance between the two closed balls (0 if they meet)."""
        reach = self.radius + other.radius
        return max(max(Fraction(0), abs(a - b) - reach) for a, b in zip(self.center, other.center))

    def to_json(self) -> dict:
        return {"center": [frac_str(c) for c in self.center], "radius": frac_str(self.radius)}

    @classmethod
    def from_json(cls, d: dict, model: str = "interval") -> "Ball":
        return cls(tuple(parse_frac(c) for c in d["center"]), parse_frac(d["radius"]), model)

    def __str__(self) -> str:
        return " x ".join(f"[{frac_str(lo)}, {frac_str(hi)}]" for lo, hi in self.bounds())


def ball_from_bounds(bounds: Sequence, model: str = "interval") -> Ball:
    lows = [Fraction(lo) for lo, _ in bounds]
    highs = [Fraction(hi) for _, hi in bounds]
    sides = {h - l for l, h in zip(lows, highs)}
    if len(sides) != 1:
        raise ValueError("sup-norm balls have equal sides")
    side = sides.pop()
    return Ball(tuple((l + h) / 2 for l, h in zip(lows, highs)), side / 2, model)


def pairwise_disjoint(balls: Sequence[Ball]) -> bool:
    return all(a.interiors_disjoint(b) for a, b in itertools.combinations(balls, 2))


def max_disjoint_subfamily(balls: Sequence[Ball]) -> list:
    """A largest subfamily with pairwise disjoint interiors (exact branch and bound)."""
    balls = list(balls)
    n = len(balls)
    conflicts = [
        {j for j in range(n) if j != i and not balls[i].interiors_disjoint(balls[j])} for i in range(n)
    ]
    best: list = []

    def grow(chosen, candidates):
        nonlocal best
        if len(chosen) + len(candidates) <= len(best):
            return
        if not candidates:
            best = list(chosen)
            return
        i = candidates[0]
        rest = candidates[1:]
        grow(chosen + [i], [j for j in rest if j not in conflicts[i]])
        grow(chosen, rest)

    grow([], list(range(n)))
    return [balls[i] for i in best]


# ---------------------------------------------------------------------------
# coding functions


def _digits_value(p, base):
    v = 0
    for a in p:
        v = v * base + a
    return v


def coding_interval(p) -> Ball:
    """Closed dyadic interval coded by a binary word."""
    n = len(p)
    lo = Fraction(_digits_value(p, 2), 2**n)
    return Ball((lo + Fraction(1, 2 ** (n + 1)),), Fraction(1, 2 ** (n + 1)))


def coding_quaternary_interval(p) -> Ball:
    """Closed tetradic interval coded by a word over {0,1,2,3}."""
    n = len(p)
    lo = Fraction(_digits_value(p, 4), 4**n)
    return Ball((lo + Fraction(1, 2 * 4**n),), Fraction(1, 2 * 4**n))


def coding_square(p) -> Ball:
    """Closed dyadic square: the digit a splits as (a mod 2, a // 2) into (x, y)."""
    n = len(p)
    x = _digits_value([a % 2 for a in p], 2)
    y = _digits_value([a // 2 for a in p], 2)
    h = Fraction(1, 2 ** (n + 1))
    return Ball((Fraction(x, 2**n) + h, Fraction(y, 2**n) + h), h, "square")


def interval_value(p, base: int = 2) -> Fraction:
    """Left endpoint of the coded interval, i.e. the truncated base-`base` value."""
    return Fraction(_digits_value(p, base), base ** len(p))


# ---------------------------------------------------------------------------
# m-adic cubes


@dataclass(frozen=True)
class MAdicCube:
    """m^-level * ([0,1)^d + offset)."""

    m: int
    level: int
    offset: tuple

    @property
    def side(self) -> Fraction:
        return Fraction(self.m) ** (-self.level)

    @property
    def dim(self) -> int:
        return len(self.offset)

    def closure(self) -> Ball:
        s = self.side
        return Ball(tuple((b + Fraction(1, 2)) * s for b in self.offset), s / 2,
                    "interval" if self.dim == 1 else f"cube{self.dim}")

    def contains_point(self, x) -> bool:
        """Half-open membership."""
        s = self.side
        return all(b * s <= Fraction(v) < (b + 1) * s for b, v in zip(self.offset, x))


def madic_children(c: MAdicCube) -> list:
    """The m^d level+1 cubes partitioning c, first axis varying fastest."""
    out = []
    for js in itertools.product(range(c.m), repeat=c.dim):
        js = js[::-1]
        out.append(MAdicCube(c.m, c.level + 1, tuple(c.m * b + j for b, j in zip(c.offset, js))))
    return out


def cube_containing(m: int, level: int, x) -> MAdicCube:
    s = Fraction(m) ** (-level)
    return MAdicCube(m, level, tuple(math.floor(Fraction(v) / s) for v in x))


def check_partition(parent: Ball, children: Sequence[Ball]) -> bool:
    """Exact check that closed children tile the closed parent.

    Containment plus pairwise disjoint interiors plus equal total volume is
    equivalent to the union being the parent, for axis-parallel boxes.
    """
    if not all(parent.contains(c) for c in children):
        return False
    if not pairwise_disjoint(children):
        return False
    d = parent.dim
    return sum((2 * c.radius) ** d for c in children) == (2 * parent.radius) ** d


# ---------------------------------------------------------------------------
# Cantor set oracle


def cantor_interval_verdict_scaled(a: int, b: int, Q: int, max_digits: int = 64) -> Verdict:
    """Verdict of [a/Q, b/Q] against C = {sum a_n 5^-(n+1) : a_n in {1,3}}.

    Q must be divisible by 4 so that the hull endpoints 1/4 and 3/4 of C are
    integers in these units.  C is the union of its images under x -> (1+x)/5
    and x -> (3+x)/5; the interval is pushed through the inverse maps until it
    misses the hull, contains a hull endpoint (both lie in C), or the digit
    cap is reached.  A degenerate interval is decided exactly by cycle
    detection: a point whose orbit stays strictly inside the hull forever has
    a {1,3} expansion.
    """
    if Q % 4:
        raise ValueError("Q must be divisible by 4")
    if a > b:
        raise ValueError("malformed interval: lo > hi")
    lo_h, hi_h = Q // 4, 3 * Q // 4

    if a == b:
        seen = set()
        x = a
        while True:
            if x < lo_h or x > hi_h:
                return OUTSIDE
            if x == lo_h or x == hi_h:
                return INSIDE
            if x in seen:
                return INSIDE
            seen.add(x)
            for d in (1, 3):
                y = 5 * x - d * Q
                if lo_h <= y <= hi_h:
                    x = y
                    break
            else:
                return OUTSIDE

    undecided = False
    stack = [(a, b, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        if hi < lo_h or lo > hi_h:
            continue
        if lo <= lo_h <= hi or lo <= hi_h <= hi:
            return BOUNDARY
        if depth >= max_digits:
            undecided = True
            continue
        for d in (1, 3):
            stack.append((5 * lo - d * Q, 5 * hi - d * Q, depth + 1))
    return BOUNDARY if undecided else OUTSIDE


def cantor_interval_oracle(lo, hi, max_digits: int = 64) -> Verdict:
    lo, hi = Fraction(lo), Fraction(hi)
    if not (0 <= lo <= hi <= 1):
        raise ValueError(f"malformed interval [{lo}, {hi}]")
    Q = 4 * math.lcm(lo.denominator, hi.denominator)
    return cantor_interval_verdict_scaled(int(lo * Q), int(hi * Q), Q, max_digits)


def cantor_ball_verdict(ball: Ball, max_digits: int = 64) -> Verdict:
    (lo, hi), = ball.bounds()
    lo, hi = max(lo, Fraction(0)), min(hi, Fraction(1))
    if lo > hi:
        return OUTSIDE
    return cantor_interval_oracle(lo, hi, max_digits)


# ---------------------------------------------------------------------------
# (alpha, beta) subgames


def _axis_slots(lo: Fraction, side: Fraction, child_side: Fraction) -> list:
    """Left ends of child segments tiling [lo, lo+side]; right-aligned extra if ragged."""
    k = side / child_side
    whole = k.numerator // k.denominator
    starts = [lo + j * child_side for j in range(whole)]
    if k != whole:
        starts.append(lo + side - child_side)
    return starts


def lattice_children(ball: Ball, ratio: Fraction) -> list:
    """Balls of radius ratio*rho tiling `ball`, first axis varying fastest."""
    ratio = Fraction(ratio)
    child_r = ball.radius * ratio
    axes = [
        _axis_slots(c - ball.radius, 2 * ball.radius, 2 * child_r) for c in ball.center
    ]
    out = []
    for combo in itertools.product(*reversed(axes)):
        lows = combo[::-1]
        out.append(Ball(tuple(l + child_r for l in lows), child_r, ball.model))
    return out


@dataclass(frozen=True)
class SchmidtConfig:
    """An (alpha, beta) subgame: roots are the stage -1 collection, ``admissible``
    maps a history (B_-1, B_0, ..., B_{n-1}) to the collection for stage n."""

    alpha: Fraction
    beta: Fraction
    roots: tuple
    admissible: Callable[[tuple], list]
    name: str = "schmidt"
    dim: int = 1
    m: Optional[int] = None
    spec: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if not (0 < self.alpha < 1 and 0 < self.beta < 1):
            raise ValueError("alpha and beta must lie in (0, 1)")
        if not self.roots:
            raise ValueError("empty stage -1 collection")

    def rate(self, stage: int) -> Fraction:
        return self.alpha if stage % 2 == 0 else self.beta

    def options(self, history: tuple) -> list:
        if not history:
            return list(self.roots)
        opts = self.admissible(tuple(history))
        if not opts:
            raise ValueError(f"degenerate admissible collection after {len(history)} balls")
        return opts


def lattice_subgame(alpha, beta, d: int = 1, root: Optional[Ball] = None, name: Optional[str] = None,
                    m: Optional[int] = None) -> SchmidtConfig:
    alpha, beta = Fraction(alpha), Fraction(beta)
    root = root or Ball(tuple(Fraction(1, 2) for _ in range(d)), Fraction(1, 2),
                        "interval" if d == 1 else f"cube{d}")

    def admissible(history):
        stage = len(history) - 1
        return lattice_children(history[-1], alpha if stage % 2 == 0 else beta)

    return SchmidtConfig(alpha, beta, (root,), admissible, name or f"lattice({alpha},{beta},d={d})", d, m,
                         {"model": "lattice", "alpha": frac_str(alpha), "beta": frac_str(beta), "d": d})


def dyadic_interval_game() -> SchmidtConfig:
    g = lattice_subgame(Fraction(1, 2), Fraction(1, 2), 1, name="dyadic intervals", m=2)
    return _respec(g, {"model": "interval"})


def quaternary_interval_game() -> SchmidtConfig:
    g = lattice_subgame(Fraction(1, 4), Fraction(1, 4), 1, name="tetradic intervals", m=4)
    return _respec(g, {"model": "quaternary"})


def quaternary_square_game() -> SchmidtConfig:
    g = lattice_subgame(Fraction(1, 2), Fraction(1, 2), 2, name="dyadic squares", m=2)
    return _respec(g, {"model": "square"})


def madic_cube_game(m: int, d: int) -> SchmidtConfig:
    g = lattice_subgame(Fraction(1, m), Fraction(1, m), d, name=f"{m}-adic cubes d={d}", m=m)
    return _respec(g, {"model": "madic", "m": m, "d": d})


def _respec(g: SchmidtConfig, spec: dict) -> SchmidtConfig:
    return SchmidtConfig(g.alpha, g.beta, g.roots, g.admissible, g.name, g.dim, g.m, spec)


def config_from_spec(spec: dict) -> SchmidtConfig:
    model = spec.get("model", "interval")
    if model == "interval":
        return dyadic_interval_game()
    if model == "quaternary":
        return quaternary_interval_game()
    if model == "square":
        return quaternary_square_game()
    if model == "madic":
        return madic_cube_game(int(spec["m"]), int(spec["d"]))
    if model == "lattice":
        return lattice_subgame(parse_frac(spec["alpha"]), parse_frac(spec["beta"]), int(spec.get("d", 1)))
    raise KeyError(f"unknown Schmidt model {model!r}")


# strategies: (history, options) -> index into options (or a Ball)


def smallest_index(history, options) -> int:
    return 0


def seeded_random_strategy(seed: int) -> Callable:
    rng = random.Random(seed)

    def choose(history, options):
        return rng.randrange(len(options))

    return choose


def target_strategy(verdict: Callable[[Ball], Verdict], avoid: bool) -> Callable:
    """Pick the first option whose verdict is (avoid) Outside or (follow) not Outside."""

    def choose(history, options):
        for i, b in enumerate(options):
            v = verdict(b)
            if (v is OUTSIDE) == avoid:
                return i
        return 0

    return choose


@dataclass
class SchmidtTranscript:
    balls: list
    verdicts: list = field(default_factory=list)
    config_name: str = ""

    def to_json(self) -> dict:
        return {
            "balls": [b.to_json() for b in self.balls],
            "verdicts": [str(v) for v in self.verdicts],
        }


def check_move(config: SchmidtConfig, history: tuple, ball: Ball, stage: int) -> None:
    """Raise IllegalMove naming the violated constraint."""
    options = config.options(history)
    if history:
        prev = history[-1]
        if ball.radius != config.rate(stage) * prev.radius:
            raise IllegalMove(f"stage {stage}: radius {ball.radius} breaks the radius law", history, "radius")
        if not prev.contains(ball):
            raise IllegalMove(f"stage {stage}: ball not contained in previous ball", history, "containment")
    if ball not in options:
        raise IllegalMove(f"stage {stage}: ball not in the admissible collection", history, "collection")


def play_schmidt(config: SchmidtConfig, sI: Callable, sII: Callable, steps: int,
                 target: Optional[Callable[[Ball], Verdict]] = None) -> SchmidtTranscript:
    """Play stage -1 (Player II) then ``steps`` alternating stages starting with Player I."""
    history: tuple = ()
    verdicts = []
    for stage in range(-1, steps):
        options = config.options(history)
        mover = sII if stage == -1 or stage % 2 == 1 else sI
        choice = mover(history, options)
        if isinstance(choice, Ball):
            ball = choice
        else:
            if not (isinstance(choice, int) and 0 <= choice < len(options)):
                raise IllegalMove(f"stage {stage}: index {choice!r} out of range", history, "collection")
            ball = options[choice]
        check_move(config, history, ball, stage)
        history = history + (ball,)
        if target is not None:
            verdicts.append(target(ball))
    return SchmidtTranscript(list(history), verdicts, config.name)


def check_transcript(config: SchmidtConfig, balls: Sequence[Ball]) -> None:
    """Radius law and nesting, exactly, for a full transcript starting at stage -1."""
    for n in range(1, len(balls)):
        prev, cur = balls[n - 1], balls[n]
        stage = n - 1
        if cur.radius * (1 / config.rate(stage)) != prev.radius:
            raise IllegalMove(f"radius law broken at stage {stage}", None, "radius")
        if not all(abs(a - b) <= prev.radius - cur.radius for a, b in zip(cur.center, prev.center)):
            raise IllegalMove(f"nesting broken at stage {stage}", None, "containment")


def project_point(balls: Sequence[Ball]) -> tuple:
    """Centre of the last ball and its radius as the enclosure bound."""
    if not balls:
        raise ValueError("empty ball sequence")
    for a, b in zip(balls, balls[1:]):
        if not a.contains(b):
            raise ValueError("ball sequence is not nested")
    last = balls[-1]
    return last.center, last.radius


# ---------------------------------------------------------------------------
# collapse (alpha, beta) -> (alpha*beta, alpha*beta)


@dataclass(frozen=True)
class CollapsedGame:
    """Each composite move bundles a Player I ball (temporary) and the Player II
    answer (final), so final balls shrink by alpha*beta per move."""

    base: SchmidtConfig

    @property
    def rate(self) -> Fraction:
        return self.base.alpha * self.base.beta

    def options(self, collapsed: tuple) -> list:
        if not collapsed:
            return list(self.base.roots)
        flat = self.unpack(collapsed)
        return [(h, b) for h in self.base.options(flat) for b in self.base.options(flat + (h,))]

    @staticmethod
    def unpack(collapsed) -> tuple:
        if not collapsed:
            return ()
        flat = [collapsed[0]]
        for h, b in collapsed[1:]:
            flat.extend((h, b))
        return tuple(flat)

    @staticmethod
    def pack(flat) -> tuple:
        if not flat:
            return ()
        if len(flat) % 2 != 1:
            raise ValueError("an original transcript packs only after a Player II move")
        rest = flat[1:]
        return (flat[0],) + tuple((rest[i], rest[i + 1]) for i in range(0, len(rest), 2))

    def final_balls(self, collapsed) -> list:
        return [collapsed[0]] + [b for _, b in collapsed[1:]]

    def play(self, chooser: Callable, steps: int) -> tuple:
        collapsed: tuple = ()
        for _ in range(steps + 1):
            opts = self.options(collapsed)
            collapsed = collapsed + (opts[chooser(collapsed, opts)],)
        return collapsed

    def check(self, collapsed) -> None:
        """Composite moves unpack to legal original moves; final radii follow alpha*beta."""
        flat = self.unpack(collapsed)
        for i in range(len(flat)):
            check_move(self.base, flat[:i], flat[i], i - 1)
        finals = self.final_balls(collapsed)
        for a, b in zip(finals, finals[1:]):
            if b.radius != self.rate * a.radius or not a.contains(b):
                raise IllegalMove("collapsed radius law or nesting broken", None, "radius")


def collapse_alphabeta(config: SchmidtConfig) -> CollapsedGame:
    return CollapsedGame(config)


# ---------------------------------------------------------------------------
# threshold and hypothesis checks


@dataclass(frozen=True)
class Threshold:
    exact: Optional[Fraction]
    value: float
    expr: str

    def to_json(self) -> dict:
        return {"expr": self.expr, "float": self.value,
                "exact": frac_str(self.exact) if self.exact is not None else None}


def _rational_log(base: Fraction, x: int) -> Optional[Fraction]:
    """log_base(x) when it is rational, verified exactly; else None."""
    if x == 1:
        return Fraction(0)
    guess = Fraction(math.log(x) / math.log(base)).limit_denominator(10_000)
    if guess <= 0:
        return None
    if base ** guess.numerator == Fraction(x) ** guess.denominator:
        return guess
    return None


def threshold(alpha, beta, m_balls: int) -> Threshold:
    """log_{(alpha*beta)^-1}(m_balls)."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise ValueError("alpha and beta must lie in (0, 1)")
    if m_balls < 1:
        raise ValueError("m_balls must be >= 1")
    base = 1 / (alpha * beta)
    value = math.log(m_balls) / math.log(base)
    exact = _rational_log(base, m_balls)
    expr = f"log_{frac_str(base)}({m_balls})"
    return Threshold(exact, float(exact) if exact is not None else value, expr)


def iter_histories(config: SchmidtConfig, moves: int):
    """Every history (B_-1, B_0, ..., B_{j-1}) with j <= moves, depth-first."""
    stack = [(r,) for r in reversed(config.roots)]
    while stack:
        h = stack.pop()
        yield h
        if len(h) - 1 < moves:
            for b in reversed(config.options(h)):
                stack.append(h + (b,))


@dataclass
class HypothesisReport:
    holds: bool
    checked: int
    min_family: Optional[int]
    failures: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)


def check_m_balls_hypothesis(config: SchmidtConfig, m_balls: int, depth: int,
                             n_tilde: int = 0) -> HypothesisReport:
    """At every Player II turn (after a Player I ball) some m_balls admissible
    answers have pairwise disjoint interiors.  Exhaustive over histories of at
    most ``depth`` moves."""
    checked = 0
    smallest = None
    failures = []
    witnesses = {}
    for h in iter_histories(config, depth):
        moves = len(h) - 1
        if moves % 2 != 1 or moves < 2 * n_tilde + 1:
            continue
        fam = max_disjoint_subfamily(config.options(h))
        checked += 1
        smallest = len(fam) if smallest is None else min(smallest, len(fam))
        if len(fam) < m_balls:
            failures.append(h)
        elif len(witnesses) < 8:
            witnesses[moves] = [b.to_json() for b in fam[:m_balls]]
    return HypothesisReport(not failures and checked > 0, checked, smallest, failures[:5], witnesses)


def coloring_modulus(m: int) -> int:
    return 4 if m == 2 else 2


def color_classes(cubes: Sequence[MAdicCube], modulus: int) -> dict:
    classes: dict = {}
    for c in cubes:
        key = tuple(b % modulus for b in c.offset)
        classes.setdefault(key, []).append(c)
    return classes


def is_separated(balls: Sequence[Ball], r: Fraction) -> bool:
    return all(a.gap(b) > r for a, b in itertools.combinations(balls, 2))


@dataclass
class StructuralReport:
    countable_covering: bool
    covering_witness: str
    L: int
    coloring_ok: bool
    levels_checked: list
    partition_ok: bool

    def to_json(self) -> dict:
        return {
            "countable_covering": self.countable_covering,
            "covering_witness": self.covering_witness,
            "L": self.L,
            "coloring_ok": self.coloring_ok,
            "levels_checked": self.levels_checked,
            "partition_ok": self.partition_ok,
        }


def structural_checks(m: int, d: int, depth: int, k: int = 1, max_cubes: int = 4096) -> StructuralReport:
    """Countable covering and L-coloring of the m-adic cube game, levels 1..depth.

    Covering: the integer-offset cubes of level 0 are a countable family whose
    closures cover R^d, and each level's children partition their parent
    (checked exactly on every cube visited).  Coloring: children k levels
    below a cube are coloured by offset mod 2 (mod 4 when m = 2) per axis and
    each colour class must be r-separated with r the child radius.
    """
    modulus = coloring_modulus(m)
    L = modulus**d
    coloring_ok = True
    partition_ok = True
    levels = []
    frontier = [MAdicCube(m, 0, tuple(0 for _ in range(d)))]
    for level in range(depth):
        for cube in frontier:
            kids = madic_children(cube)
            partition_ok &= check_partition(cube.closure(), [c.closure() for c in kids])
            below = [cube]
            for _ in range(k):
                below = [c for b in below for c in madic_children(b)]
            r = below[0].closure().radius
            classes = color_classes(below, modulus)
            if len(classes) > L:
                coloring_ok = False
            for members in classes.values():
                if not is_separated([c.closure() for c in members], r):
                    coloring_ok = False
        levels.append(level + 1)
        nxt = [c for cube in frontier for c in madic_children(cube)]
        if len(nxt) > max_cubes:
            nxt = random.Random(level).sample(nxt, max_cubes)
        frontier = nxt
    return StructuralReport(True, f"level-0 integer-offset cubes of Z^{d} (countable)", L,
                            coloring_ok, levels, partition_ok)


def unit_cover_check(m: int, d: int, level: int) -> bool:
    """The level-`level` cubes inside [0,1]^d cover it exactly."""
    root = Ball(tuple(Fraction(1, 2) for _ in range(d)), Fraction(1, 2))
    n = m**level
    cubes = [MAdicCube(m, level, off).closure() for off in itertools.product(range(n), repeat=d)]
    return check_partition(root, cubes)
