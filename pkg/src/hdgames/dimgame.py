"""The Hausdorff dimension game on a canopy and its ball-offer variant.

Player 1 fixes a block length k, then each step offers a non-empty set of
length-k words; Player 2 picks one.  The picks concatenate into a play.  The
payoff is the long-run average of log_{m^k}|A_n| if the play stays in the
target and -1 otherwise; at a finite horizon we report the last average, the
running minimum of averages and the verdict of the projected prefix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .canopy import OUTSIDE, IndexSet, Position, TargetOracle, make_FM
from .errors import IllegalMove, IllegalOffer
from .schmidt import Ball, coding_interval, pairwise_disjoint, is_separated

Word = tuple


def project_play(k: int, picks: Sequence[Word]) -> Position:
    out: list = []
    for w in picks:
        if len(w) != k:
            raise ValueError(f"pick {w} has length {len(w)}, expected {k}")
        out.extend(w)
    return tuple(out)


@dataclass(frozen=True)
class Player1:
    """``offer(history)`` returns the next offer; history is a list of (offer, pick)."""

    k: int
    offer: Callable[[list], list]
    name: str = "player1"


@dataclass(frozen=True)
class Player2:
    pick: Callable[[list, list], Word]
    name: str = "player2"


@dataclass
class PayoffRecord:
    payoff: float
    last_average: float
    running_min: float
    outside: bool
    horizon: int

    def to_json(self) -> dict:
        return {"payoff": self.payoff, "last_average": self.last_average,
                "running_min": self.running_min, "outside": self.outside, "horizon": self.horizon}


@dataclass
class DimGameTranscript:
    k: int
    m: int
    steps: list = field(default_factory=list)
    payoff: Optional[PayoffRecord] = None

    @property
    def picks(self) -> list:
        return [b for _, b in self.steps]

    def log_terms(self) -> list:
        base = math.log(self.m**self.k)
        return [math.log(len(A)) / base for A, _ in self.steps]

    def averages(self) -> list:
        out, total = [], 0.0
        for n, t in enumerate(self.log_terms(), 1):
            total += t
            out.append(total / n)
        return out

    def position(self) -> Position:
        return project_play(self.k, self.picks)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "steps": [{"offer": [list(w) for w in A], "pick": list(b)} for A, b in self.steps],
            "payoff": self.payoff.to_json() if self.payoff else None,
        }


def payoff_prefix(t: DimGameTranscript, S: TargetOracle, N: Optional[int] = None,
                  burn_in: int = 1) -> PayoffRecord:
    """Finite-horizon surrogate of the payoff over the first N steps."""
    N = len(t.steps) if N is None else N
    if not 1 <= N <= len(t.steps):
        raise ValueError("horizon must lie in [1, number of steps]")
    avgs = t.averages()[:N]
    outside = S.verdict(project_play(t.k, t.picks[:N])) is OUTSIDE
    tail = avgs[burn_in - 1:] if burn_in <= N else avgs[-1:]
    last = avgs[-1]
    return PayoffRecord(-1.0 if outside else last, last, min(tail), outside, N)


def _check_offer(A, k: int, m: int, step: int) -> list:
    A = [tuple(w) for w in A]
    if not A:
        raise IllegalOffer(f"step {step}: empty offer", step, "non-empty")
    if len(set(A)) != len(A):
        raise IllegalOffer(f"step {step}: repeated words", step, "set")
    for w in A:
        if len(w) != k or any(not 0 <= s < m for s in w):
            raise IllegalOffer(f"step {step}: {w} is not a length-{k} word over {m} symbols", step, "word")
    return sorted(A)


def run_dim_game(p1: Player1, p2: Player2, steps: int, m: int = 2,
                 S: Optional[TargetOracle] = None) -> DimGameTranscript:
    if p1.k < 1:
        raise IllegalOffer("block length must be >= 1", None, "k")
    t = DimGameTranscript(p1.k, m)
    for n in range(steps):
        A = _check_offer(p1.offer(t.steps), p1.k, m, n)
        b = tuple(p2.pick(t.steps, A))
        if b not in A:
            raise IllegalMove(f"step {n}: pick {b} not in the offer", n, "membership")
        t.steps.append((A, b))
    if S is not None and steps:
        t.payoff = payoff_prefix(t, S)
    return t


# ---------------------------------------------------------------------------
# strategies


class _Cursor:
    """Oracle state along the projected play, so each probe costs O(k) rather than O(n)."""

    def __init__(self, S: TargetOracle):
        self.S = S
        self._hist = None
        self._seen = 0
        self.length = 0
        self.state, self.v = S.root()

    def advance(self, history: list) -> None:
        """Catch up with the picks in ``history``, restarting when a new game begins."""
        if history is not self._hist or len(history) < self._seen:
            self._hist, self._seen, self.length = history, 0, 0
            self.state, self.v = self.S.root()
        for _, b in history[self._seen:]:
            for a in b:
                if self.v is not OUTSIDE:
                    self.state, self.v = self.S.child(self.state, self.length, a)
                self.length += 1
        self._seen = len(history)

    def probe(self, w: Word):
        state, v = self.state, self.v
        for j, a in enumerate(w):
            if v is OUTSIDE:
                break
            state, v = self.S.child(state, self.length + j, a)
        return v


def sigma1_FM(M: IndexSet) -> Player1:
    """k = 1; offer {0, 1} at step n when n is in M, else {0}."""
    return Player1(1, lambda h: [(0,), (1,)] if M.member(len(h)) else [(0,)], f"sigma1[{M.name}]")


def sigma2_avoid(S: TargetOracle, probe: int = 0) -> Player2:
    """Pick the smallest offered word whose continuation (zero-padded to ``probe``
    symbols) is Outside; the smallest word otherwise."""

    cur = _Cursor(S)

    def pick(history, A):
        k = len(A[0])
        cur.advance(history)
        for w in A:
            pad = max(0, probe - cur.length - k)
            if cur.probe(w + (0,) * pad) is OUTSIDE:
                return w
        return A[0]

    return Player2(pick, f"avoid[{S.name}]")


def smallest_pick() -> Player2:
    return Player2(lambda h, A: A[0], "smallest")


def block_greedy(S: TargetOracle, k: int, m: int = 2) -> Player1:
    """Offer every length-k word that keeps the projected prefix out of Outside."""

    cur = _Cursor(S)
    all_words = list(itertools.product(range(m), repeat=k))

    def offer(history):
        cur.advance(history)
        words = [w for w in all_words if cur.probe(w) is not OUTSIDE]
        return words or [(0,) * k]

    return Player1(k, offer, f"block greedy k={k}")


def offer_everything(k: int, m: int = 2) -> Player1:
    words = list(itertools.product(range(m), repeat=k))
    return Player1(k, lambda h: words, f"everything k={k}")


@dataclass
class Sandwich:
    lower: float
    upper: float
    arms: dict

    @property
    def gap(self) -> float:
        return self.upper - self.lower

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "gap": self.gap, "arms": self.arms}


def value_sandwich_FM(M: IndexSet, steps: int, ks: Sequence[int] = (1, 2, 3)) -> Sandwich:
    """lower: sigma1 against the avoiding Player 2.  upper: best of several
    Player 1 variants against the same Player 2 (which caps them at delta)."""
    S = make_FM(M)
    avoid = sigma2_avoid(S)
    lower_t = run_dim_game(sigma1_FM(M), avoid, steps, 2, S)
    arms = {"sigma1 vs avoid": lower_t.payoff.payoff}
    for k in ks:
        n = max(1, steps // k)
        t = run_dim_game(block_greedy(S, k), avoid, n, 2, S)
        arms[f"block greedy k={k} vs avoid"] = t.payoff.payoff
    t = run_dim_game(offer_everything(1), avoid, steps, 2, S)
    arms["offer everything vs avoid"] = t.payoff.payoff
    upper = max(v for name, v in arms.items() if name != "sigma1 vs avoid")
    lower = arms["sigma1 vs avoid"]
    return Sandwich(lower, max(upper, lower), arms)


# ---------------------------------------------------------------------------
# ball offers for the game associated with a Schmidt subgame


def check_offer_legality(balls: Sequence[Ball], mode: str = "disjoint", r=None) -> bool:
    """Disjoint interiors (and, for mode 'separated', pairwise gaps > r)."""
    balls = list(balls)
    if not balls:
        raise IllegalOffer("empty offer", None, "non-empty")
    if len({b.radius for b in balls}) > 1:
        raise IllegalOffer("mixed radii in one offer", None, "radius")
    if mode == "disjoint":
        return pairwise_disjoint(balls)
    if mode == "separated":
        if r is None:
            raise ValueError("separated mode needs a radius r")
        return pairwise_disjoint(balls) and is_separated(balls, Fraction(r))
    raise ValueError("mode must be 'disjoint' or 'separated'")


@dataclass
class BallOffer:
    positions: list
    coding: Callable[[Position], Ball] = coding_interval
    separation: Optional[Fraction] = None

    def balls(self) -> list:
        return [self.coding(p) for p in self.positions]

    def legal(self) -> bool:
        if len({len(p) for p in self.positions}) > 1:
            raise IllegalOffer("positions of unequal length", None, "length")
        mode = "separated" if self.separation is not None else "disjoint"
        return check_offer_legality(self.balls(), mode, self.separation)


def run_associated_game(p1: Player1, p2: Player2, steps: int, coding: Callable = coding_interval,
                        m: int = 2, separation: Optional[Callable[[int], Fraction]] = None,
                        S: Optional[TargetOracle] = None) -> DimGameTranscript:
    """The dimension game whose offers are subgame positions; every offer is
    checked for disjoint interiors (and r_n-separation when ``separation`` is given)."""
    t = DimGameTranscript(p1.k, m)
    base: Position = ()
    for n in range(steps):
        A = _check_offer(p1.offer(t.steps), p1.k, m, n)
        r = separation(len(base) + p1.k) if separation else None
        if not BallOffer([base + w for w in A], coding, r).legal():
            raise IllegalOffer(f"step {n}: offered balls overlap or are too close", n, "geometry")
        b = tuple(p2.pick(t.steps, A))
        if b not in A:
            raise IllegalMove(f"step {n}: pick {b} not in the offer", n, "membership")
        t.steps.append((A, b))
        base = base + b
    if S is not None and steps:
        t.payoff = payoff_prefix(t, S)
    return t


def every_other_word(k: int, m: int = 2) -> Player1:
    """Offer words whose last symbol is even: an offer whose coded intervals are separated."""
    words = [w for w in itertools.product(range(m), repeat=k) if w[-1] % 2 == 0]
    return Player1(k, lambda h: words, f"every other k={k}")
