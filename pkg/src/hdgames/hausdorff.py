"""Finite-resolution Hausdorff machinery on canopies.

Box counts, log-slope dimension estimates, the optimal cylinder-cover cost
with exact radical arithmetic, mass-distribution certificates and the sup-norm
packing numbers used by the doubling lemmas.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

import mpmath
import numpy as np

from .canopy import OUTSIDE, Position, TargetOracle, TreeOracle


class EmptyTarget(ValueError):
    pass


# ---------------------------------------------------------------------------
# box counting


def _level_frontier(S: TargetOracle):
    """Yield {(state, verdict): multiplicity} level by level for complete trees.

    The children of a node depend only on (state, depth), so equal states are
    merged.  Outside nodes are counted but never expanded.
    """
    state, v = S.root()
    frontier = {(_key(state), v): (state, 1)}
    depth = 0
    while True:
        yield depth, frontier
        nxt: dict = {}
        arity = S.tree.arity
        for (_, v), (state, mult) in frontier.items():
            if v is OUTSIDE:
                continue
            for a in range(arity):
                cs, cv = S.child(state, depth, a)
                k = (_key(cs), cv)
                if k in nxt:
                    nxt[k] = (nxt[k][0], nxt[k][1] + mult)
                else:
                    nxt[k] = (cs, mult)
        frontier = nxt
        depth += 1


def _key(state):
    try:
        hash(state)
        return state
    except TypeError:
        return id(state)


def box_counts(S: TargetOracle, n_max: int) -> list:
    """[N_0, ..., N_{n_max}]: depth-n positions of the tree whose verdict is not Outside."""
    if n_max < 0:
        raise ValueError("depth must be >= 0")
    if S.tree.complete:
        counts = []
        for depth, frontier in _level_frontier(S):
            counts.append(sum(mult for (_, v), (_, mult) in frontier.items() if v is not OUTSIDE))
            if depth == n_max:
                return counts
    counts = [0] * (n_max + 1)
    state, v = S.root()
    if v is OUTSIDE:
        return counts
    stack = [((), state, v)]
    while stack:
        p, state, v = stack.pop()
        counts[len(p)] += 1
        if len(p) == n_max:
            continue
        for a in S.tree.actions(p):
            cs, cv = S.child(state, len(p), a)
            if cv is not OUTSIDE:
                stack.append((p + (a,), cs, cv))
    return counts


def box_count(S: TargetOracle, n: int) -> int:
    return box_counts(S, n)[n]


@dataclass
class DimensionEstimate:
    counts: list
    depths: tuple
    slope: float
    intercept: float
    residual: float
    m: int
    monotone_ok: bool
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "counts": self.counts,
            "depths": list(self.depths),
            "slope": self.slope,
            "residual": self.residual,
            "m": self.m,
            "monotone_ok": self.monotone_ok,
            **self.diagnostics,
        }


def dim_estimate(S: TargetOracle, n_min: int, n_max: int, endpoints: bool = False) -> DimensionEstimate:
    """Least-squares slope of log_m N_n against n over [n_min, n_max]."""
    if not 0 <= n_min < n_max:
        raise ValueError("need 0 <= n_min < n_max")
    m = S.tree.arity
    all_counts = box_counts(S, n_max)
    counts = all_counts[n_min:]
    if counts[0] == 0:
        raise EmptyTarget(f"{S.name} is empty at depth {n_min}")
    ns = np.arange(n_min, n_max + 1, dtype=float)
    logs = np.log(np.array(counts, dtype=float)) / math.log(m)
    if endpoints:
        slope = (logs[-1] - logs[0]) / (n_max - n_min)
        intercept = logs[0] - slope * n_min
    else:
        slope, intercept = np.polyfit(ns, logs, 1)
    resid = float(np.sqrt(np.mean((logs - (slope * ns + intercept)) ** 2)))
    submult = all(all_counts[i + 1] <= m * all_counts[i] for i in range(len(all_counts) - 1))
    nondecr = all(all_counts[i + 1] >= all_counts[i] for i in range(len(all_counts) - 1))
    return DimensionEstimate(counts, (n_min, n_max), float(slope), float(intercept), resid, m,
                             submult, {"non_decreasing": nondecr, "fit": "endpoints" if endpoints else "lstsq"})


# ---------------------------------------------------------------------------
# exact arithmetic in Q(r^(1/q))


def _integer_root(n: int, k: int) -> Optional[int]:
    r = round(n ** (1.0 / k))
    for c in (r - 1, r, r + 1):
        if c > 0 and c**k == n:
            return c
    return None


def perfect_power_base(m: int) -> tuple:
    """(r, e) with m = r**e and r not itself a perfect power."""
    for e in range(int(math.log2(m)), 1, -1):
        r = _integer_root(m, e)
        if r is not None:
            return r, e
    return m, 1


@dataclass(frozen=True)
class RadicalSum:
    """sum_j coeffs[j] * r^(-j/q) with rational coefficients, j < q.

    x^q - 1/r is irreducible when r is not a perfect power, so the powers of
    r^(-1/q) below q are linearly independent and equality is coefficientwise.
    """

    r: int
    q: int
    coeffs: tuple

    @classmethod
    def zero(cls, r: int, q: int) -> "RadicalSum":
        return cls(r, q, (Fraction(0),) * q)

    @classmethod
    def power(cls, r: int, q: int, t: int) -> "RadicalSum":
        """r^(-t/q)."""
        c = [Fraction(0)] * q
        c[t % q] = Fraction(1, r ** (t // q)) if t >= 0 else Fraction(r ** (-(t // q)))
        return cls(r, q, tuple(c))

    def lift(self, q: int) -> "RadicalSum":
        """The same number written over r^(-1/q); q must be a multiple of self.q."""
        if q % self.q:
            raise ValueError("can only lift to a multiple of the current degree")
        f = q // self.q
        c = [Fraction(0)] * q
        for j, v in enumerate(self.coeffs):
            c[j * f] = v
        return RadicalSum(self.r, q, tuple(c))

    def _align(self, other: "RadicalSum") -> tuple:
        if self.r != other.r:
            raise ValueError("radical sums over different bases")
        if self.q == other.q:
            return self, other
        q = math.lcm(self.q, other.q)
        return self.lift(q), other.lift(q)

    def __add__(self, other: "RadicalSum") -> "RadicalSum":
        a, b = self._align(other)
        return RadicalSum(a.r, a.q, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other: "RadicalSum") -> "RadicalSum":
        a, b = self._align(other)
        return RadicalSum(a.r, a.q, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RadicalSum):
            return NotImplemented
        return self.r == other.r and (self - other).is_zero()

    def __hash__(self) -> int:
        q = self.q
        trimmed = self
        for p in range(1, q + 1):
            if q % p == 0 and all(c == 0 for j, c in enumerate(self.coeffs) if j % (q // p)):
                trimmed = RadicalSum(self.r, p, tuple(self.coeffs[j] for j in range(0, q, q // p)))
                break
        return hash((trimmed.r, trimmed.q, trimmed.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        for dps in (30, 60, 120, 240, 480):
            with mpmath.workdps(dps):
                v = self.to_mpf()
                if abs(v) > mpmath.mpf(10) ** (-(dps - 10)):
                    return 1 if v > 0 else -1
        raise ArithmeticError("sign undecided at 480 digits")

    def __lt__(self, other: "RadicalSum") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "RadicalSum") -> bool:
        return (self - other).sign() <= 0

    def to_mpf(self):
        s = mpmath.root(mpmath.mpf(self.r), self.q) ** -1
        return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * s**j for j, c in enumerate(self.coeffs))

    def __float__(self) -> float:
        with mpmath.workdps(40):
            return float(self.to_mpf())

    def rational(self) -> Optional[Fraction]:
        if all(c == 0 for c in self.coeffs[1:]):
            return self.coeffs[0]
        return None

    def expr(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = str(c)
            if j == 0:
                terms.append(cs)
            else:
                rad = f"{self.r}^(-{j}/{self.q})" if j != 1 or self.q != 1 else f"1/{self.r}"
                g = math.gcd(j, self.q)
                if g > 1:
                    rad = f"{self.r}^(-{j // g}/{self.q // g})"
                terms.append(rad if c == 1 else f"{cs}*{rad}")
        return " + ".join(terms) if terms else "0"

    def to_sympy(self):
        import sympy

        s = sympy.Integer(self.r) ** sympy.Rational(-1, self.q)
        return sympy.nsimplify(sum(sympy.Rational(c.numerator, c.denominator) * s**j
                                   for j, c in enumerate(self.coeffs)))


@dataclass
class MeasureResult:
    value: Union[RadicalSum, float]
    delta: Union[Fraction, float]
    depth: int

    @property
    def exact(self) -> bool:
        return isinstance(self.value, RadicalSum)

    def __float__(self) -> float:
        return float(self.value)

    def expr(self) -> str:
        return self.value.expr() if self.exact else repr(self.value)

    def to_json(self) -> dict:
        return {"exact": self.expr(), "float": float(self), "delta": str(self.delta), "depth": self.depth}


def _diam_power_factory(m: int, delta):
    """Returns (pow(len) -> cost of one cylinder at that length, zero, add, less)."""
    if isinstance(delta, float):
        return (lambda n: float(m) ** (-n * delta), 0.0)
    delta = Fraction(delta)
    r, e = perfect_power_base(m)
    a, b = delta.numerator, delta.denominator
    q = b // math.gcd(e * a, b)
    step = e * a // math.gcd(e * a, b)
    return (lambda n: RadicalSum.power(r, q, n * step), RadicalSum.zero(r, q))


def measure_estimate(S: TargetOracle, delta, D: int) -> MeasureResult:
    """Optimal cost of a cover of S by cylinders of depth <= D.

    cost(p) = 0 if p is Outside, diam(p)^delta at depth D, otherwise the
    smaller of diam(p)^delta and the sum over children.
    """
    if D < 1:
        raise ValueError("D must be >= 1")
    if isinstance(delta, int):
        delta = Fraction(delta)
    if delta < 0:
        raise ValueError("delta must be >= 0")
    m = S.tree.arity
    power, zero = _diam_power_factory(m, delta)
    pw = [power(n) for n in range(D + 1)]
    memo: dict = {}

    def cost_state(state, v, depth, p):
        if v is OUTSIDE:
            return zero
        if depth == D:
            return pw[depth]
        key = (_key(state), v, depth) if S.tree.complete else None
        if key is not None and key in memo:
            return memo[key]
        total = zero
        actions = range(m) if S.tree.complete else S.tree.actions(p)
        for a in actions:
            cs, cv = S.child(state, depth, a)
            total = total + cost_state(cs, cv, depth + 1, p + (a,))
        best = total if total < pw[depth] else pw[depth]
        if key is not None:
            memo[key] = best
        return best

    state, v = S.root()
    return MeasureResult(cost_state(state, v, 0, ()), delta, D)


def antichain_cost(S: TargetOracle, cover: Sequence[Position], delta) -> Union[RadicalSum, float]:
    """Sum of diam^delta over the cylinders of an antichain that are not Outside."""
    power, zero = _diam_power_factory(S.tree.arity, delta if not isinstance(delta, int) else Fraction(delta))
    total = zero
    for p in cover:
        if S.verdict(p) is not OUTSIDE:
            total = total + power(len(p))
    return total


def random_antichain(m: int, D: int, rng, stop_prob: float = 0.3) -> list:
    """A random maximal antichain of the complete m-ary tree with leaves at depth <= D."""
    out = []
    stack = [()]
    while stack:
        p = stack.pop()
        if len(p) == D or (len(p) > 0 and rng.random() < stop_prob):
            out.append(p)
        else:
            stack.extend(p + (a,) for a in range(m))
    return out


# ---------------------------------------------------------------------------
# measures and the mass distribution principle


@dataclass(frozen=True)
class CylinderMeasure:
    """A probability measure on the canopy given by child weights at each node."""

    tree: TreeOracle
    weights: Callable[[Position], dict]
    name: str = "measure"
    survivor_of: Optional[TargetOracle] = field(default=None, compare=False)

    def mass(self, p: Position) -> Fraction:
        w = Fraction(1)
        for i in range(len(p)):
            w *= self.weights(p[:i]).get(p[i], Fraction(0))
            if w == 0:
                break
        return w

    def check_additivity(self, depth: int) -> bool:
        for n in range(depth):
            for p in self.tree.positions(n):
                if sum(self.mass(p + (a,)) for a in self.tree.actions(p)) != self.mass(p):
                    return False
        return True


def uniform_on(S: TargetOracle) -> CylinderMeasure:
    """Split mass equally among the children that are not Outside."""

    def weights(p):
        acts = S.tree.actions(p)
        alive = [a for a in acts if S.verdict(p + (a,)) is not OUTSIDE] or acts
        return {a: Fraction(1, len(alive)) for a in alive}

    return CylinderMeasure(S.tree, weights, f"uniform on {S.name}", survivor_of=S)


def uniform_measure(tree: TreeOracle) -> CylinderMeasure:
    def weights(p):
        acts = tree.actions(p)
        return {a: Fraction(1, len(acts)) for a in acts}

    return CylinderMeasure(tree, weights, "uniform")


@dataclass
class MassCertificate:
    holds: bool
    delta: Fraction
    C: Fraction
    depth: int
    checked: int
    failure: Optional[tuple] = None

    @property
    def message(self) -> str:
        if self.holds:
            return f"dim >= {self.delta} certified to resolution {self.depth}"
        return f"mass bound fails at {self.failure}"

    def to_json(self) -> dict:
        return {"holds": self.holds, "delta": str(self.delta), "C": str(self.C), "depth": self.depth,
                "checked": self.checked, "message": self.message,
                "failure": list(self.failure[0]) if self.failure else None}


def _exact(x) -> Fraction:
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


def mass_bound_certificate(mu: CylinderMeasure, S: TargetOracle, delta, C, D: int) -> MassCertificate:
    """Check mu(p) <= C * m^(-len(p) * delta) on every non-Outside p with len(p) <= D.

    The comparison is exact: with delta = a/b both sides are raised to the b-th
    power.  When mu is the survivor-uniform measure of S the traversal merges
    nodes with equal (state, verdict, mass).
    """
    delta, C = _exact(delta), _exact(C)
    if C <= 0:
        raise ValueError("C must be positive")
    m = S.tree.arity
    a, b = delta.numerator, delta.denominator
    Cb = C**b

    def ok(mass: Fraction, n: int) -> bool:
        # mass^b <= C^b * m^(-n a)
        return mass**b * Fraction(m) ** (n * a) <= Cb

    checked = 0
    if mu.survivor_of is S and S.tree.complete:
        state, v = S.root()
        frontier = {(_key(state), v, Fraction(1)): state} if v is not OUTSIDE else {}
        for n in range(D + 1):
            nxt = {}
            for (_, v, mass), state in frontier.items():
                checked += 1
                if not ok(mass, n):
                    return MassCertificate(False, delta, C, D, checked, ((), n, str(mass)))
                if n == D:
                    continue
                kids = [(a_, *S.child(state, n, a_)) for a_ in range(m)]
                alive = [k for k in kids if k[2] is not OUTSIDE]
                share = mass / len(alive) if alive else Fraction(0)
                for _, cs, cv in alive:
                    nxt[(_key(cs), cv, share)] = cs
            frontier = nxt
        return MassCertificate(True, delta, C, D, checked)

    stack = [((), Fraction(1))]
    while stack:
        p, mass = stack.pop()
        if S.verdict(p) is OUTSIDE:
            continue
        checked += 1
        if not ok(mass, len(p)):
            return MassCertificate(False, delta, C, D, checked, (p, len(p), str(mass)))
        if len(p) == D:
            continue
        w = mu.weights(p)
        for a_ in S.tree.actions(p):
            stack.append((p + (a_,), mass * w.get(a_, Fraction(0))))
    return MassCertificate(True, delta, C, D, checked)


# ---------------------------------------------------------------------------
# packing in sup-norm models


def packing_number_linf(d: int, R, r) -> int:
    """Largest number of radius-r sup-norm balls with disjoint interiors inside a radius-R one.

    A family of side-2r cubes with disjoint interiors inside a side-2R cube
    has at most floor(R/r) members along any axis line, and the lattice
    arrangement attains floor(R/r)^d.
    """
    R, r = Fraction(R), Fraction(r)
    if not (0 < r <= R):
        raise ValueError("need 0 < r <= R")
    k = R / r
    return (k.numerator // k.denominator) ** d


def half_radius_cover(d: int) -> list:
    """2^d balls of radius 1/2 covering the sup-norm unit ball centred at 0."""
    from .schmidt import Ball

    half = Fraction(1, 2)
    return [Ball(tuple(s * half for s in signs), half) for signs in itertools.product((-1, 1), repeat=d)]


@dataclass
class PackingReport:
    d: int
    pack: int
    bound: int
    doubling: int
    cover_ok: bool

    @property
    def passed(self) -> bool:
        return self.cover_ok and self.pack <= self.bound

    def to_json(self) -> dict:
        return {"d": self.d, "pack": self.pack, "bound": self.bound, "D": self.doubling,
                "cover_ok": self.cover_ok, "pass": self.passed}


def verify_packing_lemma(d: int) -> PackingReport:
    """Packing number of B(x, 3r) at radius r against D^3 with D = 2^d."""
    from .schmidt import Ball, check_partition

    if d not in (1, 2, 3):
        raise ValueError("d must be 1, 2 or 3")
    pack = packing_number_linf(d, 3, 1)
    cover = half_radius_cover(d)
    unit = Ball(tuple(Fraction(0) for _ in range(d)), Fraction(1))
    D = len(cover)
    return PackingReport(d, pack, D**3, D, check_partition(unit, cover) and D == 2**d)
