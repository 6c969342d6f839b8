"""Trees over finite alphabets, the prefix metrics d_m, and tri-state target oracles.

Positions are plain tuples of ints. Infinite plays are never materialised:
everything downstream works with finite prefixes plus an oracle that says
whether the cylinder of a prefix is inside, outside or straddles a target set.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Optional

Position = tuple


class Verdict(enum.Enum):
    INSIDE = "Inside"
    OUTSIDE = "Outside"
    BOUNDARY = "Boundary"

    def __str__(self) -> str:
        return self.value


INSIDE = Verdict.INSIDE
OUTSIDE = Verdict.OUTSIDE
BOUNDARY = Verdict.BOUNDARY


class Indistinguishable:
    """Returned by :func:`metric_distance` when one prefix extends the other."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Indistinguishable"


INDISTINGUISHABLE = Indistinguishable()


class ConstructionError(ValueError):
    pass


def check_position(p: Iterable[int], m: int) -> Position:
    p = tuple(p)
    if m < 2:
        raise ValueError(f"alphabet size must be >= 2, got {m}")
    for s in p:
        if not (0 <= s < m):
            raise ValueError(f"symbol {s} outside alphabet [0, {m})")
    return p


def is_prefix(p: Position, q: Position) -> bool:
    return len(p) <= len(q) and q[: len(p)] == p


def first_difference(x: Position, y: Position) -> Optional[int]:
    for i, (a, b) in enumerate(zip(x, y)):
        if a != b:
            return i
    return None


def metric_distance(x: Position, y: Position, m: int = 2, m_y: Optional[int] = None):
    """d_m between plays extending x and y, or INDISTINGUISHABLE.

    The distance is m**-n where n is the first index at which the prefixes
    disagree.  When one prefix extends the other no disagreement is visible
    yet and the caller has to deepen.
    """
    if m_y is not None and m_y != m:
        raise ValueError(f"mismatched alphabet sizes {m} and {m_y}")
    n = first_difference(x, y)
    if n is None:
        return INDISTINGUISHABLE
    return Fraction(1, m**n)


def cylinder_diameter(p: Position, m: int = 2) -> Fraction:
    return Fraction(1, m ** len(p))


# ---------------------------------------------------------------------------
# index sets


@dataclass(frozen=True)
class IndexSet:
    """A subset of the naturals given by a membership predicate.

    ``cofinite_from`` certifies that every n >= cofinite_from is a member;
    it is the only way a closed set F_M can ever report Inside.
    """

    member: Callable[[int], bool]
    claimed_density: Optional[Fraction] = None
    name: str = "custom"
    cofinite_from: Optional[int] = None
    spec: Optional[dict] = field(default=None, compare=False)

    def __contains__(self, n: int) -> bool:
        return n >= 0 and self.member(n)

    def count_below(self, n: int) -> int:
        return sum(1 for i in range(n) if self.member(i))

    def members_below(self, n: int) -> list:
        return [i for i in range(n) if self.member(i)]

    def __repr__(self) -> str:
        return f"IndexSet({self.name})"


def density_prefix(M: IndexSet, n: int) -> Fraction:
    """|M ∩ [0, n)| / n as an exact rational."""
    if n < 1:
        raise ValueError("density_prefix needs n >= 1")
    return Fraction(M.count_below(n), n)


def check_density_claim(M: IndexSet, horizon: int = 10_000, tol: float = 0.02) -> bool:
    """Empirical check of ``claimed_density`` at a finite horizon (not a proof)."""
    if M.claimed_density is None:
        return True
    return abs(float(density_prefix(M, horizon)) - float(M.claimed_density)) <= tol


def multiples(of: int) -> IndexSet:
    if of < 1:
        raise ValueError("multiples needs of >= 1")
    return IndexSet(
        lambda n: n % of == 0,
        Fraction(1, of),
        f"multiples of {of}",
        cofinite_from=0 if of == 1 else None,
        spec={"kind": "multiples", "of": of},
    )


def odds() -> IndexSet:
    return IndexSet(lambda n: n % 2 == 1, Fraction(1, 2), "odds", spec={"kind": "odds"})


def evens() -> IndexSet:
    return IndexSet(lambda n: n % 2 == 0, Fraction(1, 2), "evens", spec={"kind": "evens"})


def empty() -> IndexSet:
    return IndexSet(lambda n: False, Fraction(0), "empty", spec={"kind": "empty"})


def naturals() -> IndexSet:
    return IndexSet(lambda n: True, Fraction(1), "all", cofinite_from=0, spec={"kind": "all"})


def explicit(members: Iterable[int], name: str = "explicit") -> IndexSet:
    s = frozenset(members)
    return IndexSet(s.__contains__, Fraction(0), name, spec={"kind": "explicit", "members": sorted(s)})


def union(*sets: IndexSet) -> IndexSet:
    cof = [s.cofinite_from for s in sets if s.cofinite_from is not None]
    return IndexSet(
        lambda n: any(s.member(n) for s in sets),
        None,
        " ∪ ".join(s.name for s in sets),
        cofinite_from=min(cof) if cof else None,
    )


def minus(a: IndexSet, b: IndexSet) -> IndexSet:
    return IndexSet(lambda n: a.member(n) and not b.member(n), None, f"({a.name}) \\ ({b.name})")


def power_pairs(base: int = 4, start: int = 1) -> IndexSet:
    """{base**j, base**j + 1 : j >= start}; base must be even so base**j is even.

    Satisfies both requirements on the N of W_delta: consecutive (even, even+1)
    pairs and density zero.
    """
    if base % 2:
        raise ValueError("power_pairs needs an even base")

    def member(n: int) -> bool:
        k = n if n % 2 == 0 else n - 1
        if k < base**start:
            return False
        while k % base == 0 and k > 1:
            k //= base
        return k == 1

    return IndexSet(member, Fraction(0), f"{{{base}^j, {base}^j+1 : j>={start}}}",
                    spec={"kind": "power_pairs", "base": base, "start": start})


def beatty_evens(rate: Fraction, exclude: Optional[IndexSet] = None) -> IndexSet:
    """Even indices 2k selected when floor((k+1)*rate) > floor(k*rate), minus ``exclude``.

    Among the evens the selection has density ``rate``, so overall density
    rate/2 (removing a density-zero ``exclude`` does not change that).
    """
    rate = Fraction(rate)
    if not 0 <= rate <= 1:
        raise ValueError("rate must lie in [0, 1]")

    def member(n: int) -> bool:
        if n % 2:
            return False
        if exclude is not None and exclude.member(n):
            return False
        k = n // 2
        return ((k + 1) * rate).__floor__() > (k * rate).__floor__()

    return IndexSet(member, rate / 2, f"beatty evens rate {rate}")


def index_set_from_spec(spec: Any) -> IndexSet:
    """Build an IndexSet from its JSON form, e.g. {"kind": "multiples", "of": 3}."""
    if isinstance(spec, str):
        spec = {"kind": spec}
    kind = spec.get("kind")
    if kind == "multiples":
        return multiples(int(spec["of"]))
    if kind == "odds":
        return odds()
    if kind == "evens":
        return evens()
    if kind == "empty":
        return empty()
    if kind in ("all", "naturals"):
        return naturals()
    if kind == "explicit":
        return explicit(spec["members"])
    if kind == "power_pairs":
        return power_pairs(int(spec.get("base", 4)), int(spec.get("start", 1)))
    raise KeyError(f"unknown index set kind {kind!r}")


# ---------------------------------------------------------------------------
# trees


@dataclass(frozen=True)
class TreeOracle:
    arity: int
    contains: Callable[[Position], bool]
    name: str = "tree"
    complete: bool = False

    def actions(self, p: Position) -> list:
        """The available actions A_p(T)."""
        if self.complete:
            return list(range(self.arity))
        return [a for a in range(self.arity) if self.contains(p + (a,))]

    def positions(self, depth: int) -> Iterator[Position]:
        """All positions of exactly the given length, lexicographic order."""
        if self.complete:
            yield from itertools.product(range(self.arity), repeat=depth)
            return
        stack = [()]
        while stack:
            p = stack.pop()
            if len(p) == depth:
                yield p
                continue
            for a in reversed(self.actions(p)):
                stack.append(p + (a,))

    def subtree(self, p: Position) -> "TreeOracle":
        """T_p, as a tree of continuations."""
        return TreeOracle(self.arity, lambda q: self.contains(p + tuple(q)), f"{self.name}_{p}")


def complete_tree(m: int = 2) -> TreeOracle:
    if m < 2:
        raise ValueError("alphabet size must be >= 2")
    return TreeOracle(m, lambda p: all(0 <= a < m for a in p), f"complete {m}-adic", complete=True)


def binary_tree() -> TreeOracle:
    return complete_tree(2)


def zero_or_one_tree() -> TreeOracle:
    """The all-zero play plus every play starting with 1."""
    def contains(p):
        return len(p) == 0 or p[0] == 1 or all(a == 0 for a in p)

    return TreeOracle(2, lambda p: all(a in (0, 1) for a in p) and contains(p), "zero_or_one")


def forced_zero_tree() -> TreeOracle:
    """Player II is forced to play 0 at every odd stage."""
    return TreeOracle(
        2,
        lambda p: all(a in (0, 1) for a in p) and all(p[k] == 0 for k in range(1, len(p), 2)),
        "forced_zero",
    )


def make_example_trees() -> dict:
    return {
        "zero_or_one": zero_or_one_tree(),
        "forced_zero": forced_zero_tree(),
        "complete_2": complete_tree(2),
        "complete_3": complete_tree(3),
        "complete_4": complete_tree(4),
    }


def check_tree_axioms(tree: TreeOracle, depth: int) -> list:
    """Exhaustive prefix-closure and extensibility check; returns violations."""
    problems = []
    if not tree.contains(()):
        problems.append(("root", ()))
    for p in itertools.product(range(tree.arity), repeat=depth):
        if tree.contains(p):
            for i in range(len(p)):
                if not tree.contains(p[:i]):
                    problems.append(("prefix-closure", p))
                    break
    for n in range(depth):
        for p in tree.positions(n):
            if not tree.actions(p):
                problems.append(("extensibility", p))
    return problems


# ---------------------------------------------------------------------------
# target oracles


Stepper = Callable[[Any, int, int], tuple]


@dataclass(frozen=True)
class TargetOracle:
    """A subset of the canopy of ``tree`` described through its cylinders.

    ``verdict(p)`` is the contract.  ``step``/``initial`` are an optional
    incremental form used by traversals: ``step(state, depth, a)`` returns the
    state and verdict of the child ``p + (a,)`` where ``depth == len(p)``.  It
    is only ever called on parents that are not Outside.
    """

    tree: TreeOracle
    verdict_fn: Callable[[Position], Verdict]
    name: str = "target"
    step: Optional[Stepper] = None
    initial: Any = None
    spec: Optional[dict] = field(default=None, compare=False)

    def verdict(self, p: Position) -> Verdict:
        return self.verdict_fn(tuple(p))

    def root(self) -> tuple:
        if self.step is None:
            return (), self.verdict(())
        return self.initial, self.verdict(())

    def child(self, state: Any, depth: int, a: int) -> tuple:
        if self.step is None:
            q = state + (a,)
            return q, self.verdict(q)
        return self.step(state, depth, a)

    def __repr__(self) -> str:
        return f"TargetOracle({self.name})"


def full_canopy(tree: Optional[TreeOracle] = None) -> TargetOracle:
    tree = tree or binary_tree()
    return TargetOracle(tree, lambda p: INSIDE, "full canopy",
                        step=lambda s, d, a: (None, INSIDE), spec={"set": "full"})


def empty_target(tree: Optional[TreeOracle] = None) -> TargetOracle:
    tree = tree or binary_tree()
    return TargetOracle(tree, lambda p: OUTSIDE, "empty set", spec={"set": "empty"})


def cylinder_target(prefix: Iterable[int], tree: Optional[TreeOracle] = None) -> TargetOracle:
    """The clopen cylinder of ``prefix``."""
    prefix = tuple(prefix)
    tree = tree or binary_tree()
    k = len(prefix)

    def verdict(p):
        n = min(len(p), k)
        if p[:n] != prefix[:n]:
            return OUTSIDE
        return INSIDE if len(p) >= k else BOUNDARY

    def step(state, depth, a):
        if depth < k and prefix[depth] != a:
            return None, OUTSIDE
        return None, INSIDE if depth + 1 >= k else BOUNDARY

    return TargetOracle(tree, verdict, f"cylinder {prefix}", step=step,
                        spec={"set": "cylinder", "prefix": list(prefix)})


def make_FM(M: IndexSet, m: int = 2) -> TargetOracle:
    """F_M: plays with a_n = 0 at every index n outside M."""

    def verdict(p):
        for i, a in enumerate(p):
            if a != 0 and not M.member(i):
                return OUTSIDE
        if M.cofinite_from is not None and len(p) >= M.cofinite_from:
            return INSIDE
        return BOUNDARY

    cof = M.cofinite_from

    def step(state, depth, a):
        if a != 0 and not M.member(depth):
            return None, OUTSIDE
        if cof is not None and depth + 1 >= cof:
            return None, INSIDE
        return None, BOUNDARY

    spec = {"set": "F_M", "M": M.spec} if M.spec is not None else None
    return TargetOracle(complete_tree(m), verdict, f"F_M[{M.name}]", step=step, spec=spec)


def make_Y0() -> TargetOracle:
    """[[Y^0]]: every even coordinate is 0."""
    t = make_FM(odds())
    return TargetOracle(t.tree, t.verdict_fn, "Y0", t.step, t.initial, {"set": "Y0"})


def _dyadic_index(p: Position) -> int:
    k = 0
    for a in p:
        k = 2 * k + a
    return k


def make_cantor_WC(max_digits: int = 64) -> TargetOracle:
    """W_C: binary plays whose value lies in the base-5 {1,3} Cantor set.

    The cylinder of p is the closed dyadic interval [k/2^n, (k+1)/2^n]; its
    verdict comes from the exact interval oracle in :mod:`hdgames.schmidt`.
    """
    from .schmidt import cantor_interval_verdict_scaled

    def verdict(p):
        n = len(p)
        k = _dyadic_index(p)
        return cantor_interval_verdict_scaled(4 * k, 4 * (k + 1), 4 << n, max_digits)

    def step(state, depth, a):
        k = 2 * state + a
        return k, cantor_interval_verdict_scaled(4 * k, 4 * (k + 1), 4 << (depth + 1), max_digits)

    return TargetOracle(binary_tree(), verdict, "W_C", step=step, initial=0,
                        spec={"set": "cantor_WC"})


def _subsequence(p: Position, idx: list) -> Position:
    return tuple(p[i] for i in idx if i < len(p))


def check_N(N: IndexSet, horizon: int = 4096) -> None:
    """N must come in pairs (even n, n+1) and be density-zero (checked at the horizon)."""
    members = N.members_below(horizon + 1)
    for n in members:
        if n % 2 == 0 and n + 1 <= horizon and not N.member(n + 1):
            raise ConstructionError(f"N contains even {n} but not {n + 1}")
        if n % 2 == 1 and not N.member(n - 1):
            raise ConstructionError(f"N contains odd {n} without {n - 1}")
    if horizon >= 1024 and len(members) / (horizon + 1) > 0.05:
        raise ConstructionError("N does not look density-zero at the checked horizon")


def default_N() -> IndexSet:
    return power_pairs(4, 1)


def default_M(delta: Fraction, N: Optional[IndexSet] = None) -> IndexSet:
    """Even indices outside N with density delta - 1/2."""
    delta = Fraction(delta)
    if not Fraction(1, 2) <= delta <= 1:
        raise ValueError("delta must lie in [1/2, 1]")
    N = N or default_N()
    M = beatty_evens(2 * delta - 1, exclude=N)
    return IndexSet(M.member, delta - Fraction(1, 2), f"default M(delta={delta})")


def make_Wdelta(W: TargetOracle, N: IndexSet, M: IndexSet, horizon: int = 4096) -> TargetOracle:
    """W_delta: zeros at even stages outside M ∪ N, and the N-subsequence lies in W."""
    check_N(N, horizon)
    for i in range(horizon):
        if M.member(i):
            if i % 2:
                raise ConstructionError(f"M contains odd index {i}")
            if N.member(i):
                raise ConstructionError(f"M intersects N at {i}")

    n_idx = N.members_below(horizon)

    def zero_violation(p) -> bool:
        for i in range(0, len(p), 2):
            if p[i] != 0 and not M.member(i) and not N.member(i):
                return True
        return False

    def verdict(p):
        if len(p) > horizon:
            raise ValueError(f"W_delta built with horizon {horizon}, got depth {len(p)}")
        if zero_violation(p):
            return OUTSIDE
        v = W.verdict(_subsequence(p, n_idx))
        if v is OUTSIDE:
            return OUTSIDE
        # the zero constraints never run out (evens minus a density < 1/2 set)
        return BOUNDARY

    pos_in_N = {n: k for k, n in enumerate(n_idx)}

    def step(state, depth, a):
        wstate, wv = state
        k = pos_in_N.get(depth)
        if k is not None:
            if wv is OUTSIDE:
                return state, OUTSIDE
            wstate, wv = W.child(wstate, k, a)
            if wv is OUTSIDE:
                return (wstate, wv), OUTSIDE
        elif depth % 2 == 0 and a != 0 and not M.member(depth):
            return state, OUTSIDE
        return (wstate, wv), BOUNDARY

    return TargetOracle(binary_tree(), verdict, f"W_delta[{W.name}]", step=step,
                        initial=W.root())


def wdelta_bounds(N: IndexSet, M: IndexSet) -> tuple:
    """(F_K, F_L) with K = odds ∪ M ∪ N and L = (odds ∪ M) minus N.

    F_L sits inside W_delta and W_delta inside F_K whenever the all-zero play
    lies in W, so their dimensions sandwich that of W_delta.
    """
    K = IndexSet(lambda n: n % 2 == 1 or M.member(n) or N.member(n), None, "K")
    L = IndexSet(lambda n: (n % 2 == 1 or M.member(n)) and not N.member(n), None, "L")
    FK, FL = make_FM(K), make_FM(L)
    return (TargetOracle(FK.tree, FK.verdict_fn, "F_K", FK.step, FK.initial),
            TargetOracle(FL.tree, FL.verdict_fn, "F_L", FL.step, FL.initial))


def verdict_along(S: TargetOracle, p: Position) -> list:
    """Verdicts of every prefix of p computed incrementally (len(p)+1 entries)."""
    state, v = S.root()
    out = [v]
    for i, a in enumerate(p):
        if v is OUTSIDE:
            out.append(OUTSIDE)
            continue
        state, v = S.child(state, i, a)
        out.append(v)
    return out
