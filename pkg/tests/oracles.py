"""Independent brute-force oracles used to check the library.

Nothing here imports the code under test beyond plain data types; every
function recomputes its answer from definitions by enumeration.
"""

import itertools
from fractions import Fraction

import networkx as nx


def cantor_basic_intervals(depth):
    """Level-`depth` basic intervals of the base-5 {1,3} Cantor set."""
    out = []
    for digits in itertools.product((1, 3), repeat=depth):
        v = sum(Fraction(d, 5 ** (i + 1)) for i, d in enumerate(digits))
        s = Fraction(1, 5**depth)
        out.append((v + s / 4, v + 3 * s / 4))
    return out


def cantor_meets(lo, hi, depth=10):
    """True/False when decidable by level-`depth` basic intervals, else None.

    Misses every basic interval: disjoint.  Contains an endpoint of one (all
    endpoints lie in the set): meets.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    touched = False
    for a, b in cantor_basic_intervals(depth):
        if b < lo or a > hi:
            continue
        touched = True
        if lo <= a <= hi or lo <= b <= hi:
            return True
    return None if touched else False


def fm_count(member, n):
    """Words of length n with zeros off M, by enumeration."""
    return sum(1 for w in itertools.product((0, 1), repeat=n)
               if all(a == 0 or member(i) for i, a in enumerate(w)))


def first_diff_distance(x, y, m):
    for i, (a, b) in enumerate(zip(x, y)):
        if a != b:
            return Fraction(1, m**i)
    return None


def linf_packing_on_grid(d, R, r, step):
    """Largest family of radius-r cubes with centres on a grid, disjoint interiors, inside the radius-R cube."""
    R, r, step = Fraction(R), Fraction(r), Fraction(step)
    k = int((R - r) / step)
    axis = [-(R - r) + i * step for i in range(2 * k + 1)]
    pts = list(itertools.product(axis, repeat=d))
    g = nx.Graph()
    g.add_nodes_from(range(len(pts)))
    for i, j in itertools.combinations(range(len(pts)), 2):
        if max(abs(a - b) for a, b in zip(pts[i], pts[j])) >= 2 * r:
            g.add_edge(i, j)
    return max(len(c) for c in nx.find_cliques(g))


def minimax(tree_actions, verdict, p, depth, boundary_wins):
    """Plain recursive game value on explicit positions (True: Player I wins)."""
    v = verdict(p)
    if v == "Outside":
        return False
    if v == "Inside":
        return True
    if len(p) == depth:
        return boundary_wins
    kids = [minimax(tree_actions, verdict, p + (a,), depth, boundary_wins) for a in tree_actions(p)]
    return any(kids) if len(p) % 2 == 0 else all(kids)


def all_antichain_covers(m, D, p=()):
    """Every maximal antichain of the complete m-ary tree below p with leaves at depth <= D."""
    if len(p) == D:
        yield [p]
        return
    yield [p]
    subs = [list(all_antichain_covers(m, D, p + (a,))) for a in range(m)]
    for combo in itertools.product(*subs):
        yield [q for part in combo for q in part]
