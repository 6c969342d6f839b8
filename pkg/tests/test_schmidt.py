import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hdgames import schmidt as sc
from hdgames.canopy import BOUNDARY, INSIDE, OUTSIDE
from hdgames.errors import IllegalMove

import oracles


# balls and codings


def test_ball_basics():
    b = sc.ball_from_bounds([(F(0), F(1, 2))])
    assert b.center == (F(1, 4),) and b.radius == F(1, 4)
    assert b.contains(sc.coding_interval((0, 1)))
    assert not b.contains(sc.coding_interval((1,)))
    assert b.interiors_disjoint(sc.coding_interval((1,)))
    assert sc.Ball.from_json(b.to_json()) == b
    with pytest.raises(ValueError):
        sc.Ball((F(0),), F(0))


def test_coding_examples():
    assert sc.coding_interval(()).bounds() == [(0, 1)]
    assert sc.coding_interval((1, 0)).bounds() == [(F(1, 2), F(3, 4))]
    assert sc.coding_square((3,)).bounds() == [(F(1, 2), 1), (F(1, 2), 1)]
    assert sc.coding_quaternary_interval((1, 0)).bounds() == [(F(1, 4), F(5, 16))]


@given(st.lists(st.integers(0, 1), max_size=16))
def test_coding_interval_by_bisection(p):
    lo, hi = F(0), F(1)
    for a in p:
        mid = (lo + hi) / 2
        lo, hi = (lo, mid) if a == 0 else (mid, hi)
    assert sc.coding_interval(p).bounds() == [(lo, hi)]


def test_quaternary_codings_nested_depth_8():
    for n in range(1, 9):
        for p in itertools.product(range(4), repeat=min(n, 4)):
            p = p + (0,) * (n - len(p))
            qi, qp = sc.coding_quaternary_interval(p), sc.coding_quaternary_interval(p[:-1])
            sq, sp = sc.coding_square(p), sc.coding_square(p[:-1])
            assert 2 * qi.radius == F(1, 4**n) and 2 * sq.radius == F(1, 2**n)
            assert qp.contains(qi) and sp.contains(sq)


def test_dyadic_value_is_lipschitz():
    words = list(itertools.product((0, 1), repeat=12))[::7]
    for x, y in itertools.combinations(words, 2):
        d = oracles.first_diff_distance(x, y, 2)
        assert abs(sc.interval_value(x) - sc.interval_value(y)) <= d


# m-adic cubes


def test_madic_children_examples():
    kids = sc.madic_children(sc.MAdicCube(2, 0, (0,)))
    assert [c.closure().bounds() for c in kids] == [[(0, F(1, 2))], [(F(1, 2), 1)]]
    assert len(sc.madic_children(sc.MAdicCube(2, 0, (0, 0)))) == 4
    assert len(sc.madic_children(sc.MAdicCube(3, 0, (0,)))) == 3


@pytest.mark.parametrize("m,d", [(2, 1), (2, 2), (3, 1), (3, 2), (2, 3)])
def test_madic_partition_all_levels(m, d):
    frontier = [sc.MAdicCube(m, 0, (0,) * d)]
    for _ in range(3):
        nxt = []
        for c in frontier:
            kids = sc.madic_children(c)
            assert len(kids) == m**d
            assert sc.check_partition(c.closure(), [k.closure() for k in kids])
            nxt.extend(kids)
        frontier = nxt[:64]


@given(st.fractions(0, 1).filter(lambda x: x < 1), st.integers(0, 6))
def test_cube_containing(x, level):
    c = sc.cube_containing(3, level, (x,))
    assert c.contains_point((x,))


def test_check_partition_detects_gap():
    parent = sc.Ball((F(1, 2),), F(1, 2))
    assert not sc.check_partition(parent, [sc.coding_interval((0,))])


# Cantor oracle


def test_cantor_oracle_examples():
    assert sc.cantor_interval_oracle(0, F(1, 5)) is OUTSIDE
    assert sc.cantor_interval_oracle(0, 1) is BOUNDARY
    assert sc.cantor_interval_oracle(F(1, 4), F(1, 4)) is INSIDE
    assert sc.cantor_interval_oracle(F(1, 2), F(1, 2)) is OUTSIDE
    with pytest.raises(ValueError):
        sc.cantor_interval_oracle(F(1, 2), F(1, 3))


@given(st.fractions(0, 1, max_denominator=400), st.fractions(0, 1, max_denominator=400))
def test_cantor_oracle_against_digit_enumeration(a, b):
    lo, hi = min(a, b), max(a, b)
    brute = oracles.cantor_meets(lo, hi, depth=7)
    v = sc.cantor_interval_oracle(lo, hi)
    if brute is False:
        assert v is OUTSIDE
    if brute is True:
        assert v is not OUTSIDE


def test_cantor_points_with_periodic_digits():
    # 0.(13)_5 = 8/24 = 1/3 and 0.(3)_5 = 3/4 both lie in C
    assert sc.cantor_interval_oracle(F(1, 3), F(1, 3)) is INSIDE
    assert sc.cantor_interval_oracle(F(3, 4), F(3, 4)) is INSIDE


# play


def test_radius_sequence():
    g = sc.lattice_subgame(F(1, 3), F(1, 2))
    t = sc.play_schmidt(g, sc.smallest_index, sc.smallest_index, 4)
    assert [b.radius for b in t.balls] == [F(1, 2), F(1, 6), F(1, 12), F(1, 36), F(1, 72)]
    assert [b.radius / t.balls[0].radius for b in t.balls[1:4]] == [F(1, 3), F(1, 6), F(1, 18)]


def test_dyadic_always_left():
    t = sc.play_schmidt(sc.dyadic_interval_game(), sc.smallest_index, sc.smallest_index, 10)
    assert t.balls[-1].bounds() == [(0, F(1, 2**10))]
    assert sc.project_point(t.balls) == ((F(1, 2**11),), F(1, 2**11))


def test_project_point_single_and_errors():
    b = sc.coding_interval((1,))
    assert sc.project_point([b]) == (b.center, b.radius)
    with pytest.raises(ValueError):
        sc.project_point([sc.coding_interval((0,)), sc.coding_interval((1, 0))])
    with pytest.raises(ValueError):
        sc.project_point([])


def test_project_point_quaternary():
    # the word 2,0 codes [1/2, 9/16]
    q = sc.coding_quaternary_interval((2, 0))
    assert q.bounds() == [(F(1, 2), F(9, 16))]
    assert q.contains_point((F(1, 2),))


@pytest.mark.parametrize("seed", range(20))
def test_madic_nesting_seeded(seed):
    g = sc.madic_cube_game(2, 2)
    t = sc.play_schmidt(g, sc.seeded_random_strategy(seed), sc.seeded_random_strategy(seed + 99), 12)
    sc.check_transcript(g, t.balls)
    for a, b in zip(t.balls, t.balls[1:]):
        assert all(abs(x - y) <= a.radius - b.radius for x, y in zip(a.center, b.center))


def test_ragged_ratio_tiling_stays_inside():
    g = sc.lattice_subgame(F(1, 3), F(2, 5))
    t = sc.play_schmidt(g, sc.seeded_random_strategy(1), sc.seeded_random_strategy(2), 10)
    sc.check_transcript(g, t.balls)


def test_illegal_moves():
    g = sc.dyadic_interval_game()
    with pytest.raises(IllegalMove) as e:
        sc.play_schmidt(g, lambda h, o: 7, sc.smallest_index, 2)
    assert e.value.constraint == "collection"
    big = lambda h, o: sc.Ball((F(1, 2),), F(1, 2)) if h else 0
    with pytest.raises(IllegalMove) as e:
        sc.play_schmidt(g, big, sc.smallest_index, 2)
    assert e.value.constraint == "radius"
    outside = lambda h, o: sc.Ball((F(7, 8),), F(1, 8)) if len(h) == 2 else 0
    with pytest.raises(IllegalMove) as e:
        sc.play_schmidt(g, sc.smallest_index, outside, 2)
    assert e.value.constraint == "containment"


def test_check_transcript_rejects_wrong_radius():
    g = sc.dyadic_interval_game()
    with pytest.raises(IllegalMove):
        sc.check_transcript(g, [sc.coding_interval(()), sc.coding_interval((0, 0))])


def test_target_strategies_with_cantor():
    g = sc.dyadic_interval_game()
    avoid = sc.target_strategy(sc.cantor_ball_verdict, avoid=True)
    follow = sc.target_strategy(sc.cantor_ball_verdict, avoid=False)
    t = sc.play_schmidt(g, follow, avoid, 12, target=sc.cantor_ball_verdict)
    assert t.verdicts[-1] is OUTSIDE
    assert t.to_json()["verdicts"][-1] == "Outside"


def test_config_from_spec():
    assert sc.config_from_spec({"model": "madic", "m": 3, "d": 2}).dim == 2
    assert sc.config_from_spec({"model": "lattice", "alpha": "1/3", "beta": "1/2"}).alpha == F(1, 3)
    with pytest.raises(KeyError):
        sc.config_from_spec({"model": "hilbert"})
    with pytest.raises(ValueError):
        sc.lattice_subgame(F(1), F(1, 2))


# collapse


def test_collapse_dyadic():
    cg = sc.collapse_alphabeta(sc.dyadic_interval_game())
    assert cg.rate == F(1, 4)
    root = cg.options(())[0]
    opts = cg.options((root,))
    assert len(opts) == 4
    finals = [b for _, b in opts]
    assert len(sc.max_disjoint_subfamily(finals)) == 4
    assert sorted(b.bounds()[0] for b in finals) == [(F(j, 4), F(j + 1, 4)) for j in range(4)]


@pytest.mark.parametrize("seed", range(50))
def test_collapse_round_trip(seed):
    g = sc.dyadic_interval_game() if seed % 2 else sc.lattice_subgame(F(1, 3), F(1, 2))
    t = sc.play_schmidt(g, sc.seeded_random_strategy(seed), sc.seeded_random_strategy(seed + 1), 20)
    flat = tuple(t.balls[:21])
    cg = sc.collapse_alphabeta(g)
    packed = cg.pack(flat)
    assert cg.unpack(packed) == flat
    assert cg.pack(cg.unpack(packed)) == packed
    cg.check(packed)


def test_collapse_windows_legal_depth_8():
    cg = sc.collapse_alphabeta(sc.dyadic_interval_game())
    rng = random.Random(0)
    for _ in range(30):
        c = cg.play(lambda h, o: rng.randrange(len(o)), 4)
        cg.check(c)
    with pytest.raises(ValueError):
        cg.pack((1, 2))


# thresholds and hypotheses


def test_threshold_examples():
    assert sc.threshold(F(1, 4), F(1, 4), 4).exact == F(1, 2)
    assert sc.threshold(F(1, 2), F(1, 2), 4).exact == 1
    for m in (2, 3, 5):
        for d in (1, 2, 3):
            assert sc.threshold(F(1, m), F(1, m), m**d).exact == F(d, 2)


def test_threshold_irrational_falls_back_to_float():
    t = sc.threshold(F(1, 2), F(1, 3), 2)
    assert t.exact is None and t.value == pytest.approx(0.386852807, abs=1e-9)
    with pytest.raises(ValueError):
        sc.threshold(F(1, 2), F(1, 2), 0)


def test_m_balls_hypothesis():
    assert sc.check_m_balls_hypothesis(sc.dyadic_interval_game(), 2, 5).holds
    assert sc.check_m_balls_hypothesis(sc.madic_cube_game(2, 2), 4, 3).holds
    r = sc.check_m_balls_hypothesis(sc.dyadic_interval_game(), 3, 5)
    assert not r.holds and r.min_family == 2


def test_max_disjoint_subfamily_vs_clique_oracle():
    balls = [sc.Ball((F(c, 8),), F(1, 4)) for c in range(2, 7)]
    fam = sc.max_disjoint_subfamily(balls)
    assert sc.pairwise_disjoint(fam) and len(fam) == 2


# structure


def test_structural_checks():
    r = sc.structural_checks(2, 1, 10)
    assert r.L == 4 and r.coloring_ok and r.partition_ok and r.levels_checked == list(range(1, 11))
    r = sc.structural_checks(3, 1, 6)
    assert r.L == 2 and r.coloring_ok
    assert sc.structural_checks(3, 2, 3).coloring_ok


def test_global_coloring_dyadic_level():
    # all level-n dyadic intervals coloured by offset mod 4: each class is separated
    for n in range(1, 9):
        cubes = [sc.MAdicCube(2, n, (b,)) for b in range(2**n)]
        for members in sc.color_classes(cubes, 4).values():
            assert sc.is_separated([c.closure() for c in members], F(1, 2 ** (n + 1)))


@pytest.mark.parametrize("m,d", [(2, 1), (2, 2), (3, 2)])
def test_unit_cover(m, d):
    assert sc.unit_cover_check(m, d, 5 if d == 1 else 3)


def test_frac_helpers():
    assert sc.frac_str(F(3, 4)) == "3/4" and sc.frac_str(F(2)) == "2"
    assert sc.parse_frac("3/4") == F(3, 4) and sc.parse_frac(0.5) == F(1, 2)
