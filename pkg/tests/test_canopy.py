import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hdgames import canopy as cp
from hdgames.canopy import BOUNDARY, INDISTINGUISHABLE, INSIDE, OUTSIDE

import oracles


# metric


def test_metric_examples():
    assert cp.metric_distance((0, 1), (0, 1)) is INDISTINGUISHABLE
    assert cp.metric_distance((0, 1, 0), (1, 0, 0)) == 1
    assert cp.metric_distance((0, 1, 2, 0), (0, 1, 2, 1), m=3) == Fraction(1, 27)


def test_metric_prefix_is_indistinguishable():
    assert cp.metric_distance((0,), (0, 1, 1)) is INDISTINGUISHABLE


def test_metric_rejects_mismatched_alphabets():
    with pytest.raises(ValueError):
        cp.metric_distance((0,), (1,), m=2, m_y=3)


def test_check_position():
    assert cp.check_position([0, 2], 3) == (0, 2)
    with pytest.raises(ValueError):
        cp.check_position([0, 3], 3)


words = st.lists(st.integers(0, 1), min_size=20, max_size=20).map(tuple)


@given(words, words, words)
def test_ultrametric_on_resolved_triples(x, y, z):
    dxy, dyz, dxz = (cp.metric_distance(a, b) for a, b in ((x, y), (y, z), (x, z)))
    if INDISTINGUISHABLE in (dxy, dyz, dxz):
        return
    assert cp.metric_distance(y, x) == dxy
    assert dxz <= max(dxy, dyz)


@given(words, words)
def test_metric_matches_brute_force(x, y):
    d = cp.metric_distance(x, y)
    expect = oracles.first_diff_distance(x, y, 2)
    assert (d is INDISTINGUISHABLE and expect is None) or d == expect


def test_cylinder_diameter_examples():
    assert cp.cylinder_diameter((), 2) == 1
    assert cp.cylinder_diameter((0, 1, 1), 2) == Fraction(1, 8)
    assert cp.cylinder_diameter((2,), 5) == Fraction(1, 5)


@pytest.mark.parametrize("p,m", [((0, 1, 1), 2), ((2,), 5), ((), 3)])
def test_cylinder_diameter_realised_by_plays(p, m):
    # two plays in the cylinder first differing right after p realise the diameter
    x = p + (0,) * 4
    y = p + (1,) + (0,) * 3
    assert oracles.first_diff_distance(x, y, m) == cp.cylinder_diameter(p, m)


# index sets


def test_density_prefix():
    assert cp.density_prefix(cp.multiples(3), 9) == Fraction(1, 3)
    assert cp.density_prefix(cp.empty(), 100) == 0
    assert cp.density_prefix(cp.naturals(), 7) == 1
    with pytest.raises(ValueError):
        cp.density_prefix(cp.odds(), 0)


@given(st.integers(1, 7), st.integers(1, 200))
def test_density_counts_monotone(of, n):
    M = cp.multiples(of)
    assert M.count_below(n) <= M.count_below(n + 1) <= n + 1


def test_power_pairs_default_N():
    N = cp.default_N()
    assert N.members_below(300) == [4, 5, 16, 17, 64, 65, 256, 257]
    cp.check_N(N)


def test_check_N_rejects_unpaired():
    with pytest.raises(cp.ConstructionError):
        cp.check_N(cp.explicit([4, 16, 17]), horizon=100)


def test_default_M_density():
    M = cp.default_M(Fraction(3, 4))
    assert abs(float(cp.density_prefix(M, 40_000)) - 0.25) < 0.01
    assert all(i % 2 == 0 and not cp.default_N().member(i) for i in M.members_below(2000))


def test_index_set_from_spec():
    assert cp.index_set_from_spec({"kind": "multiples", "of": 3}).member(9)
    assert cp.index_set_from_spec("odds").member(3)
    with pytest.raises(KeyError):
        cp.index_set_from_spec({"kind": "primes"})


# trees


def test_example_trees():
    t = cp.make_example_trees()
    assert t["zero_or_one"].contains((0, 0, 0))
    assert not t["zero_or_one"].contains((0, 1))
    assert t["forced_zero"].contains((1, 0, 1, 0))
    assert not t["forced_zero"].contains((1, 1))
    assert all(t["complete_2"].contains(w) for w in itertools.product((0, 1), repeat=5))


@pytest.mark.parametrize("name", ["zero_or_one", "forced_zero", "complete_2", "complete_3"])
def test_tree_axioms(name):
    tree = cp.make_example_trees()[name]
    depth = 12 if tree.arity == 2 else 6
    assert cp.check_tree_axioms(tree, depth) == []


def test_tree_axioms_detects_dead_end():
    bad = cp.TreeOracle(2, lambda p: len(p) < 3, "finite")
    assert any(kind == "extensibility" for kind, _ in cp.check_tree_axioms(bad, 4))


# targets


def test_FM_examples():
    F0 = cp.make_FM(cp.empty())
    assert F0.verdict((0, 0)) is BOUNDARY
    assert F0.verdict((1,)) is OUTSIDE
    Fo = cp.make_FM(cp.odds())
    assert Fo.verdict((0, 1, 0, 1)) is BOUNDARY
    assert Fo.verdict((1,)) is OUTSIDE


def test_FM_inside_only_with_cofinite_certificate():
    assert cp.make_FM(cp.naturals()).verdict((1, 0)) is INSIDE
    assert all(cp.make_FM(cp.odds()).verdict(w) is not INSIDE
               for w in itertools.product((0, 1), repeat=8))


def test_cantor_WC_examples():
    W = cp.make_cantor_WC()
    assert W.verdict(()) is BOUNDARY
    assert W.verdict((0, 0, 0)) is OUTSIDE
    assert W.verdict((0, 1)) is BOUNDARY


def test_cantor_WC_against_digit_enumeration():
    W = cp.make_cantor_WC()
    for n in range(1, 9):
        for p in itertools.product((0, 1), repeat=n):
            k = int("".join(map(str, p)), 2)
            brute = oracles.cantor_meets(Fraction(k, 2**n), Fraction(k + 1, 2**n), depth=8)
            v = W.verdict(p)
            if brute is False:
                assert v is OUTSIDE, p
            if brute is True:
                assert v is BOUNDARY, p


def _targets():
    N = cp.default_N()
    M = cp.default_M(Fraction(3, 4), N)
    return [cp.make_FM(cp.multiples(3)), cp.make_Y0(), cp.make_cantor_WC(), cp.full_canopy(),
            cp.cylinder_target((0, 1)), cp.make_Wdelta(cp.make_Y0(), N, M), *cp.wdelta_bounds(N, M)]


@pytest.mark.parametrize("S", _targets(), ids=lambda S: S.name)
def test_refinement_monotone_and_incremental(S):
    stack = [((), *S.root())]
    while stack:
        p, state, v = stack.pop()
        assert v is S.verdict(p)
        if len(p) == 14:
            continue
        for a in range(2):
            cs, cv = S.child(state, len(p), a) if v is not OUTSIDE else (None, OUTSIDE)
            if v in (INSIDE, OUTSIDE):
                assert S.verdict(p + (a,)) is v
            if v is not OUTSIDE:
                stack.append((p + (a,), cs, cv))


def test_Wdelta_examples():
    N = cp.default_N()
    M = cp.explicit([i for i in range(0, 2000, 8) if not N.member(i)])
    W = cp.make_Wdelta(cp.make_Y0(), N, M)
    assert W.verdict((0,) * 20) is BOUNDARY
    p = [0] * 10
    p[2] = 1  # 2 is even, outside M and N
    assert W.verdict(tuple(p)) is OUTSIDE


def test_Wdelta_matches_brute_force_depth_10():
    N = cp.default_N()
    M = cp.explicit([i for i in range(0, 2000, 8) if not N.member(i)])
    W = cp.make_Wdelta(cp.make_Y0(), N, M)
    Nl = N.members_below(10)
    for p in itertools.product((0, 1), repeat=10):
        zeros_ok = all(p[i] == 0 for i in range(0, 10, 2) if not M.member(i) and not N.member(i))
        sub = [p[i] for i in Nl]
        sub_ok = all(sub[j] == 0 for j in range(0, len(sub), 2))
        assert (W.verdict(p) is not OUTSIDE) == (zeros_ok and sub_ok), p


def test_Wdelta_rejects_bad_M():
    N = cp.default_N()
    with pytest.raises(cp.ConstructionError):
        cp.make_Wdelta(cp.make_Y0(), N, cp.explicit([3]))
    with pytest.raises(cp.ConstructionError):
        cp.make_Wdelta(cp.make_Y0(), N, cp.explicit([4]))


def test_wdelta_sandwich_inclusions_depth_12():
    N = cp.default_N()
    M = cp.default_M(Fraction(3, 4), N)
    W = cp.make_Wdelta(cp.make_Y0(), N, M)
    FK, FL = cp.wdelta_bounds(N, M)
    for p in itertools.product((0, 1), repeat=12):
        if FL.verdict(p) is not OUTSIDE:
            assert W.verdict(p) is not OUTSIDE
        if W.verdict(p) is not OUTSIDE:
            assert FK.verdict(p) is not OUTSIDE


def test_verdict_along():
    S = cp.cylinder_target((0, 1))
    assert cp.verdict_along(S, (0, 1, 1)) == [BOUNDARY, BOUNDARY, INSIDE, INSIDE]
    assert cp.verdict_along(S, (1, 0)) == [BOUNDARY, OUTSIDE, OUTSIDE]
