import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from thickness import Interval, make_explicit_cutout, make_ifs, make_middle_cantor, restrict
from thickness.core1d import Gap, upper_thickness_lower_bound
from thickness.errors import ContainmentError, DomainError, OverlapError

from oracles import (in_middle_thirds, middle_cantor_gaps, middle_cantor_intervals,
                     sequential_thickness)


def test_middle_thirds_value():
    M = make_middle_cantor(F(1, 3))
    tau = M.thickness()
    assert tau.exact and tau.value == 1


@pytest.mark.parametrize("eps", [F(1, 3), F(1, 2), F(1, 5), F(3, 5), F(1, 7), F(2, 9)])
def test_middle_cantor_matches_truncated_oracle(eps):
    # stage-k gaps of M_eps, removed in construction order, give the same ratio
    oracle = sequential_thickness((0, 1), middle_cantor_gaps(eps, 6))
    assert make_middle_cantor(eps).thickness().value == oracle


def test_gap_enumeration_is_canonical():
    M = make_middle_cantor(F(1, 3))
    gaps = M.enumerate_gaps(7)
    assert [g.interval for g in gaps] == [
        Interval(F(1, 3), F(2, 3)),
        Interval(F(1, 9), F(2, 9)), Interval(F(7, 9), F(8, 9)),
        Interval(F(1, 27), F(2, 27)), Interval(F(7, 27), F(8, 27)),
        Interval(F(19, 27), F(20, 27)), Interval(F(25, 27), F(26, 27)),
    ]
    keys = [g.key for g in M.enumerate_gaps(40)]
    assert keys == sorted(keys)


def test_truncation_matches_construction():
    for eps in (F(1, 3), F(1, 4)):
        M = make_middle_cantor(eps)
        got = [(iv.left, iv.right) for iv in M.truncate(5)]
        assert sorted(got) == sorted(middle_cantor_intervals(eps, 5))


def test_locate_agrees_with_ternary_digits():
    M = make_middle_cantor(F(1, 3))
    rng = random.Random(7)
    for _ in range(400):
        q = rng.randint(1, 300)
        x = F(rng.randint(0, q), q)
        assert M.contains(x) == in_middle_thirds(x), x


def test_locate_returns_enclosing_gap():
    M = make_middle_cantor(F(1, 3))
    g = M.locate(F(1, 2))
    assert isinstance(g, Gap) and g.interval == Interval(F(1, 3), F(2, 3))
    assert M.locate(F(1, 4)) is None
    # deep inside a stage-8 gap: the resolution stops the descent first
    x = F(3, 2 * 3**8)
    piece = M.locate(x, resolution=F(1, 100))
    assert piece.contains(x) and piece.length < F(1, 100)
    assert M.locate(x).interval == Interval(F(1, 3**8), F(2, 3**8))


def test_bridges_middle_thirds():
    M = make_middle_cantor(F(1, 3))
    g = M.enumerate_gaps(2)[1]
    lb, rb = M.bridges(g)
    assert lb == Interval(0, F(1, 9)) and rb == Interval(F(2, 9), F(1, 3))


def test_explicit_cutout_value_and_bridges():
    C = make_explicit_cutout(Interval(0, 10), [Interval(4, 6), Interval(1, 2)])
    assert C.thickness().value == F(1, 1)
    assert C.bridges(C.enumerate_gaps(2)[1]) == (Interval(0, 1), Interval(2, 4))


def test_gapless_set_is_infinitely_thick():
    C = make_explicit_cutout(Interval(0, 1), [])
    assert C.thickness().value == float("inf")


def test_explicit_cutout_rejects_bad_gaps():
    with pytest.raises(OverlapError):
        make_explicit_cutout(Interval(0, 10), [Interval(1, 4), Interval(3, 5)])
    with pytest.raises(ContainmentError):
        make_explicit_cutout(Interval(0, 10), [Interval(8, 11)])


def test_middle_cantor_domain():
    for bad in (0, 1, F(3, 2), -1):
        with pytest.raises(DomainError):
            make_middle_cantor(bad)


def test_ifs_thickness_and_gaps():
    # three pieces of ratio 1/5 on [0, 1]
    C = make_ifs(Interval(0, 1), [(F(1, 5), 0), (F(1, 5), F(2, 5)), (F(1, 5), F(4, 5))])
    assert C.thickness().value == F(1, 1)
    assert [g.interval for g in C.enumerate_gaps(2)] == [
        Interval(F(1, 5), F(2, 5)), Interval(F(3, 5), F(4, 5))]


def test_uneven_ifs_against_sequential_oracle():
    maps = [(F(1, 3), 0), (F(1, 2), F(1, 2))]
    C = make_ifs(Interval(0, 1), maps)
    gaps = [(g.left, g.right) for g in C.enumerate_gaps(60)]
    # a prefix in canonical order is a valid removal order
    assert C.thickness().value == sequential_thickness((0, 1), gaps)


def test_restrict_requires_members():
    M = make_middle_cantor(F(1, 3))
    R = restrict(M, Interval(0, F(1, 3)))
    assert R.enumerate_gaps(1)[0].interval == Interval(F(1, 9), F(2, 9))
    with pytest.raises(DomainError):
        restrict(M, Interval(0, F(1, 2)))


def test_upper_thickness_bound():
    C = make_explicit_cutout(Interval(0, 10), [Interval(4, 6)])
    assert upper_thickness_lower_bound(C) == float("inf")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([F(1, 3), F(1, 4), F(2, 5), F(1, 2)]),
       st.fractions(min_value=F(-20), max_value=F(20), max_denominator=50).filter(lambda a: a != 0),
       st.fractions(min_value=F(-20), max_value=F(20), max_denominator=50))
def test_thickness_is_similarity_invariant(eps, a, b):
    M = make_middle_cantor(eps)
    assert M.homothety(a, b).thickness().value == M.thickness().value


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=8), st.randoms())
def test_explicit_thickness_matches_oracle(widths, rnd):
    # lay gaps of the given widths on a line separated by random bridges
    x, gaps = F(0), []
    for w in widths:
        x += rnd.randint(1, 9)
        gaps.append((x, x + w))
        x += w
    hull = (F(0), x + rnd.randint(1, 9))
    C = make_explicit_cutout(Interval(*hull), [Interval(a, b) for a, b in gaps])
    order = sorted(gaps, key=lambda g: -(g[1] - g[0]))
    assert C.thickness().value == sequential_thickness(hull, order)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([F(1, 3), F(1, 5), F(3, 5)]), st.integers(0, 6),
       st.fractions(min_value=0, max_value=1, max_denominator=200))
def test_distance_to_truncation_zero_iff_covered(eps, depth, x):
    M = make_middle_cantor(eps)
    covered = any(a <= x <= b for a, b in middle_cantor_intervals(eps, depth))
    assert (M.distance_to_truncation(x, depth) == 0) == covered
