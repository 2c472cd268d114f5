import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from thickness import make_middle_cantor
from thickness.errors import ContainmentError, DomainError, OverlapError
from thickness.setsrd import (Box, CornerCantor, CubeRd, ExplicitTree, FYCutOutSpec, carpet_spec,
                              fy_thickness, h_value, make_corner_cantor, rasterize, thickness_rd,
                              uniform_dense_check)


def brute_h(cube, points, grid=24):
    """max over a grid of the cube of the sup distance to ``points``."""
    best = F(0)
    c, R = cube.center, cube.radius
    ticks = [c0 - R + 2 * R * F(k, grid) for c0 in c for k in range(grid + 1)]
    per_axis = [ticks[i * (grid + 1):(i + 1) * (grid + 1)] for i in range(len(c))]
    for x in itertools.product(*per_axis):
        d = min(max(abs(a - b) for a, b in zip(x, p)) for p in points)
        best = max(best, d)
    return best


def test_cube_relations():
    Q1 = CubeRd((0, 0), 2)
    assert Q1.contains_cube(CubeRd((1, 1), 1))
    assert not Q1.contains_cube(CubeRd((2, 0), 1))
    assert Q1.meets(CubeRd((3, 0), 1)) and not Q1.meets(CubeRd((4, 0), F(1, 2)))
    assert Q1.dist_to_point((5, 1)) == 3


def test_corner_cantor_parameters():
    S = make_corner_cantor(2, 10, F(7, 50))
    assert (S.g, S.tau, S.r) == (F(1, 15), F(21, 10), F(7, 50) + F(1, 30))
    assert len(S.children(())) == 100


def test_corner_cantor_children_nest_and_are_disjoint():
    S = CornerCantor(2, 3, F(1, 2))
    kids = S.children(())
    assert all(S.root.contains_cube(k) for k in kids)
    for a, b in itertools.combinations(kids, 2):
        assert not a.meets(b)
    assert len(rasterize(S, 2)) == 81


def test_corner_cantor_domain():
    with pytest.raises(DomainError):
        CornerCantor(2, 4, F(1, 2))


def test_corner_cantor_h_matches_grid():
    S = CornerCantor(1, 2, F(2, 3))
    # cube ends belong to the set; the grid hits the middle of the central gap
    pts = [(c.center[0] + e * c.radius,) for c in rasterize(S, 7) for e in (-1, 1)]
    assert h_value(S).value == F(1, 3) == brute_h(S.root, pts, grid=6)


def test_thickness_matches_newhouse_in_dimension_one():
    for ell, eps in ((F(2, 3), F(1, 3)), (F(1, 2), F(1, 2)), (F(4, 5), F(1, 5))):
        assert thickness_rd(CornerCantor(1, 2, ell)).value == make_middle_cantor(eps).thickness().value


def test_tree_h_is_exact():
    root = CubeRd((0, 0), 4)
    kids = [CubeRd((-2, -2), 1), CubeRd((3, 3), 1), CubeRd((2, -3), 1)]
    T = ExplicitTree((root, [(k, []) for k in kids]))
    pts = T.points()
    assert sorted(pts) == sorted(k.center for k in kids)
    assert h_value(T).value == brute_h(root, pts, grid=16)


def test_tree_thickness():
    root = CubeRd((0,), 1)
    T = ExplicitTree((root, [(CubeRd((F(-1, 2),), F(1, 2)), []), (CubeRd((F(1, 2),), F(1, 2)), [])]))
    # h at the root is 1/2, so the root ratio is 1; leaf chains give 1/2
    assert thickness_rd(T).value == F(1, 2)
    single = ExplicitTree((root, []))
    assert thickness_rd(single).value == F(1, 2)


def test_tree_rejects_escaping_child():
    with pytest.raises(ContainmentError):
        ExplicitTree((CubeRd((0,), 1), [(CubeRd((1,), 1), [])]))


def test_uniform_denseness_threshold():
    S = make_corner_cantor(2, 10, F(7, 50))
    assert uniform_dense_check(S, F(13, 75))[0]
    ok, window = uniform_dense_check(S, F(7, 100))
    assert not ok and S.root.contains_cube(window)


def test_uniform_denseness_on_a_tree():
    # four quarter cells tile the root; a leaf chain needs r >= 3/4
    root = CubeRd((0,), 1)
    T = ExplicitTree((root, [(CubeRd((F(k, 4),), F(1, 4)), []) for k in (-3, -1, 1, 3)]))
    assert uniform_dense_check(T, F(3, 4), 3)[0]
    ok, window = uniform_dense_check(T, F(1, 2), 3)
    assert not ok and window.radius == F(1, 8)


def test_carpet_thickness():
    for k in (1, 2, 3):
        assert fy_thickness(carpet_spec(k)) == 1


def test_fy_spec_validation():
    with pytest.raises(OverlapError):
        FYCutOutSpec(((0, 4), (0, 4)), (((1, 3), (1, 3)), ((2, 3), (2, 3))))
    with pytest.raises(ContainmentError):
        FYCutOutSpec(((0, 4), (0, 4)), (((3, 5), (1, 2)),))
    with pytest.raises(OverlapError):
        Box(((1, 1), (0, 1)))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 2),
       st.fractions(min_value=F(1, 10), max_value=F(5), max_denominator=20),
       st.tuples(st.fractions(min_value=-3, max_value=3, max_denominator=10),
                 st.fractions(min_value=-3, max_value=3, max_denominator=10)))
def test_fy_thickness_similarity_invariant(stages, a, b):
    spec = carpet_spec(stages)
    assert fy_thickness(spec.homothety(a, b)) == fy_thickness(spec)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(2, 6), st.integers(1, 99))
def test_corner_cantor_thickness_formula(d, n, k):
    ell = F(2, n) * F(k, 100)
    S = CornerCantor(d, n, ell)
    assert thickness_rd(S).value == ell / ((2 - n * ell) / (n - 1))
