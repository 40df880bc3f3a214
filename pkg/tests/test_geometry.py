from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orchard.errors import DimensionMismatch, NonGenericError, RetryBudgetExceeded
from orchard.geometry import (Configuration, affine_image, as_rat, bareiss_det, binom,
                              chirotope, det_sign, det_value, degenerate_subset, is_generic,
                              moment_curve, nullspace, perturb, random_generic, rank,
                              regular_polygon, require_generic, same_isomorphism_type,
                              simplex_sign, solve)

from helpers import leibniz_det

SQUARE = Configuration.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])


@pytest.mark.parametrize("a,b,expected", [
    (5, 2, 10), (0, 0, 1), (-1, 0, 0), (-1, -1, 0), (3, 4, 0), (2, -1, 0), (7, 7, 1),
])
def test_binom_convention(a, b, expected):
    assert binom(a, b) == expected


def test_as_rat_rejects_floats():
    assert as_rat("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        as_rat(0.5)


small_ints = st.integers(min_value=-9, max_value=9)


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_leibniz(m):
    assert bareiss_det(m) == leibniz_det([[Fraction(x) for x in row] for row in m])


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7),
                         min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_value_is_exact(rows):
    assert det_value(rows) == leibniz_det(rows)


def test_det_sign_orientation():
    assert det_sign([(1, 0), (0, 1)], (0, 0)) == 1
    assert det_sign([(0, 1), (1, 0)], (0, 0)) == -1
    assert det_sign([(1, 1), (2, 2)], (0, 0)) == 0
    with pytest.raises(DimensionMismatch):
        det_sign([(1, 0)], (0, 0))


def test_linear_algebra_helpers():
    assert rank([[1, 2], [2, 4]]) == 1
    assert solve([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]
    (v,) = nullspace([[1, 1, 1]], 3)[:1]
    assert sum(v) == 0


def test_configuration_validation():
    with pytest.raises(DimensionMismatch):
        Configuration(2, ((0, 0), (1,)))
    with pytest.raises(DimensionMismatch):
        Configuration(0, ())
    cfg = Configuration.from_points([1, 2, "5/2"])
    assert cfg.dim == 1 and cfg.point(3) == (Fraction(5, 2),)
    assert cfg.integral == ((2,), (4,), (5,))
    with pytest.raises(IndexError):
        cfg.point(4)


def test_degenerate_subset_reports_labels():
    cfg = Configuration.from_points([(0, 0), (5, 7), (1, 1), (2, 2)])
    assert degenerate_subset(cfg) == (1, 3, 4)
    with pytest.raises(NonGenericError) as info:
        require_generic(cfg)
    assert info.value.subset == (1, 3, 4)
    # fewer than d + 1 points: collinear triple in R^3
    line = Configuration.from_points([(0, 0, 0), (1, 1, 1), (2, 2, 2)])
    assert degenerate_subset(line) == (1, 2, 3)
    assert degenerate_subset(Configuration.from_points([(0, 0), (0, 0)])) == (1, 2)


def test_random_generic_is_seeded_and_generic():
    a = random_generic(8, 3, seed=4)
    assert a == random_generic(8, 3, seed=4)
    assert a != random_generic(8, 3, seed=5)
    assert is_generic(a)
    with pytest.raises(RetryBudgetExceeded):
        random_generic(12, 2, seed=0, coord_bound=1, retries=20)


def test_square_chirotope():
    chi = chirotope(SQUARE)
    assert chi.signs == {(1, 2, 3): 1, (1, 2, 4): 1, (1, 3, 4): 1, (2, 3, 4): 1}
    reflected = affine_image(SQUARE, [[-1, 0], [0, 1]])
    assert chirotope(reflected).differences(chi) == sorted(chi.signs)
    assert not same_isomorphism_type(SQUARE, reflected)
    assert same_isomorphism_type(SQUARE, reflected, {1: 1, 2: 4, 3: 3, 4: 2})


def test_simplex_sign_depends_on_order():
    assert simplex_sign(SQUARE, (1, 2, 3)) == 1
    assert simplex_sign(SQUARE, (2, 1, 3)) == -1


def test_positive_affine_image_keeps_chirotope():
    cfg = random_generic(7, 3, seed=1)
    img = affine_image(cfg, [[2, 1, 0], [0, 1, 0], [1, 0, 3]], [5, -1, "1/2"])
    assert chirotope(img) == chirotope(cfg)


def test_regular_polygon_is_convex_on_circle():
    for m in (3, 5, 7, 9):
        cfg = regular_polygon(m)
        assert all(x * x + y * y == 1 for x, y in cfg.points)
        for k in range(m):
            assert simplex_sign(cfg, (k + 1, (k + 1) % m + 1, (k + 2) % m + 1)) == 1


def test_moment_curve_and_perturb():
    cfg = moment_curve(7, 3)
    assert cfg.point(2) == (2, 4, 8)
    assert is_generic(cfg)
    degenerate = Configuration.from_points([(0, 0), (1, 1), (2, 2), (0, 1)])
    fixed = perturb(degenerate, seed=3)
    assert is_generic(fixed)
    assert all(abs(a - b) < Fraction(1, 10 ** 8)
               for p, q in zip(fixed.points, degenerate.points) for a, b in zip(p, q))
