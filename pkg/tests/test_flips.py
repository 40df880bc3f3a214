import random
from fractions import Fraction

import pytest

from orchard.core import orchard_partition
from orchard.errors import ConsistencyError, FlipError, InputError
from orchard.flips import (FlipSpec, apply_flip, classify_flip, flip_walk, parity_law,
                           pi_value, pointed_parity_experiment, random_flip,
                           verify_flip_rule)
from orchard.geometry import Configuration, chirotope, random_generic, same_isomorphism_type

LINE3 = Configuration.from_points([1, 2, 3])


def test_line_flip_moves_point_between_neighbours():
    res = apply_flip(LINE3, FlipSpec((3, 2), 3))
    assert res.spec.flipset == (2, 3)
    assert res.crossing_parameter == Fraction(1, 2)
    assert res.after.point(3) == (Fraction(3, 2),)
    assert chirotope(LINE3).differences(chirotope(res.after)) == [(2, 3)]
    report = verify_flip_rule(res)
    assert report.passed and report.single_entry and report.counterexample is None


def test_flip_twice_restores_isomorphism_type():
    cfg = random_generic(6, 2, seed=11)
    res = random_flip(cfg, random.Random(0))
    back = apply_flip(res.after, res.spec)
    assert chirotope(back.after) == chirotope(cfg)
    assert same_isomorphism_type(back.after, cfg)


def test_blocked_flip_raises():
    square = Configuration.from_points([(0, 0), (1, 0), (1, 1), (0, 1)])
    with pytest.raises(FlipError):
        apply_flip(square, FlipSpec((1, 2, 3), 3))


def test_spec_validation():
    with pytest.raises(InputError):
        FlipSpec((1, 2), 3)
    with pytest.raises(InputError):
        FlipSpec((1, 1), 1)
    with pytest.raises(InputError):
        apply_flip(LINE3, FlipSpec((1, 2, 3), 1))
    with pytest.raises(InputError):
        apply_flip(LINE3, FlipSpec((2, 7), 2))


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_random_flips_change_one_simplex(d):
    rng = random.Random(d)
    cfg = random_generic(d + 4, d, seed=d)
    for _ in range(5):
        res = random_flip(cfg, rng)
        assert chirotope(cfg).differences(chirotope(res.after)) == [res.spec.flipset]
        assert Fraction(1, 2) < res.stop_parameter < 1
        assert verify_flip_rule(res).passed
        cfg = res.after


def test_flip_walk_keeps_coordinates_small():
    walk = flip_walk(random_generic(7, 2, seed=3), steps=40, seed=1)
    assert len(walk) == 40
    biggest = max(x.denominator for p in walk[-1].after.points for x in p)
    assert biggest <= 2 ** 64


def test_classify_flip():
    cfg = random_generic(8, 3, seed=2)
    part = orchard_partition(cfg)
    a, b = part.classA[:2], part.classB[:2]
    t = classify_flip(part, FlipSpec(a + b, a[0]))
    assert t.counts == (2, 2) and not t.monochromatic and t.orchard_equivalence_eligible
    t = classify_flip(part, FlipSpec(part.classA[:4], part.classA[0])) \
        if len(part.classA) >= 4 else None
    if t is not None:
        assert t.monochromatic and not t.orchard_equivalence_eligible


def test_pi_and_laws():
    assert [pi_value(n, 1) for n in (4, 6, 8, 10)] == [0, 1, 0, 1]
    # C(n-3, 2) decides the odd-dimension formula for d = 3
    assert [pi_value(n, 3) for n in (4, 6, 8, 10)] == [0, 1, 0, 1]
    assert pi_value(6, 5) == 0 and pi_value(8, 5) == 0 and pi_value(10, 5) == 1
    assert pi_value(2, 1) == 0
    assert parity_law(5, 2) == "toggle"
    assert parity_law(5, 3) == "constant"
    assert parity_law(6, 3) == "pi"
    with pytest.raises(InputError):
        pi_value(5, 3)


def test_parity_experiment_report_shape():
    res = pointed_parity_experiment(6, 2, trials=2, steps=5, seed=9)
    assert res["passed"] and res["law"] == "toggle" and res["pi"] is None
    assert len(res["records"]) == 2
    assert all(len(r["abar"]) == 6 and len(r["flips"]) == 5 for r in res["records"])
    assert res == pointed_parity_experiment(6, 2, trials=2, steps=5, seed=9)


def test_consistency_error_is_assertion():
    assert issubclass(ConsistencyError, AssertionError)
