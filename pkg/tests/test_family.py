"""Stunted sawtooth family: construction, plateaus, height perturbations."""

from fractions import Fraction as F

import pytest

from sawlab import (
    ConstraintViolation,
    Shape,
    StuntedSawtoothMap,
    build_sawtooth,
    perturb_toward_chaos,
    perturb_toward_order,
    validate_heights,
)


def test_full_sawtooth_slopes_and_turning_points(tent_shape):
    f = build_sawtooth(tent_shape)
    assert f(F(1, 2)) == 1
    assert f.right_slope(F(0)) == 2
    assert f.left_slope(F(1)) == -2

    g = build_sawtooth(Shape.from_string("+-+"))
    assert g.right_slope(F(0)) == 3
    assert g(F(1, 3)) == 1 and g(F(2, 3)) == 0


def test_plateau_interval_at_three_fifths(stunted_tent):
    m = stunted_tent(F(3, 5))
    plat = m.plateaus[0]
    assert plat.interval.lo == F(3, 10) and plat.interval.hi == F(7, 10)
    assert plat.height == F(3, 5)
    assert plat.kind == "max"


def test_min_plateau_width_scales_with_height():
    m = StuntedSawtoothMap(Shape.from_string("+-+"), [F(1), F(1, 3)])
    valley = m.plateaus[1]
    assert valley.kind == "min"
    # halfwidth w/(d+1) = 1/9 around the turning point 2/3
    assert valley.interval.lo == F(5, 9) and valley.interval.hi == F(7, 9)


def test_adjacent_height_order_enforced():
    shape = Shape.from_string("+-+")
    with pytest.raises(ConstraintViolation):
        validate_heights(shape, (F(1, 4), F(1, 2)))
    with pytest.raises(ConstraintViolation):
        StuntedSawtoothMap(shape, [F(1, 4), F(1, 2)])
    # equality is rejected too: the constraint is strict
    with pytest.raises(ConstraintViolation):
        validate_heights(shape, (F(1, 2), F(1, 2)))


def test_heights_outside_unit_interval_rejected(tent_shape):
    with pytest.raises(ConstraintViolation):
        StuntedSawtoothMap(tent_shape, [F(6, 5)])


def test_perturbations_move_heights_by_eps(stunted_tent):
    m = stunted_tent(F(3, 5))
    assert perturb_toward_chaos(m, F(1, 100)).w == (F(61, 100),)
    assert perturb_toward_order(m, F(1, 100)).w == (F(59, 100),)


def test_two_sided_perturbation_bimodal():
    m = StuntedSawtoothMap(Shape.from_string("+-+"), [F(7, 10), F(3, 10)])
    up = perturb_toward_chaos(m, F(1, 50))
    down = perturb_toward_order(m, F(1, 50))
    # maxes rise and mins fall toward chaos; the reverse toward order
    assert up.w == (F(18, 25), F(7, 25))
    assert down.w == (F(17, 25), F(8, 25))


def test_perturbation_clamps_at_unit_bounds(stunted_tent):
    # near the top there is little room; the move shrinks to half of it
    m = stunted_tent(F(999, 1000))
    assert perturb_toward_chaos(m, F(1, 100)).w == (F(1999, 2000),)


def test_shape_round_trip_and_mirror():
    s = Shape.from_string("-+-")
    assert s.to_string() == "-+-"
    assert s.mirrored().to_string() == "+-+"
    assert s.d == 2
    assert s.turning_kind(1) == "min" and s.turning_kind(2) == "max"
    assert s.turning_point(1) == F(1, 3)


def test_family_json_round_trip(stunted_tent):
    m = stunted_tent(F(4, 5))
    again = StuntedSawtoothMap.from_json(m.to_json())
    assert again.shape.to_string() == "+-" and again.w == m.w
