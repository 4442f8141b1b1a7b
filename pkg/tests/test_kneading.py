"""Kneading data, itinerary order, realization by height bisection."""

from fractions import Fraction as F

import pytest

from sawlab import (
    KneadingNotRealizable,
    Shape,
    StuntedSawtoothMap,
    compare_kneading,
    kneading_data,
    realize_kneading,
)


def test_tent_kneading_row(tent_shape):
    kd = kneading_data(StuntedSawtoothMap(tent_shape, [F(1)]), 3)
    # orbit of the critical value: 1 -> 0 -> 0, against the degenerate
    # plateau at 1/2
    assert kd.row(1) == ((1,), (-1,), (-1,))
    assert kd.row_ranks(1) == (2, 0, 0)


def test_plateau_membership_reads_zero(stunted_tent):
    kd = kneading_data(stunted_tent(F(1, 2)), 2)
    # w = 1/2 lies inside its own plateau [1/4, 3/4]
    assert kd.row(1)[0] == (0,)


def test_kneading_depth_and_json_round_trip(stunted_tent):
    kd = kneading_data(stunted_tent(F(4, 5)), 6)
    assert kd.depth == 6
    payload = kd.to_json()
    assert payload["shape"] == "+-"
    assert payload["depth"] == 6
    assert len(payload["signs"]) == 1 and len(payload["signs"][0]) == 6


def test_comparison_follows_height_order(stunted_tent):
    a = kneading_data(stunted_tent(F(3, 5)), 8)
    b = kneading_data(stunted_tent(F(4, 5)), 8)
    assert compare_kneading(a, b) == -1
    assert compare_kneading(b, a) == 1
    assert compare_kneading(a, a) == 0


def test_comparison_is_a_total_preorder_on_a_grid(tent_shape):
    data = [kneading_data(StuntedSawtoothMap(tent_shape, [F(k, 16)]), 6) for k in range(17)]
    for i in range(len(data) - 1):
        assert compare_kneading(data[i], data[i + 1]) <= 0


def test_mirror_conjugacy_flips_signs(tent_shape):
    kd = kneading_data(StuntedSawtoothMap(tent_shape, [F(4, 5)]), 6)
    mirrored = kneading_data(
        StuntedSawtoothMap(tent_shape.mirrored(), [F(1, 5)]), 6
    )
    flipped = tuple(
        tuple(tuple(-s for s in step) for step in row) for row in kd.signs
    )
    assert mirrored.signs == flipped


def test_realization_round_trip_unimodal(stunted_tent):
    target = kneading_data(stunted_tent(F(4, 5)), 8)
    w = realize_kneading(target, 8, F(1, 10**9))
    reproduced = kneading_data(stunted_tent(w[0]), 8)
    assert reproduced.signs == target.signs


def test_realization_round_trip_bimodal():
    shape = Shape.from_string("+-+")
    m = StuntedSawtoothMap(shape, [F(41, 64), F(5, 64)])
    target = kneading_data(m, 12)
    w = realize_kneading(target, 12, F(1, 10**12))
    reproduced = kneading_data(StuntedSawtoothMap(shape, list(w)), 12)
    assert reproduced.signs == target.signs


def test_realization_of_shallow_prefix():
    shape = Shape.from_string("-+-")
    m = StuntedSawtoothMap(shape, [F(41, 64), F(7, 8)])
    target = kneading_data(m, 10)
    w = realize_kneading(target, 4)
    reproduced = kneading_data(StuntedSawtoothMap(shape, list(w)), 4)
    assert reproduced.signs == tuple(row[:4] for row in target.signs)


def test_unrealizable_target_raises(tent_shape):
    # a sign table that starts below the plateau band but claims to stay
    # constant afterwards contradicts every admissible height
    base = kneading_data(StuntedSawtoothMap(tent_shape, [F(1)]), 3)
    fake = type(base)(shape=tent_shape, depth=3, signs=(((1,), (1,), (-1,)),))
    with pytest.raises(KneadingNotRealizable):
        realize_kneading(fake, 3)


def test_depth_bounds_validated(stunted_tent):
    target = kneading_data(stunted_tent(F(4, 5)), 4)
    from sawlab import ConstraintViolation

    with pytest.raises(ConstraintViolation):
        realize_kneading(target, 9)
    with pytest.raises(ConstraintViolation):
        realize_kneading(target, 4, F(0))
