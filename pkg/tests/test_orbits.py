"""Periodic orbit enumeration, period sets, Sharkovskii order."""

from fractions import Fraction as F

import pytest

from sawlab import (
    Shape,
    StuntedSawtoothMap,
    classify_stability,
    complete_period_set,
    period_set,
    periodic_points,
    sharkovskii_closure,
    sharkovskii_forces,
)
from sawlab.orbits import markov_orbit_inventory, orbit_side_slope


def test_fixed_points_of_stunted_tent(stunted_tent):
    orbits = periodic_points(stunted_tent(F(4, 5)).map, 1)
    assert {o.points[0] for o in orbits} == {F(0), F(2, 3)}
    assert all(o.stability == "repelling" for o in orbits)


def test_period_two_orbit_and_stability(stunted_tent):
    (orb,) = periodic_points(stunted_tent(F(4, 5)).map, 2)
    assert set(orb.points) == {F(2, 5), F(4, 5)}
    # 2/5 sits on the plateau edge: the flat side makes the cycle
    # attracting from one side only
    assert orb.stability == "one_sided_attracting"


def test_tent_has_period_three(tent):
    orbits = periodic_points(tent, 3)
    assert {F(2, 7), F(4, 7), F(6, 7)} in [set(o.points) for o in orbits]
    for o in orbits:
        assert o.period == 3
        for p, q in zip(o.points, o.points[1:] + o.points[:1]):
            assert tent(p) == q


def test_periodic_points_excludes_lower_periods(tent):
    for orb in periodic_points(tent, 4):
        assert orb.period == 4


def test_period_set_sweep_stops_on_witness(tent):
    report = period_set(tent, 6, stop_on_non_power_of_two=True)
    assert report.stopped_early
    assert report.stop_witness.period == 3
    assert 3 in report.periods


def test_complete_period_set_is_exhaustive(stunted_tent):
    report = complete_period_set(stunted_tent(F(4, 5)).map)
    assert report.exhaustive
    assert report.periods == frozenset({1, 2})


def test_markov_inventory_matches_iterate_search(stunted_tent):
    f = stunted_tent(F(823, 1000)).map
    inventory = {(o.period, o.points) for o in markov_orbit_inventory(f)}
    for n in (1, 2, 4):
        for o in periodic_points(f, n):
            assert (o.period, o.points) in inventory
    assert {p for p, _ in inventory} == {1, 2, 4}


def test_orbit_side_slope_tracks_orientation(tent):
    # slope of tent^2 at the period-2 point 2/5: both steps hit slope +-2
    (orb,) = periodic_points(tent, 2)
    assert abs(orbit_side_slope(tent, orb.points, +1)) == 4
    assert classify_stability(tent, orb.points) == "repelling"


def test_sharkovskii_order():
    assert sharkovskii_forces(3, 5)
    assert sharkovskii_forces(6, 8)
    assert sharkovskii_forces(4, 2)
    assert not sharkovskii_forces(2, 4)
    assert not sharkovskii_forces(4, 6)
    # every period forces itself
    assert sharkovskii_forces(12, 12)


def test_sharkovskii_closure_is_lower_set():
    assert sharkovskii_closure({6}, 8) == frozenset({1, 2, 4, 6, 8})
    assert sharkovskii_closure({4}, 64) == frozenset({1, 2, 4})
    assert sharkovskii_closure({3}, 10) == frozenset({1, 2, 3, 4, 5, 6, 7, 8, 9, 10})


def test_structural_inventory_refuses_branching_graphs(tent):
    from sawlab import StructureError

    with pytest.raises(StructureError):
        markov_orbit_inventory(tent)
