"""Classification verdicts and boundary bracketing."""

from fractions import Fraction as F

import pytest

from sawlab import (
    Budgets,
    ConstraintViolation,
    bisect_boundary,
    classify,
    refine_to_boundary,
    two_sided_perturbation_experiment,
)
from sawlab.entropy import EntropyEstimate


def test_finite_verdicts_track_the_doubling_cascade(stunted_tent):
    expected = {
        F(3, 5): "Finite(1)",
        F(4, 5): "Finite(2)",
        F(823, 1000): "Finite(4)",
        F(212, 257): "Finite(8)",
    }
    for w, label in expected.items():
        record = classify(stunted_tent(w))
        assert record.verdict == "Finite"
        assert record.label == label


def test_chaotic_verdict_carries_certificates(stunted_tent):
    record = classify(stunted_tent(F(33, 40)))
    assert record.verdict == "Chaotic"
    assert record.entropy.value > 0.17
    assert isinstance(record.entropy, EntropyEstimate)
    assert record.certificates
    assert record.detail


def test_record_round_trips_to_json(stunted_tent):
    record = classify(stunted_tent(F(4, 5)))
    payload = record.to_json()
    assert payload["verdict"] == "Finite"
    assert payload["label"] == "Finite(2)"
    assert payload["w"] == ["4/5"]


def test_bracketing_the_chaos_boundary(tent_shape):
    bracket = bisect_boundary(tent_shape, [F(4, 5)], [F(9, 10)], F(1, 10**4))
    assert bracket.width <= F(1, 10**4)
    assert bracket.lo_record.verdict == "Finite"
    assert bracket.hi_record.verdict == "Chaotic"
    assert bracket.lo_w[0] < bracket.midpoint_w[0] < bracket.hi_w[0]
    # the cascade accumulates near 0.8249
    mid = float(bracket.midpoint_w[0])
    assert 0.8248 < mid < 0.8250


def test_bisect_requires_straddling_verdicts(tent_shape):
    with pytest.raises(ConstraintViolation):
        bisect_boundary(tent_shape, [F(3, 5)], [F(4, 5)], F(1, 100))


def test_refinement_deepens_the_midpoint_verdict(tent_shape):
    bracket = bisect_boundary(tent_shape, [F(4, 5)], [F(9, 10)], F(1, 10**4))
    refined = refine_to_boundary(bracket, target_level=4)
    assert refined.level >= 4
    assert refined.record.verdict == "Boundary2Inf"


def test_perturbation_experiment_refuses_off_boundary_base(stunted_tent):
    with pytest.raises(ConstraintViolation):
        two_sided_perturbation_experiment(stunted_tent(F(4, 5)))


def test_budget_resolution_bounds_finite_labels(stunted_tent):
    shallow = Budgets.from_json({"k": 1})
    record = classify(stunted_tent(F(823, 1000)), shallow)
    # period 4 exceeds the 2^1 resolution, so the shallow run cannot
    # certify Finite(4)
    assert record.label != "Finite(4)"
