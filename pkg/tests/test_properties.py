from __future__ import annotations

import pytest

from uppcalc import Curve, Point, Segment, Sequence, classify, rate_latency, sigma_rho, stair
from uppcalc.properties import PROPERTY_NAMES, check_property


def _sawtooth() -> Curve:
    base = Sequence(
        (Point(0, 0), Segment(0, 2, 0, 1), Point(2, 2), Segment(2, 3, 2, 0), Point(3, 2), Segment(3, 4, 2, 1))
    )
    return Curve(base, 2, 2, 1)


def test_token_bucket_shape() -> None:
    flags = classify(sigma_rho(4, 1))
    assert flags.is_concave
    assert flags.is_sub_additive
    assert flags.is_non_decreasing
    assert flags.is_non_negative
    assert flags.is_left_continuous
    assert not flags.is_right_continuous
    assert not flags.is_convex


def test_rate_latency_shape() -> None:
    flags = classify(rate_latency(3, 3))
    assert flags.is_convex
    assert flags.is_continuous
    assert flags.is_super_additive
    assert not flags.is_concave


def test_stair_is_sub_additive_but_not_concave() -> None:
    curve = stair(2, 3)
    assert check_property(curve, "subAdditive")
    assert check_property(curve, "leftContinuous")
    assert not check_property(curve, "rightContinuous")
    assert not check_property(curve, "concave")


def test_sawtooth_shape() -> None:
    flags = classify(_sawtooth())
    assert flags.is_continuous
    assert flags.is_non_decreasing
    assert not flags.is_convex
    assert not flags.is_concave


def test_negative_curves() -> None:
    curve = rate_latency(1, 0).negate()
    assert not check_property(curve, "nonNegative")
    assert not check_property(curve, "nonDecreasing")
    assert check_property(curve, "concave")


@pytest.mark.parametrize("name", PROPERTY_NAMES)
def test_classify_agrees_with_check_property(name: str) -> None:
    curve = stair(1, 2)
    assert classify(curve).get(name) is check_property(curve, name)  # type: ignore[arg-type]
