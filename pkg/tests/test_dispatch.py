from __future__ import annotations

import pytest

from uppcalc import ComputationSettings, Curve, convolution, delay, equivalent, rate_latency, sigma_rho, zero
from uppcalc.binary import generic_convolution, minimum
from uppcalc.dispatch import (
    concave_minimum,
    delay_shift,
    rate_latency_pair,
    sub_additive_dominance,
    try_strategies,
)
from uppcalc.events import get_event_bus

SEQUENTIAL = ComputationSettings.sequential()


def test_delay_shift_moves_the_other_curve() -> None:
    shifted = delay_shift(delay(2), sigma_rho(1, 1), SEQUENTIAL)
    assert shifted is not None
    assert shifted.value_at(2) == 0
    assert shifted.right_limit_at(2) == 1
    assert shifted.value_at(3) == 2
    assert delay_shift(sigma_rho(1, 1), delay(2), SEQUENTIAL) == shifted


def test_delay_shift_needs_a_nondecreasing_partner() -> None:
    assert delay_shift(delay(2), rate_latency(1, 0).negate(), SEQUENTIAL) is None
    assert delay_shift(rate_latency(1, 0), sigma_rho(1, 1), SEQUENTIAL) is None


def test_rate_latency_pair_only_matches_tagged_curves() -> None:
    result = rate_latency_pair(rate_latency(3, 2), rate_latency(5, 1), SEQUENTIAL)
    assert result is not None and equivalent(result, rate_latency(3, 3))
    assert rate_latency_pair(rate_latency(3, 2), sigma_rho(1, 1), SEQUENTIAL) is None


def test_concave_minimum_requires_curves_through_the_origin() -> None:
    f, g = sigma_rho(4, 1), sigma_rho(2, 3)
    result = concave_minimum(f, g, SEQUENTIAL)
    assert result is not None and equivalent(result, minimum(f, g))
    assert concave_minimum(sigma_rho(4, 1), rate_latency(2, 1), SEQUENTIAL) is None


def test_sub_additive_dominance_returns_the_smaller_curve() -> None:
    assert sub_additive_dominance(sigma_rho(1, 1), sigma_rho(2, 1)) == sigma_rho(1, 1)
    assert sub_additive_dominance(sigma_rho(2, 1), sigma_rho(1, 1)) == sigma_rho(1, 1)
    assert sub_additive_dominance(rate_latency(1, 1), zero()) == zero()
    assert sub_additive_dominance(sigma_rho(1, 1), rate_latency(1, 1)) is None


@pytest.mark.parametrize(
    ("f", "g", "strategy"),
    [
        (delay(2), sigma_rho(1, 1), "delay-shift"),
        (rate_latency(3, 2), rate_latency(5, 1), "rate-latency"),
        (sigma_rho(4, 1), sigma_rho(2, 3), "concave-minimum"),
        (rate_latency(1, 1), zero(), "sub-additive-dominance"),
    ],
)
def test_strategies_agree_with_the_generic_convolution(f: Curve, g: Curve, strategy: str) -> None:
    with get_event_bus().record("dispatch.selected") as recorder:
        fast = try_strategies(f, g, SEQUENTIAL)
    assert recorder.payloads() == [{"strategy": strategy}]
    assert fast is not None
    assert equivalent(fast, generic_convolution(f, g, SEQUENTIAL))


def test_generic_path_when_fast_paths_are_disabled() -> None:
    settings = SEQUENTIAL.model_copy(update={"use_fast_paths": False})
    with get_event_bus().record("dispatch.selected") as recorder:
        result = convolution(rate_latency(3, 2), rate_latency(5, 1), settings)
    assert recorder.payloads() == [{"strategy": "generic"}]
    assert equivalent(result, rate_latency(3, 3))


def test_no_strategy_applies_to_unrelated_curves() -> None:
    f = rate_latency(2, 1)
    g = sigma_rho(3, 1).delay_by(1)
    assert try_strategies(f, g, SEQUENTIAL) is None
