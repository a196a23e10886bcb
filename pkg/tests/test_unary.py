from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from uppcalc import (
    Curve,
    composition,
    constant,
    equivalent,
    lower_pseudo_inverse,
    rate_latency,
    sigma_rho,
    stair,
    sub_additive_closure,
    sub_additive_closure_window,
    super_additive_closure,
    upper_pseudo_inverse,
    zero,
)
from uppcalc.errors import ClosureConvergenceError, DomainError
from uppcalc.events import get_event_bus

from strategies import curves, grid


def test_lower_pseudo_inverse_of_rate_latency() -> None:
    inverse = lower_pseudo_inverse(rate_latency(2, 3))
    assert inverse.value_at(4) == 5
    assert inverse.value_at(0) == 0
    assert inverse.right_limit_at(0) == 3
    assert inverse.asymptotic_rate == Fraction(1, 2)


def test_pseudo_inverses_of_a_token_bucket() -> None:
    curve = sigma_rho(4, 1)
    assert upper_pseudo_inverse(curve).value_at(2) == 0
    assert upper_pseudo_inverse(curve).value_at(6) == 2
    lower = lower_pseudo_inverse(curve)
    assert [lower.value_at(y) for y in (0, 2, 4, 6)] == [0, 0, 0, 2]


def test_pseudo_inverse_needs_a_nondecreasing_curve() -> None:
    with pytest.raises(DomainError):
        lower_pseudo_inverse(rate_latency(1, 0).negate())


def test_composition_rescales_time() -> None:
    composed = composition(stair(2, 3), rate_latency(2, 0))
    assert [composed.value_at(t) for t in (0, 1, Fraction(3, 2), 2, 5)] == [0, 2, 2, 4, 8]


def test_composition_needs_a_nonnegative_inner_curve() -> None:
    with pytest.raises(DomainError):
        composition(rate_latency(1, 0), constant(-1))


def test_closure_of_a_sub_additive_curve_is_the_curve() -> None:
    curve = sigma_rho(4, 1)
    assert equivalent(sub_additive_closure(curve), curve)


def test_closure_of_rate_latency_collapses_to_zero() -> None:
    assert equivalent(sub_additive_closure(rate_latency(3, 2)), zero())


def test_closure_resets_the_origin() -> None:
    closure = sub_additive_closure(constant(2))
    assert closure.value_at(0) == 0
    assert closure.value_at(5) == 2


def test_closure_rejects_negative_values_at_the_origin() -> None:
    with pytest.raises(DomainError):
        sub_additive_closure(constant(-1))


def test_super_additive_closure_of_a_convex_curve() -> None:
    curve = rate_latency(3, 2)
    assert equivalent(super_additive_closure(curve), curve)


def test_closure_window_converges_and_reports_iterations() -> None:
    with get_event_bus().record("closure.iteration") as recorder:
        window = sub_additive_closure_window(stair(2, 3), 12)
    assert window.defined_until == 12
    assert [window.value_at(t) for t in (0, 1, 4, 11)] == [0, 2, 4, 8]
    assert len(recorder) >= 1


def test_closure_window_gives_up_after_the_iteration_bound() -> None:
    with pytest.raises(ClosureConvergenceError):
        sub_additive_closure_window(rate_latency(1, 1), 64, max_iterations=1)


@settings(max_examples=50, deadline=None)
@given(curves(non_decreasing=True, non_negative=True), curves())
def test_composition_matches_pointwise_evaluation(inner: Curve, outer: Curve) -> None:
    composed = composition(outer, inner)
    horizon = inner.pseudo_period_start + 2 * inner.pseudo_period_length
    for t in grid(horizon, Fraction(1, 2)):
        assert composed.value_at(t) == outer.value_at(inner.value_at(t).fraction)


@settings(max_examples=50, deadline=None)
@given(curves(non_negative=True))
def test_closure_window_agrees_with_the_closure(curve: Curve) -> None:
    horizon = curve.pseudo_period_start + 2 * curve.pseudo_period_length
    closure = sub_additive_closure(curve)
    window = sub_additive_closure_window(curve, horizon)
    for t in grid(horizon - Fraction(1, 2), Fraction(1, 2)):
        assert window.value_at(t) == closure.value_at(t)
