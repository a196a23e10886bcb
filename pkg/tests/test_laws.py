"""Algebraic laws of the min-plus operators on generated curves."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings

from uppcalc import (
    ComputationSettings,
    Curve,
    add,
    convolution,
    delay,
    dominates,
    equivalent,
    lower_pseudo_inverse,
    max_plus_convolution,
    max_plus_identity,
    maximum,
    minimum,
    sub_additive_closure,
    upper_pseudo_inverse,
)
from uppcalc.properties import is_non_decreasing

from strategies import curves, grid

THREADS = ComputationSettings(use_parallelism=True, parallelism_threshold=1, worker_count=4, executor="thread")
SEQUENTIAL = ComputationSettings.sequential()


@settings(max_examples=100, deadline=None)
@given(curves(), curves())
def test_pointwise_operators_commute(f: Curve, g: Curve) -> None:
    assert equivalent(minimum(f, g), minimum(g, f))
    assert equivalent(maximum(f, g), maximum(g, f))
    assert equivalent(add(f, g), add(g, f))


@settings(max_examples=100, deadline=None)
@given(curves(), curves(), curves())
def test_minimum_is_associative(f: Curve, g: Curve, h: Curve) -> None:
    assert equivalent(minimum(minimum(f, g), h), minimum(f, minimum(g, h)))


@settings(max_examples=100, deadline=None)
@given(curves(), curves())
def test_convolution_commutes(f: Curve, g: Curve) -> None:
    assert equivalent(convolution(f, g, SEQUENTIAL), convolution(g, f, SEQUENTIAL))


@settings(max_examples=50, deadline=None)
@given(curves(non_negative=True), curves(non_negative=True), curves(non_negative=True))
def test_convolution_is_associative(f: Curve, g: Curve, h: Curve) -> None:
    left = convolution(convolution(f, g, SEQUENTIAL), h, SEQUENTIAL)
    right = convolution(f, convolution(g, h, SEQUENTIAL), SEQUENTIAL)
    assert equivalent(left, right)


@settings(max_examples=100, deadline=None)
@given(curves())
def test_identities(f: Curve) -> None:
    assert equivalent(convolution(f, delay(0), SEQUENTIAL), f)
    assert equivalent(max_plus_convolution(f, max_plus_identity(), SEQUENTIAL), f)


@settings(max_examples=50, deadline=None)
@given(curves(), curves(), curves())
def test_convolution_distributes_over_minimum(f: Curve, g: Curve, h: Curve) -> None:
    left = convolution(f, minimum(g, h), SEQUENTIAL)
    right = minimum(convolution(f, g, SEQUENTIAL), convolution(f, h, SEQUENTIAL))
    assert equivalent(left, right)


@settings(max_examples=50, deadline=None)
@given(curves(non_negative=True))
def test_closure_is_idempotent_and_below_the_curve(f: Curve) -> None:
    closure = sub_additive_closure(f, SEQUENTIAL)
    assert equivalent(sub_additive_closure(closure, SEQUENTIAL), closure)
    assert closure.value_at(0) == 0
    assert dominates(closure, minimum(f, delay(0)))


@settings(max_examples=100, deadline=None)
@given(curves(non_decreasing=True, non_negative=True))
def test_pseudo_inverses_bracket_the_curve(f: Curve) -> None:
    lower = lower_pseudo_inverse(f)
    upper = upper_pseudo_inverse(f)

    assert is_non_decreasing(lower)
    assert dominates(lower, upper)
    horizon = f.pseudo_period_start + 2 * f.pseudo_period_length
    for t in grid(horizon, Fraction(1, 2)):
        level = f.value_at(t)
        assert lower.value_at(level.fraction) <= t
        assert upper.value_at(level.fraction) >= t


@settings(max_examples=50, deadline=None)
@given(curves(), curves())
def test_parallel_results_match_sequential(f: Curve, g: Curve) -> None:
    assert convolution(f, g, THREADS) == convolution(f, g, SEQUENTIAL)
    assert minimum(f, g, THREADS) == minimum(f, g, SEQUENTIAL)
