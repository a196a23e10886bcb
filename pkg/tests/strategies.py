"""Hypothesis strategies for small curves and brute-force oracles."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from fractions import Fraction

from hypothesis import strategies as st

from uppcalc import Curve, ExtendedRational, Point, Segment, Sequence
from uppcalc.rational import MINUS_INFINITY, PLUS_INFINITY, fraction_lcm

DENOMINATORS = (1, 2, 4)


def small_fractions(low: int = -4, high: int = 8) -> st.SearchStrategy[Fraction]:
    return st.builds(
        lambda numerator, denominator: Fraction(numerator, denominator),
        st.integers(low, high),
        st.sampled_from(DENOMINATORS),
    )


@st.composite
def curves(draw: st.DrawFn, *, non_decreasing: bool = False, non_negative: bool = False) -> Curve:
    """Finite curves of at most six elements: breakpoints at 0, ``T`` and one more.

    ``non_decreasing`` curves start at a value >= 0 when ``non_negative`` is
    also set.
    """

    start = Fraction(draw(st.integers(0, 4)), draw(st.sampled_from((1, 2))))
    length = Fraction(draw(st.integers(1, 4)), draw(st.sampled_from((1, 2))))
    end = start + length
    inner = draw(st.lists(small_fractions(1, 16), max_size=1))
    times = sorted({Fraction(0), start, *(t for t in inner if 0 < t < end)} - {end})

    floor_value = Fraction(0) if non_negative else Fraction(-4)
    level = draw(small_fractions(0 if non_negative else -4, 4))
    elements: list[Point | Segment] = []
    for index, t in enumerate(times):
        segment_end = times[index + 1] if index + 1 < len(times) else end
        if non_decreasing:
            level = level if index == 0 else max(level, draw(small_fractions(0, 4)) + level)
            point_value = level
            limit = point_value + draw(small_fractions(0, 4))
            slope = draw(small_fractions(0, 4))
        else:
            point_value = draw(small_fractions(-4 if not non_negative else 0, 4))
            limit = draw(small_fractions(-4 if not non_negative else 0, 4))
            slope = draw(small_fractions(-2, 2)) if not non_negative else draw(small_fractions(0, 2))
        elements.append(Point(t, max(point_value, floor_value)))
        elements.append(Segment(t, segment_end, max(limit, floor_value), slope))
        level = limit + slope * (segment_end - t)

    base = Sequence(elements)
    at_start = base.value_at(start)
    before_end = base.left_limit_at(end)
    if non_decreasing or non_negative:
        height = max(Fraction(0), (before_end - at_start).fraction) + draw(small_fractions(0, 4))
    else:
        height = draw(small_fractions(-4, 4))
    return Curve(base, start, length, height)


def curve_pairs(**kwargs: bool) -> st.SearchStrategy[tuple[Curve, Curve]]:
    return st.tuples(curves(**kwargs), curves(**kwargs))


# -- oracles --------------------------------------------------------------


def grid(horizon: Fraction, step: Fraction = Fraction(1, 4)) -> Iterator[Fraction]:
    t = Fraction(0)
    while t <= horizon:
        yield t
        t += step


def comparison_horizon(*operands: Curve) -> Fraction:
    common = Fraction(1)
    for curve in operands:
        common = fraction_lcm(common, curve.pseudo_period_length)
    return sum((curve.pseudo_period_start for curve in operands), Fraction(0)) + 2 * common


def oracle_horizon(result: Curve, *operands: Curve) -> Fraction:
    """Cover the operands and three periods of the result past its own start."""

    own = result.pseudo_period_start + 3 * result.pseudo_period_length
    return max(comparison_horizon(*operands), own)


def _breaks(curve: Curve, horizon: Fraction) -> list[Fraction]:
    return list(curve.extend(horizon + 1).breakpoints())


def _extend(values: Iterable[ExtendedRational], pick: str) -> ExtendedRational:
    collected = list(values)
    if not collected:
        return PLUS_INFINITY if pick == "min" else MINUS_INFINITY
    return min(collected) if pick == "min" else max(collected)


def _sums_at(f: Curve, g: Curve, s: Fraction, t: Fraction) -> Iterator[ExtendedRational]:
    """``f(s) + g(t - s)`` and its one-sided limits in ``s`` inside ``[0, t]``."""

    yield f.value_at(s) + g.value_at(t - s)
    if s > 0:
        yield f.left_limit_at(s) + g.right_limit_at(t - s)
    if s < t:
        yield f.right_limit_at(s) + g.left_limit_at(t - s)


def convolution_at(f: Curve, g: Curve, t: Fraction, *, pick: str = "min") -> ExtendedRational:
    """Brute-force ``inf`` (or ``sup``) of ``f(s) + g(t - s)`` over candidate points."""

    candidates = {Fraction(0), t}
    candidates.update(b for b in _breaks(f, t) if b <= t)
    candidates.update(t - b for b in _breaks(g, t) if b <= t)
    return _extend((value for s in candidates for value in _sums_at(f, g, s, t)), pick)


def deconvolution_at(f: Curve, g: Curve, t: Fraction, reach: Fraction, *, pick: str = "max") -> ExtendedRational:
    """Brute-force ``sup`` (or ``inf``) of ``f(t + u) - g(u)`` for ``u`` in ``[0, reach]``."""

    candidates = {Fraction(0), reach}
    candidates.update(b for b in _breaks(g, reach) if b <= reach)
    candidates.update(b - t for b in _breaks(f, t + reach) if t <= b <= t + reach)
    values: list[ExtendedRational] = []
    for u in candidates:
        values.append(f.value_at(t + u) - g.value_at(u))
        if u > 0:
            values.append(f.left_limit_at(t + u) - g.left_limit_at(u))
        if u < reach:
            values.append(f.right_limit_at(t + u) - g.right_limit_at(u))
    return _extend(values, pick)


def vertical_deviation_oracle(f: Curve, g: Curve) -> ExtendedRational:
    horizon = comparison_horizon(f, g)
    values: list[ExtendedRational] = []
    for t in sorted({*_breaks(f, horizon), *_breaks(g, horizon), horizon}):
        values.append(f.value_at(t) - g.value_at(t))
        if t > 0:
            values.append(f.left_limit_at(t) - g.left_limit_at(t))
        values.append(f.right_limit_at(t) - g.right_limit_at(t))
    return max(values)
