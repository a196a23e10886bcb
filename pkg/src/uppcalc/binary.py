"""Two-operand operations on UPP curves.

Every curve-valued result is minimized before it is returned. Min-plus
operations follow the dioid convention that ``+inf`` is absorbing; max-plus
operations are obtained by negation duality.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator
from fractions import Fraction
from typing import cast

from .curve import Curve
from .elements import Element, Point, Segment
from .errors import DomainError
from .events import get_event_bus
from .envelope import lower_envelope, parallel_aggregate, upper_envelope
from .rational import MINUS_INFINITY, PLUS_INFINITY, ZERO, ExtendedRational, fraction_lcm
from .sequence import Sequence, add_sequences, align
from .settings import ComputationSettings, resolve_settings


def _fold_lcm(lengths: Iterable[Fraction]) -> Fraction:
    result: Fraction | None = None
    for length in lengths:
        result = length if result is None else fraction_lcm(result, length)
    if result is None:
        raise DomainError.requires("lcm", "at least one period")
    return result


def _elements_until(curve: Curve, horizon: Fraction) -> tuple[Element, ...]:
    return curve.extend(horizon).elements


# -- minimum / maximum --------------------------------------------------


def minimum(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve:
    """Pointwise minimum."""

    return minimum_of((f, g), settings)


def maximum(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve:
    """Pointwise maximum, as ``-min(-f, -g)``."""

    return minimum_of((f.negate(), g.negate()), settings).negate()


def minimum_of(curves: Iterable[Curve], settings: ComputationSettings | None = None) -> Curve:
    """Pointwise minimum of any number of curves.

    Curves sharing the lowest asymptotic rate form the dominant group; every
    other curve is dominated after a whole number of common periods, computed
    from its worst deficit over one common period.
    """

    operands = list(curves)
    if not operands:
        raise DomainError.requires("minimum", "at least one curve")
    if len(operands) == 1:
        return operands[0].minimize()

    rates = [curve.asymptotic_rate for curve in operands]
    lowest = min(rates)
    common = _fold_lcm(curve.pseudo_period_length for curve in operands)
    latest = max(curve.pseudo_period_start for curve in operands)

    start = latest
    if any(rate != lowest for rate in rates):
        dominant = [curve for curve, rate in zip(operands, rates, strict=True) if rate == lowest]
        window = _window_minimum(dominant, latest, common, settings)
        for curve, rate in zip(operands, rates, strict=True):
            if rate == lowest:
                continue
            deficit = _worst_deficit(curve.cut(latest, latest + common), window)
            if deficit is not None and deficit < 0:
                periods = math.ceil(-deficit / (common * (rate - lowest).fraction)) if rate.is_finite else 0
                start = max(start, latest + periods * common)

    horizon = start + common
    elements = [element for curve in operands for element in _elements_until(curve, horizon)]
    base = lower_envelope(elements, (0, horizon), settings)
    height = ZERO if lowest.is_infinite else lowest * common
    return Curve.assemble(base, start, common, height).minimize()


def _window_minimum(
    curves: list[Curve], start: Fraction, length: Fraction, settings: ComputationSettings | None
) -> Sequence:
    if len(curves) == 1:
        return curves[0].cut(start, start + length)
    elements = [element for curve in curves for element in curve.cut(start, start + length).elements]
    return lower_envelope(elements, (start, start + length), settings)


def _worst_deficit(other: Sequence, dominant: Sequence) -> Fraction | None:
    """Infimum of ``other - dominant`` where both are finite, limits included.

    Raises when the dominant group is ``+inf`` at an instant where ``other``
    is not, since the minimum then grows at two different rates.
    """

    left, right = align(other, dominant)
    worst: Fraction | None = None
    for mine, theirs in zip(left.elements, right.elements, strict=True):
        for own, dom in _paired_values(mine, theirs):
            if dom.is_plus_infinity:
                if not own.is_plus_infinity:
                    raise DomainError.not_pseudo_periodic("minimum")
                continue
            if own.is_infinite or dom.is_infinite:
                continue
            gap = (own - dom).fraction
            worst = gap if worst is None else min(worst, gap)
    return worst


def _paired_values(first: Element, second: Element) -> Iterator[tuple[ExtendedRational, ExtendedRational]]:
    if isinstance(first, Point):
        yield first.value, second.value  # type: ignore[union-attr]
        return
    yield first.right_limit_at_start, second.right_limit_at_start  # type: ignore[union-attr]
    yield first.left_limit_at_end, second.left_limit_at_end  # type: ignore[union-attr]


# -- addition / subtraction ---------------------------------------------


def add(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve:
    """Pointwise sum; raises :class:`~uppcalc.errors.UndefinedFormError` on ``(+inf) + (-inf)``."""

    common = fraction_lcm(f.pseudo_period_length, g.pseudo_period_length)
    start = max(f.pseudo_period_start, g.pseudo_period_start)
    horizon = start + common
    base = add_sequences(f.extend(horizon), g.extend(horizon))
    if f.is_ultimately_infinite or g.is_ultimately_infinite:
        height = ZERO
    else:
        height = f.pseudo_period_height * (common / f.pseudo_period_length) + g.pseudo_period_height * (
            common / g.pseudo_period_length
        )
    return Curve.assemble(base, start, common, height).minimize()


def add_many(curves: Iterable[Curve], settings: ComputationSettings | None = None) -> Curve:
    """Sum of all ``curves`` as a balanced aggregation."""

    return parallel_aggregate(list(curves), add, settings)


def subtract(
    f: Curve, g: Curve, non_negative: bool = True, settings: ComputationSettings | None = None
) -> Curve:
    """``f - g``, clipped at 0 unless ``non_negative`` is false."""

    difference = add(f, g.negate(), settings)
    if not non_negative:
        return difference
    return maximum(difference, Curve.constant_value(ZERO), settings)


# -- min-plus convolution -----------------------------------------------


def convolution(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve:
    """``(f * g)(t) = inf { f(s) + g(t - s) : 0 <= s <= t }``.

    With ``use_fast_paths`` the registered convolution strategies are tried
    first; they never change the result, only the cost.
    """

    resolved = resolve_settings(settings)
    if resolved.use_fast_paths:
        from .runtime import get_plugins

        result = get_plugins().convolution_strategy(f, g, resolved)
        if result is not None:
            return result
    get_event_bus().emit("dispatch.selected", strategy="generic")
    return generic_convolution(f, g, resolved)


def generic_convolution(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve:
    """Convolution by decomposition into transient and periodic parts.

    ``f = f_T /\\ f_P`` where ``f_T`` keeps the values on ``[0, T[`` and is
    ``+inf`` afterwards, and ``f_P`` is ``+inf`` before ``T``; convolution
    distributes over the minimum, so the result is the minimum of the four
    cross terms.
    """

    components: list[Curve] = []
    f_transient, g_transient = f.transient_part(), g.transient_part()
    f_start, g_start = f.pseudo_period_start, g.pseudo_period_start

    if f_transient is not None and g_transient is not None:
        window = f_start + g_start
        pieces = list(
            convolve_elements(f.cut(0, f_start).elements, g.cut(0, g_start).elements)
        )
        if pieces:
            components.append(Curve.ultimately_constant(lower_envelope(pieces, (0, window), settings)))
    if f_transient is not None and not g.is_ultimately_plus_infinite:
        components.extend(_transient_with_periodic(f, g, settings))
    if g_transient is not None and not f.is_ultimately_plus_infinite:
        components.extend(_transient_with_periodic(g, f, settings))
    if not f.is_ultimately_plus_infinite and not g.is_ultimately_plus_infinite:
        components.extend(_periodic_with_periodic(f, g, settings))

    if not components:
        return Curve.constant_value(PLUS_INFINITY)
    return minimum_of(components, settings)


def _transient_with_periodic(
    transient_owner: Curve, periodic_owner: Curve, settings: ComputationSettings | None
) -> list[Curve]:
    t_start = transient_owner.pseudo_period_start
    p_start = periodic_owner.pseudo_period_start
    length = periodic_owner.pseudo_period_length
    horizon = t_start + p_start + length
    pieces = list(
        convolve_elements(
            transient_owner.cut(0, t_start).elements,
            periodic_owner.cut(p_start, horizon).elements,
        )
    )
    if not pieces:
        return []
    base = lower_envelope(pieces, (0, horizon), settings)
    return [Curve.assemble(base, t_start + p_start, length, periodic_owner.pseudo_period_height)]


def _periodic_with_periodic(f: Curve, g: Curve, settings: ComputationSettings | None) -> list[Curve]:
    common = fraction_lcm(f.pseudo_period_length, g.pseudo_period_length)
    f_start, g_start = f.pseudo_period_start, g.pseudo_period_start
    pieces = list(
        convolve_elements(
            f.cut(f_start, f_start + 2 * common).elements,
            g.cut(g_start, g_start + 2 * common).elements,
        )
    )
    if not pieces:
        return []
    start = f_start + g_start + common
    base = lower_envelope(pieces, (0, start + common), settings)
    rate = min(f.asymptotic_rate, g.asymptotic_rate)
    height = ZERO if rate.is_infinite else rate * common
    return [Curve.assemble(base, start, common, height)]


def convolve_elements(left: Iterable[Element], right: Iterable[Element]) -> Iterator[Element]:
    """Pairwise min-plus convolution of elements; pairs involving ``+inf`` vanish."""

    candidates = [element for element in right if not _is_plus_infinite(element)]
    for first in left:
        if _is_plus_infinite(first):
            continue
        for second in candidates:
            yield from _convolve_pair(first, second)


def _is_plus_infinite(element: Element) -> bool:
    if isinstance(element, Point):
        return element.value.is_plus_infinity
    return element.right_limit_at_start.is_plus_infinity


def _convolve_pair(first: Element, second: Element) -> Iterator[Element]:
    if isinstance(first, Point) and isinstance(second, Point):
        yield Point(first.time + second.time, first.value + second.value)
        return
    if isinstance(first, Point) or isinstance(second, Point):
        point, segment = (first, second) if isinstance(first, Point) else (second, first)
        yield segment.shift(point.time, point.value)  # type: ignore[union-attr, arg-type]
        return
    first, second = cast(Segment, first), cast(Segment, second)
    start = first.start_time + second.start_time
    end = first.end_time + second.end_time
    limit = first.right_limit_at_start + second.right_limit_at_start
    if limit.is_infinite or first.slope == second.slope:
        yield Segment(start, end, limit, ZERO if limit.is_infinite else first.slope)
        return
    low, high = (first, second) if first.slope < second.slope else (second, first)
    junction = start + low.length
    level = limit + low.slope * low.length
    yield Segment(start, junction, limit, low.slope)
    yield Point(junction, level)
    yield Segment(junction, end, level, high.slope)


# -- min-plus deconvolution ---------------------------------------------


def deconvolution(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve:
    """``(f / g)(t) = sup { f(t + u) - g(u) : u >= 0 }``; ``+inf`` when ``f`` grows faster than ``g``."""

    if f.asymptotic_rate > g.asymptotic_rate:
        return Curve.constant_value(PLUS_INFINITY)
    f_start, f_length = f.pseudo_period_start, f.pseudo_period_length
    common = fraction_lcm(f_length, g.pseudo_period_length)
    reach = max(f_start, g.pseudo_period_start) + common
    horizon = f_start + f_length
    pieces = list(deconvolve_elements(f.extend(horizon + reach).elements, g.extend(reach).elements))
    if not pieces:
        return Curve.constant_value(MINUS_INFINITY)
    base = upper_envelope(pieces, (0, horizon), settings)
    return Curve.assemble(base, f_start, f_length, f.pseudo_period_height).minimize()


def deconvolve_elements(left: Iterable[Element], right: Iterable[Element]) -> Iterator[Element]:
    """Pairwise deconvolution of elements of ``f`` by elements of ``g``.

    Pairs with ``f = -inf`` or ``g = +inf`` contribute nothing; otherwise an
    infinite operand makes the piece ``+inf``.
    """

    candidates = [element for element in right if not _is_plus_infinite(element)]
    for first in left:
        if _first_value(first).is_minus_infinity:
            continue
        for second in candidates:
            yield from _deconvolve_pair(first, second)


def _first_value(element: Element) -> ExtendedRational:
    return element.value if isinstance(element, Point) else element.right_limit_at_start


def _deconvolve_pair(first: Element, second: Element) -> Iterator[Element]:
    infinite = _first_value(first).is_plus_infinity or _first_value(second).is_minus_infinity
    if isinstance(first, Point) and isinstance(second, Point):
        yield Point(first.time - second.time, PLUS_INFINITY if infinite else first.value - second.value)
        return
    if isinstance(second, Point):
        first = cast(Segment, first)
        if infinite:
            yield Segment(first.start_time - second.time, first.end_time - second.time, PLUS_INFINITY, ZERO)
            return
        yield first.shift(-second.time, -second.value)
        return
    if isinstance(first, Point):
        start, end = first.time - second.end_time, first.time - second.start_time
        if infinite:
            yield Segment(start, end, PLUS_INFINITY, ZERO)
            return
        yield Segment(start, end, first.value - second.left_limit_at_end, second.slope)
        return
    start = first.start_time - second.end_time
    end = first.end_time - second.start_time
    if infinite:
        yield Segment(start, end, PLUS_INFINITY, ZERO)
        return
    limit = first.right_limit_at_start - second.left_limit_at_end
    if first.slope == second.slope:
        yield Segment(start, end, limit, first.slope)
        return
    steep, steep_length, flat = (
        (first.slope, first.length, second.slope)
        if first.slope > second.slope
        else (second.slope, second.length, first.slope)
    )
    junction = start + steep_length
    level = limit + steep * steep_length
    yield Segment(start, junction, limit, steep)
    yield Point(junction, level)
    yield Segment(junction, end, level, flat)


# -- max-plus -----------------------------------------------------------


def max_plus_convolution(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve:
    """``sup { f(s) + g(t - s) : 0 <= s <= t }``."""

    return generic_convolution(f.negate(), g.negate(), settings).negate()


def max_plus_deconvolution(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve:
    """``inf { f(t + u) - g(u) : u >= 0 }``."""

    return deconvolution(f.negate(), g.negate(), settings).negate()


# -- deviations ---------------------------------------------------------


def vertical_deviation(alpha: Curve, beta: Curve, settings: ComputationSettings | None = None) -> ExtendedRational:
    """``sup { alpha(t) - beta(t) : t >= 0 }``; instants where both are the same infinity do not count."""

    if alpha.asymptotic_rate > beta.asymptotic_rate:
        return PLUS_INFINITY
    common = fraction_lcm(alpha.pseudo_period_length, beta.pseudo_period_length)
    horizon = max(alpha.pseudo_period_start, beta.pseudo_period_start) + common
    left, right = align(alpha.extend(horizon), beta.extend(horizon))
    best = MINUS_INFINITY
    for mine, theirs in zip(left.elements, right.elements, strict=True):
        for own, other in _paired_values(mine, theirs):
            if own.is_infinite and own == other:
                continue
            if own.is_plus_infinity or other.is_minus_infinity:
                return PLUS_INFINITY
            if own.is_minus_infinity or other.is_plus_infinity:
                continue
            best = max(best, own - other)
    return best


def horizontal_deviation(alpha: Curve, beta: Curve, settings: ComputationSettings | None = None) -> ExtendedRational:
    """Worst-case horizontal distance ``sup_t inf { h >= 0 : alpha(t) <= beta(t + h) }``.

    Computed as ``max(0, sup_t (beta_lower_inverse(alpha(t)) - t))``; requires
    ``alpha`` finite and nondecreasing and ``beta`` nondecreasing.
    """

    from .unary import composition, lower_pseudo_inverse

    inverse = lower_pseudo_inverse(beta, settings)
    delay = vertical_deviation(composition(inverse, alpha, settings), _identity(), settings)
    return max(delay, ZERO)


def dominates(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> bool:
    """True iff ``f(t) <= g(t)`` for every ``t >= 0``."""

    return vertical_deviation(f, g, settings) <= 0


def _identity() -> Curve:
    return Curve(Sequence((Point(0, ZERO), Segment(0, 1, ZERO, 1))), 0, 1, 1)
