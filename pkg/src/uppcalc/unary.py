"""Single-operand operators: pseudo-inverses, composition and additive closures."""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from fractions import Fraction
from typing import cast

from .curve import Curve
from .elements import Element, Point, Segment
from .envelope import lower_envelope, parallel_aggregate
from .errors import ClosureConvergenceError, DomainError
from .events import get_event_bus
from .properties import is_non_decreasing
from .rational import MINUS_INFINITY, PLUS_INFINITY, ZERO, ExtendedRational, TimeLike, as_time, fraction_lcm
from .sequence import Sequence
from .settings import ComputationSettings

logger = logging.getLogger(__name__)

MAX_CLOSURE_ITERATIONS = 64


# -- pseudo-inverses ----------------------------------------------------


@dataclass(frozen=True, slots=True)
class _InversePiece:
    """``g(y) = origin + slope * (y - low)`` on ``]low, high]``."""

    low: ExtendedRational
    high: ExtendedRational
    origin: ExtendedRational
    slope: Fraction

    def at(self, y: Fraction) -> ExtendedRational:
        if self.slope == 0:
            return self.origin
        return self.origin + self.slope * (y - self.low.fraction)


def _inverse_pieces(values: Sequence) -> list[_InversePiece]:
    """Sweep a nondecreasing sequence into ``inf { t : f(t) >= y }`` pieces."""

    pieces: list[_InversePiece] = []
    level = MINUS_INFINITY
    for element in values:
        if level.is_plus_infinity:
            break
        if isinstance(element, Point):
            if element.value > level:
                pieces.append(_InversePiece(level, element.value, ExtendedRational.finite(element.time), Fraction(0)))
                level = element.value
            continue
        start = ExtendedRational.finite(element.start_time)
        if element.right_limit_at_start > level:
            pieces.append(_InversePiece(level, element.right_limit_at_start, start, Fraction(0)))
            level = element.right_limit_at_start
        if element.slope > 0 and level.is_finite:
            end = element.left_limit_at_end
            pieces.append(_InversePiece(level, end, start, 1 / element.slope.fraction))
            level = end
    if not level.is_plus_infinity:
        pieces.append(_InversePiece(level, PLUS_INFINITY, PLUS_INFINITY, Fraction(0)))
    return pieces


def _pieces_to_sequence(pieces: list[_InversePiece], horizon: Fraction) -> Sequence:
    elements: list[Element] = []
    for piece in pieces:
        if piece.high < 0:
            continue
        if not elements:
            elements.append(Point(0, piece.at(Fraction(0))))
        low = max(piece.low, ZERO).fraction
        if low >= horizon:
            break
        high = horizon if piece.high.is_infinite or piece.high >= horizon else piece.high.fraction
        if low < high:
            elements.append(Segment(low, high, piece.at(low), ZERO if piece.origin.is_infinite else piece.slope))
        if 0 < high < horizon:
            elements.append(Point(high, piece.at(high)))
    return Sequence(elements).canonicalize()


def lower_pseudo_inverse(f: Curve, settings: ComputationSettings | None = None) -> Curve:
    """``y -> inf { t >= 0 : f(t) >= y }`` for a nondecreasing ``f``."""

    _require_non_decreasing(f, "lower pseudo-inverse")
    rate = f.asymptotic_rate
    if rate.is_finite and rate > 0:
        start, length, height = f.pseudo_period_start, f.pseudo_period_length, f.pseudo_period_height.fraction
        inverse_start = max(Fraction(0), f.value_at(start).fraction + height)
        horizon = inverse_start + height
        copies = max(2, math.ceil((horizon - f.value_at(start).fraction) / height))
        pieces = _inverse_pieces(f.extend(start + (copies + 1) * length))
        base = _pieces_to_sequence(pieces, horizon)
        return Curve(base, inverse_start, height, length).minimize()

    pieces = _inverse_pieces(f.base_sequence)
    finite_levels = [piece.high.fraction for piece in pieces if piece.high.is_finite]
    horizon = max([Fraction(0), *finite_levels]) + 1
    tail = pieces[-1].origin
    return Curve.ultimately_constant(_pieces_to_sequence(pieces, horizon), tail).minimize()


def upper_pseudo_inverse(f: Curve, settings: ComputationSettings | None = None) -> Curve:
    """``y -> sup { t >= 0 : f(t) <= y }``, the right-continuous version of the lower inverse.

    Levels below ``f(0)`` map to 0.
    """

    lower = lower_pseudo_inverse(f, settings)
    base = lower.base_sequence
    elements = [
        Point(element.time, base.right_limit_at(element.time)) if isinstance(element, Point) else element
        for element in base
    ]
    return Curve.assemble(
        Sequence(elements),
        lower.pseudo_period_start,
        lower.pseudo_period_length,
        lower.pseudo_period_height,
    ).minimize()


def _require_non_decreasing(f: Curve, operation: str) -> None:
    if not is_non_decreasing(f):
        raise DomainError.requires(operation, "a nondecreasing curve")


# -- composition --------------------------------------------------------


def composition(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve:
    """``h(t) = f(g(t))`` for ``g`` nondecreasing and nonnegative.

    Where ``g`` is ``+inf`` the result is ``+inf``.
    """

    _require_non_decreasing(g, "composition")
    if g.value_at(0) < 0:
        raise DomainError.requires("composition", "a nonnegative inner curve")

    g_start, g_length = g.pseudo_period_start, g.pseudo_period_length
    g_height = g.pseudo_period_height
    if g.is_ultimately_infinite or g_height == 0:
        start, length, height = g_start, g_length, ZERO
    else:
        step = g_height.fraction
        periods = fraction_lcm(step, f.pseudo_period_length) / step
        length = periods * g_length
        height = f.pseudo_period_height * (periods * step / f.pseudo_period_length)
        if f.is_ultimately_infinite:
            height = ZERO
        start = max(g_start, _first_reaching(g, f.pseudo_period_start))
        if g.value_at(start) < f.pseudo_period_start:
            start += length

    inner = g.extend(start + length)
    base = Sequence(list(_compose_elements(f, inner))).canonicalize()
    return Curve.assemble(base, start, length, height).minimize()


def _first_reaching(g: Curve, level: Fraction) -> Fraction:
    """``inf { t : g(t) >= level }`` for a nondecreasing, ultimately increasing ``g``."""

    if level <= 0 or g.value_at(0) >= level:
        return Fraction(0)
    value = lower_pseudo_inverse(g).value_at(level)
    return value.fraction


def _compose_elements(f: Curve, inner: Sequence) -> Iterator[Element]:
    for element in inner:
        if isinstance(element, Point):
            value = element.value
            yield Point(element.time, value if value.is_plus_infinity else f.value_at(value.fraction))
            continue
        limit = element.right_limit_at_start
        if limit.is_plus_infinity:
            yield element
            continue
        if element.slope == 0:
            yield Segment(element.start_time, element.end_time, f.value_at(limit.fraction), ZERO)
            continue
        yield from _stretch(f, element)


def _stretch(f: Curve, element: Segment) -> Iterator[Element]:
    low, high = element.right_limit_at_start.fraction, element.left_limit_at_end.fraction
    scale = element.slope.fraction
    inner = f.cut(low, high).elements[1:]
    for piece in inner:
        if isinstance(piece, Point):
            yield Point(element.start_time + (piece.time - low) / scale, piece.value)
            continue
        limit = piece.right_limit_at_start
        yield Segment(
            element.start_time + (piece.start_time - low) / scale,
            element.start_time + (piece.end_time - low) / scale,
            limit,
            ZERO if limit.is_infinite else piece.slope * scale,
        )


# -- closures -----------------------------------------------------------


def dirac() -> Curve:
    """The convolution identity: 0 at 0 and ``+inf`` afterwards."""

    return Curve.ultimately_constant(Sequence((Point(0, ZERO), Segment(0, 1, PLUS_INFINITY, ZERO)))).minimize()


def sub_additive_closure(f: Curve, settings: ComputationSettings | None = None) -> Curve:
    """``inf { f^n : n >= 0 }`` with ``f^0`` the convolution identity.

    The curve is split into elements whose closures have closed forms; the
    closure of a minimum is the convolution of the closures. Curves whose
    closure is unbounded below (``f(0) < 0``, ``f(0+) < 0`` or ``-inf``
    values) are rejected.
    """

    from .binary import convolution

    _require_bounded_closure(f)
    closures = list(_element_closures(f, settings))
    if not closures:
        return dirac()
    logger.debug("sub-additive closure of %r from %d element closures", f, len(closures))
    return parallel_aggregate(closures, convolution, settings)


def super_additive_closure(f: Curve, settings: ComputationSettings | None = None) -> Curve:
    """``sup { f^n : n >= 0 }`` in max-plus, as ``-(-f)*``."""

    return sub_additive_closure(f.negate(), settings).negate()


def _require_bounded_closure(f: Curve) -> None:
    if f.value_at(0) < 0:
        raise DomainError.unbounded_closure("the value at 0 is negative")
    if f.right_limit_at(0) < 0:
        raise DomainError.unbounded_closure("the right limit at 0 is negative")
    if f.base_sequence.infimum().is_minus_infinity:
        raise DomainError.unbounded_closure("the curve takes the value -inf")


def _element_closures(f: Curve, settings: ComputationSettings | None) -> Iterator[Curve]:
    start = f.pseudo_period_start
    if start > 0:
        for element in f.base_sequence.cut(0, start):
            closure = _closure_of(element, settings)
            if closure is not None:
                yield closure
    if f.is_ultimately_plus_infinite:
        return
    if f.is_ultimately_affine:
        yield _ray_closure(start, f.value_at(start), f.pseudo_period_height / f.pseudo_period_length)
        return
    repeat = _spot(f.pseudo_period_length, f.pseudo_period_height)
    for element in f.period_window():
        closure = _periodic_closure(element, repeat, settings)
        if closure is not None:
            yield closure


def _closure_of(element: Element, settings: ComputationSettings | None) -> Curve | None:
    if isinstance(element, Point):
        if element.value.is_plus_infinity or element.time == 0:
            return None
        return _spot(element.time, element.value)
    if element.right_limit_at_start.is_plus_infinity:
        return None
    return _segment_closure(element, settings)


def _spot(period: Fraction, height: ExtendedRational) -> Curve:
    """``k * height`` at every ``k * period`` and ``+inf`` elsewhere."""

    base = Sequence((Point(0, ZERO), Segment(0, period, PLUS_INFINITY, ZERO)))
    return Curve(base, 0, period, height)


def _segment_closure(segment: Segment, settings: ComputationSettings | None) -> Curve:
    """Closure of one open segment; its powers are the segments ``]n*a, n*b[``."""

    a, b = segment.start_time, segment.end_time
    intercept = segment.right_limit_at_start - segment.slope * a
    start = (math.floor(a / (b - a)) + 1) * b
    if intercept >= 0:
        length, height = b, intercept + segment.slope * b
        count = math.ceil((start + length) / b) + 1
    else:
        length, height = a, segment.right_limit_at_start
        count = math.ceil((start + length) / a)
    powers: list[Element] = [Point(0, ZERO)]
    powers.extend(
        Segment(n * a, n * b, intercept * n + segment.slope * (n * a), segment.slope) for n in range(1, count + 1)
    )
    base = lower_envelope(powers, (0, start + length), settings)
    return Curve.assemble(base, start, length, height)


def _ray_closure(origin: Fraction, value: ExtendedRational, slope: ExtendedRational) -> Curve:
    """Closure of the affine tail ``value + slope * (t - origin)`` on ``[origin, +inf[``."""

    if origin == 0:
        elements: list[Element] = [
            Point(0, ZERO),
            Segment(0, 1, value, slope),
            Point(1, value + slope),
            Segment(1, 2, value + slope, slope),
        ]
        return Curve(Sequence(elements), 1, 1, slope)
    prefix = (Point(0, ZERO), Segment(0, origin, PLUS_INFINITY, ZERO), Point(origin, value))
    if value - slope * origin >= 0:
        return Curve(Sequence((*prefix, Segment(origin, origin + 1, value, slope))), origin, 1, slope)
    return Curve(Sequence((*prefix, Segment(origin, 2 * origin, value, slope))), origin, origin, value)


def _periodic_closure(element: Element, repeat: Curve, settings: ComputationSettings | None) -> Curve | None:
    """``delta_0 /\\ (e * e* * s*)`` where ``s*`` repeats ``e`` every period."""

    from .binary import generic_convolution, minimum

    if isinstance(element, Point):
        if element.value.is_plus_infinity:
            return None
        closure = _spot(element.time, element.value) if element.time > 0 else dirac()
    else:
        if element.right_limit_at_start.is_plus_infinity:
            return None
        closure = _segment_closure(element, settings)
    repeated = generic_convolution(generic_convolution(_element_curve(element), closure, settings), repeat, settings)
    return minimum(dirac(), repeated, settings)


def _element_curve(element: Element) -> Curve:
    """``element`` on its support and ``+inf`` everywhere else."""

    begin, end = element.start_time, element.end_time
    pieces: list[Element] = []
    if begin > 0:
        pieces.extend((Point(0, PLUS_INFINITY), Segment(0, begin, PLUS_INFINITY, ZERO)))
    if isinstance(element, Segment):
        pieces.extend((Point(begin, PLUS_INFINITY), element, Point(end, PLUS_INFINITY)))
    else:
        pieces.append(element)
    pieces.append(Segment(end, end + 1, PLUS_INFINITY, ZERO))
    return Curve.ultimately_constant(Sequence(pieces))


# -- finite-horizon closure ---------------------------------------------


def sub_additive_closure_window(
    f: Curve,
    horizon: TimeLike,
    settings: ComputationSettings | None = None,
    *,
    max_iterations: int = MAX_CLOSURE_ITERATIONS,
) -> Sequence:
    """The closure on ``[0, horizon[`` by squaring: ``h <- h /\\ (h * h)`` from ``f /\\ delta_0``.

    Values at ``t`` only depend on ``[0, t]``, so the fixpoint on the window is
    exact there.
    """

    _require_bounded_closure(f)
    end = as_time(horizon)
    bus = get_event_bus()
    current = _with_origin(f.extend(end), ZERO)
    for iteration in range(1, max_iterations + 1):
        squared = lower_envelope(_window_pieces(current), (0, end), settings)
        bus.emit("closure.iteration", iteration=iteration, elements=len(squared))
        if squared == current:
            return current
        current = squared
    raise ClosureConvergenceError(max_iterations, end)


def super_additive_closure_window(
    f: Curve,
    horizon: TimeLike,
    settings: ComputationSettings | None = None,
    *,
    max_iterations: int = MAX_CLOSURE_ITERATIONS,
) -> Sequence:
    return sub_additive_closure_window(f.negate(), horizon, settings, max_iterations=max_iterations).negate()


def _with_origin(window: Sequence, value: ExtendedRational) -> Sequence:
    first, *rest = window.elements
    first = cast(Point, first)
    return Sequence((Point(first.time, min(first.value, value)), *rest)).canonicalize()


def _window_pieces(window: Sequence) -> Iterable[Element]:
    from .binary import convolve_elements

    yield from window.elements
    yield from convolve_elements(window.elements, window.elements)


__all__ = [
    "MAX_CLOSURE_ITERATIONS",
    "composition",
    "dirac",
    "lower_pseudo_inverse",
    "sub_additive_closure",
    "sub_additive_closure_window",
    "super_additive_closure",
    "super_additive_closure_window",
    "upper_pseudo_inverse",
]
