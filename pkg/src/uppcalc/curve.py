"""Ultimately pseudo-periodic (UPP) piecewise-affine curves.

A :class:`Curve` is a base sequence on ``[0, T + d[`` together with the
pseudo-period start ``T``, length ``d`` and height ``c``; for every
``t >= T`` and natural ``k`` it satisfies ``f(t + k*d) = f(t) + k*c``.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from fractions import Fraction
from typing import Literal

from .elements import Point, Segment
from .errors import ConstructionError, DomainError
from .events import get_event_bus
from .rational import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    ZERO,
    ExtendedRational,
    RationalLike,
    TimeLike,
    as_time,
    fraction_lcm,
    rational,
)
from .sequence import Sequence, align

type CurveFamily = Literal["generic", "rateLatency", "sigmaRho", "delay", "stair", "constant", "flowControl"]
type ShiftMode = Literal["delay", "anticipate"]

_ONE = Fraction(1)


class Curve:
    """An immutable UPP function on ``[0, +inf[``.

    ``family`` tags curves built by a family constructor so that convolution
    dispatch can pick a specialised path; every operation that does not
    provably preserve the family returns a ``"generic"`` curve.
    """

    __slots__ = ("_affine_tail", "_base", "_family", "_height", "_length", "_params", "_start", "_tail")

    def __init__(
        self,
        base_sequence: Sequence,
        pseudo_period_start: TimeLike,
        pseudo_period_length: TimeLike,
        pseudo_period_height: RationalLike,
        *,
        family: CurveFamily = "generic",
        family_params: Mapping[str, RationalLike] | None = None,
    ) -> None:
        start = as_time(pseudo_period_start)
        length = as_time(pseudo_period_length)
        height = rational(pseudo_period_height)
        if start < 0 or length <= 0 or height.is_infinite:
            raise ConstructionError.bad_period(start, length, height)
        if base_sequence.defined_from != 0 or base_sequence.defined_until != start + length:
            raise ConstructionError.base_mismatch(start + length, base_sequence.defined_until)
        window = base_sequence.cut(start, start + length).canonicalize()
        tail = _tail_kind(window)
        if tail and height != 0:
            raise ConstructionError.infinite_tail_height(height)

        self._base = base_sequence
        self._start = start
        self._length = length
        self._height = height
        self._tail = tail
        self._affine_tail = _is_affine_window(window, length, height)
        self._family: CurveFamily = family
        self._params = tuple((name, rational(value)) for name, value in (family_params or {}).items())

    @classmethod
    def ultimately_constant(cls, window: Sequence, value: RationalLike = PLUS_INFINITY) -> Curve:
        """``window`` (which must start at 0) followed by the constant ``value``."""

        end = window.defined_until
        level = rational(value)
        elements = (*window.elements, Point(end, level), Segment(end, end + 1, level, ZERO))
        return cls(Sequence(elements), end, _ONE, ZERO)

    @classmethod
    def assemble(
        cls,
        base_sequence: Sequence,
        pseudo_period_start: TimeLike,
        pseudo_period_length: TimeLike,
        pseudo_period_height: RationalLike,
    ) -> Curve:
        """Like the constructor, but an all-infinite period forces the height to 0."""

        start, length = as_time(pseudo_period_start), as_time(pseudo_period_length)
        height = rational(pseudo_period_height)
        if _tail_kind(base_sequence.cut(start, start + length).canonicalize()):
            height = ZERO
        return cls(base_sequence, start, length, height)

    @classmethod
    def constant_value(cls, value: RationalLike) -> Curve:
        return cls(Sequence.constant(0, 1, value), 0, 1, ZERO)

    def with_family(self, family: CurveFamily, params: Mapping[str, RationalLike] | None = None) -> Curve:
        return Curve(
            self._base,
            self._start,
            self._length,
            self._height,
            family=family,
            family_params=params,
        )

    # -- representation -------------------------------------------------

    @property
    def base_sequence(self) -> Sequence:
        return self._base

    @property
    def pseudo_period_start(self) -> Fraction:
        return self._start

    @property
    def pseudo_period_length(self) -> Fraction:
        return self._length

    @property
    def pseudo_period_height(self) -> ExtendedRational:
        return self._height

    @property
    def family(self) -> CurveFamily:
        return self._family

    @property
    def family_params(self) -> dict[str, ExtendedRational]:
        return dict(self._params)

    @property
    def element_count(self) -> int:
        return len(self._base)

    @property
    def is_ultimately_infinite(self) -> bool:
        return self._tail != 0

    @property
    def is_ultimately_plus_infinite(self) -> bool:
        return self._tail > 0

    @property
    def is_ultimately_minus_infinite(self) -> bool:
        return self._tail < 0

    @property
    def is_ultimately_affine(self) -> bool:
        """True when the curve is a single affine (or infinite) piece on ``]T, +inf[``, continuous at ``T``."""

        return self._affine_tail

    @property
    def asymptotic_rate(self) -> ExtendedRational:
        """``c / d``; ultimately infinite curves have rate ``+inf`` (``-inf``)."""

        if self._tail > 0:
            return PLUS_INFINITY
        if self._tail < 0:
            return MINUS_INFINITY
        return self._height / self._length

    def period_window(self) -> Sequence:
        return self._base.cut(self._start, self._start + self._length)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Curve):
            return NotImplemented
        return (
            self._start == other._start
            and self._length == other._length
            and self._height == other._height
            and self._base == other._base
        )

    def __hash__(self) -> int:
        return hash((self._start, self._length, self._height, self._base))

    def __repr__(self) -> str:
        return (
            f"Curve(family={self._family!r}, T={self._start}, d={self._length}, c={self._height}, "
            f"elements={len(self._base)})"
        )

    # -- evaluation -----------------------------------------------------

    def _reduce(self, t: Fraction, periods: int) -> tuple[Fraction, ExtendedRational]:
        return t - periods * self._length, self._height * periods

    def value_at(self, t: TimeLike) -> ExtendedRational:
        instant = as_time(t)
        if instant < 0:
            raise DomainError.outside_domain(instant, 0)
        if instant < self._start + self._length:
            return self._base.value_at(instant)
        local, offset = self._reduce(instant, math.floor((instant - self._start) / self._length))
        return self._base.value_at(local) + offset

    def left_limit_at(self, t: TimeLike) -> ExtendedRational:
        instant = as_time(t)
        if instant <= 0:
            raise DomainError.outside_domain(instant, 0)
        if instant <= self._start + self._length:
            return self._base.left_limit_at(instant)
        local, offset = self._reduce(instant, math.ceil((instant - self._start) / self._length) - 1)
        return self._base.left_limit_at(local) + offset

    def right_limit_at(self, t: TimeLike) -> ExtendedRational:
        instant = as_time(t)
        if instant < 0:
            raise DomainError.outside_domain(instant, 0)
        if instant < self._start + self._length:
            return self._base.right_limit_at(instant)
        local, offset = self._reduce(instant, math.floor((instant - self._start) / self._length))
        return self._base.right_limit_at(local) + offset

    def extend(self, horizon: TimeLike) -> Sequence:
        """Unroll the pseudo-period into a sequence on ``[0, horizon[``."""

        end = as_time(horizon)
        if end <= 0:
            raise DomainError.requires("extend", f"a positive horizon, got {end}")
        base_end = self._start + self._length
        if end <= base_end:
            return self._base.cut(0, end)
        if self._affine_tail:
            head = self._base.cut(0, self._start).elements if self._start > 0 else ()
            limit = self._base.right_limit_at(self._start)
            slope = ZERO if limit.is_infinite else self._height / self._length
            ray = Segment(self._start, end, limit, slope)
            return Sequence((*head, Point(self._start, self._base.value_at(self._start)), ray))

        window = self.period_window()
        copies = math.ceil((end - base_end) / self._length)
        pieces = [self._base]
        pieces.extend(window.shift(k * self._length, self._height * k) for k in range(1, copies + 1))
        return Sequence.concatenate(pieces).cut(0, end)

    def cut(self, start: TimeLike, end: TimeLike) -> Sequence:
        a, b = as_time(start), as_time(end)
        if a < 0:
            raise DomainError.outside_domain(a, 0)
        if a >= b:
            raise DomainError.empty_interval(a, b)
        return self.extend(b).cut(a, b)

    # -- shifts ---------------------------------------------------------

    def delay_by(self, theta: TimeLike) -> Curve:
        """``g(t) = f(t - theta)`` for ``t >= theta`` and 0 before."""

        shift = as_time(theta)
        if shift < 0:
            raise DomainError.requires("delay", f"a non-negative shift, got {shift}")
        if shift == 0:
            return self
        prefix = (Point(0, ZERO), Segment(0, shift, ZERO, ZERO))
        base = Sequence((*prefix, *self._base.shift(shift).elements))
        return Curve(base, self._start + shift, self._length, self._height)

    def anticipate_by(self, theta: TimeLike) -> Curve:
        """``g(t) = f(t + theta)``."""

        shift = as_time(theta)
        if shift < 0:
            raise DomainError.requires("anticipate", f"a non-negative shift, got {shift}")
        if shift == 0:
            return self
        start = max(self._start - shift, Fraction(0))
        base = self.extend(shift + start + self._length).cut(shift, shift + start + self._length).shift(-shift)
        return Curve(base, start, self._length, self._height)

    def horizontal_shift(self, theta: TimeLike, mode: ShiftMode = "delay") -> Curve:
        if mode == "delay":
            return self.delay_by(theta)
        return self.anticipate_by(theta)

    def vertical_shift(self, value: RationalLike) -> Curve:
        amount = rational(value)
        if amount.is_infinite:
            raise DomainError.not_finite(amount)
        if amount == 0:
            return self
        return Curve(self._base.shift(0, amount), self._start, self._length, self._height)

    def negate(self) -> Curve:
        return Curve(self._base.negate(), self._start, self._length, -self._height)

    def transient_part(self) -> Curve | None:
        """The curve on ``[0, T[`` and ``+inf`` afterwards, or None when ``T = 0``."""

        if self._start == 0:
            return None
        return Curve.ultimately_constant(self._base.cut(0, self._start))

    def periodic_part(self) -> Curve:
        """``+inf`` on ``[0, T[`` and the curve itself afterwards."""

        if self._start == 0:
            return self
        prefix = (Point(0, PLUS_INFINITY), Segment(0, self._start, PLUS_INFINITY, ZERO))
        base = Sequence((*prefix, *self.period_window().elements))
        return Curve(base, self._start, self._length, self._height)

    # -- minimization ---------------------------------------------------

    def minimize(self) -> Curve:
        """Pointwise-equal curve with minimal period, then minimal start, then fewest elements."""

        start, length, height = self._start, self._length, self._height
        unrolled = self.extend(start + 3 * length).canonicalize()
        breaks = [t for t in unrolled.breakpoints() if start + length <= t < start + 2 * length]

        if not breaks:
            period, step, valid_from = _ONE, (ZERO if self._tail else height / length), start + length
        else:
            period, step, valid_from = length, height, start
            for divisor in sorted(_divisors(len(breaks)), reverse=True):
                if divisor == 1:
                    break
                candidate, candidate_step = length / divisor, height / divisor
                if _repeats(unrolled, start, length, candidate, candidate_step):
                    period, step = candidate, candidate_step
                    break

        new_start = self._earliest_start(valid_from, period, step)
        base = self.extend(new_start + period).canonicalize()
        result = Curve(
            base,
            new_start,
            period,
            step,
            family=self._family,
            family_params=dict(self._params),
        )
        get_event_bus().emit(
            "curve.minimized",
            elements_before=len(self._base),
            elements_after=len(base),
            period_length=period,
        )
        return result

    def _earliest_start(self, valid_from: Fraction, period: Fraction, step: ExtendedRational) -> Fraction:
        if valid_from == 0:
            return valid_from
        unrolled = self.extend(valid_from + period)
        head = unrolled.cut(0, valid_from)
        ahead = unrolled.cut(period, valid_from + period).shift(-period, -step)
        left, right = align(head, ahead)
        for index in range(len(left) - 1, -1, -1):
            current = left[index]
            if current == right[index]:
                continue
            if isinstance(current, Segment):
                return current.end_time
            genuine = unrolled.canonicalize().breakpoints()
            following = next((t for t in genuine if t > current.time), valid_from)
            return min(following, current.time + period, valid_from)
        return Fraction(0)


def _tail_kind(window: Sequence) -> int:
    values = [element.value if isinstance(element, Point) else element.right_limit_at_start for element in window]
    if all(value.is_plus_infinity for value in values):
        return 1
    if all(value.is_minus_infinity for value in values):
        return -1
    return 0


def _is_affine_window(window: Sequence, length: Fraction, height: ExtendedRational) -> bool:
    if len(window) != 2:
        return False
    point, segment = window.elements
    if point.value != segment.right_limit_at_start:  # type: ignore[union-attr]
        return False
    return segment.right_limit_at_start.is_infinite or segment.slope * length == height  # type: ignore[union-attr]


def _divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


def _repeats(unrolled: Sequence, start: Fraction, length: Fraction, period: Fraction, step: ExtendedRational) -> bool:
    window = unrolled.cut(start, start + length).canonicalize()
    shifted = unrolled.cut(start + period, start + length + period).shift(-period, -step).canonicalize()
    return window == shifted


def equivalent(f: Curve, g: Curve) -> bool:
    """True iff ``f(t) = g(t)`` for every ``t >= 0``."""

    if f.asymptotic_rate != g.asymptotic_rate:
        return False
    horizon = max(f.pseudo_period_start, g.pseudo_period_start) + 2 * fraction_lcm(
        f.pseudo_period_length, g.pseudo_period_length
    )
    return f.extend(horizon).canonicalize() == g.extend(horizon).canonicalize()
