"""Atomic pieces of a piecewise-affine function: points and open segments."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConstructionError, DomainError
from .rational import ZERO, ExtendedRational, RationalLike, TimeLike, as_time, rational


@dataclass(frozen=True, slots=True)
class Point:
    """A single time-value pair."""

    time: Fraction
    value: ExtendedRational

    def __post_init__(self) -> None:
        object.__setattr__(self, "time", as_time(self.time))
        object.__setattr__(self, "value", rational(self.value))

    @property
    def start_time(self) -> Fraction:
        return self.time

    @property
    def end_time(self) -> Fraction:
        return self.time

    @property
    def is_finite(self) -> bool:
        return self.value.is_finite

    def value_at(self, t: TimeLike) -> ExtendedRational:
        if as_time(t) != self.time:
            raise DomainError.outside_domain(t, self.time, self.time)
        return self.value

    def shift(self, dt: Fraction = Fraction(0), dv: RationalLike = ZERO) -> Point:
        return Point(self.time + dt, self.value + rational(dv))

    def negate(self) -> Point:
        return Point(self.time, -self.value)


@dataclass(frozen=True, slots=True)
class Segment:
    """An affine piece on the open interval ]start_time, end_time[."""

    start_time: Fraction
    end_time: Fraction
    right_limit_at_start: ExtendedRational
    slope: ExtendedRational

    def __post_init__(self) -> None:
        start, end = as_time(self.start_time), as_time(self.end_time)
        if start >= end:
            raise ConstructionError.empty_segment(start, end)
        limit, slope = rational(self.right_limit_at_start), rational(self.slope)
        if slope.is_infinite:
            raise ConstructionError.infinite_slope(slope)
        if limit.is_infinite and slope != 0:
            raise ConstructionError.sloped_infinity(slope)
        object.__setattr__(self, "start_time", start)
        object.__setattr__(self, "end_time", end)
        object.__setattr__(self, "right_limit_at_start", limit)
        object.__setattr__(self, "slope", slope)

    @classmethod
    def constant(cls, start: TimeLike, end: TimeLike, value: RationalLike) -> Segment:
        return cls(as_time(start), as_time(end), rational(value), ZERO)

    @property
    def length(self) -> Fraction:
        return self.end_time - self.start_time

    @property
    def is_finite(self) -> bool:
        return self.right_limit_at_start.is_finite

    @property
    def left_limit_at_end(self) -> ExtendedRational:
        return self.line_at(self.end_time)

    def line_at(self, t: Fraction) -> ExtendedRational:
        """Value of the supporting line at ``t``, inside the interval or not."""

        if self.right_limit_at_start.is_infinite:
            return self.right_limit_at_start
        return self.right_limit_at_start + self.slope * (t - self.start_time)

    def value_at(self, t: TimeLike) -> ExtendedRational:
        instant = as_time(t)
        if not self.start_time < instant < self.end_time:
            raise DomainError.outside_domain(instant, self.start_time, self.end_time)
        return self.line_at(instant)

    def trimmed(self, start: Fraction, end: Fraction) -> Segment:
        """Restriction to ]start, end[, which must lie within the segment's closure."""

        return Segment(start, end, self.line_at(start), self.slope)

    def shift(self, dt: Fraction = Fraction(0), dv: RationalLike = ZERO) -> Segment:
        return Segment(self.start_time + dt, self.end_time + dt, self.right_limit_at_start + rational(dv), self.slope)

    def negate(self) -> Segment:
        return Segment(self.start_time, self.end_time, -self.right_limit_at_start, -self.slope)


type Element = Point | Segment
