"""Piecewise-affine functions on a bounded, left-closed right-open interval."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections.abc import Iterable, Iterator
from fractions import Fraction
from typing import overload

from .elements import Element, Point, Segment
from .errors import ConstructionError, DomainError
from .rational import ZERO, ExtendedRational, RationalLike, TimeLike, as_time, rational


class Sequence:
    """Ordered, strictly alternating points and segments covering ``[a, b[``.

    The first element is the point at ``a`` and the last one is a segment
    ending at ``b``. Instances are immutable.
    """

    __slots__ = ("_elements", "_times")

    def __init__(self, elements: Iterable[Element]) -> None:
        items = tuple(elements)
        _validate(items)
        self._elements = items
        self._times: tuple[Fraction, ...] = tuple(element.time for element in items[::2])  # type: ignore[union-attr]

    @classmethod
    def constant(cls, start: TimeLike, end: TimeLike, value: RationalLike) -> Sequence:
        a, b = as_time(start), as_time(end)
        level = rational(value)
        return cls((Point(a, level), Segment(a, b, level, ZERO)))

    @classmethod
    def concatenate(cls, sequences: Iterable[Sequence]) -> Sequence:
        """Join contiguous sequences end to end."""

        elements: list[Element] = []
        for sequence in sequences:
            elements.extend(sequence.elements)
        return cls(elements)

    # -- container protocol --------------------------------------------

    @property
    def elements(self) -> tuple[Element, ...]:
        return self._elements

    @property
    def defined_from(self) -> Fraction:
        return self._times[0]

    @property
    def defined_until(self) -> Fraction:
        return self._elements[-1].end_time

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[Element]:
        return iter(self._elements)

    @overload
    def __getitem__(self, index: int) -> Element: ...

    @overload
    def __getitem__(self, index: slice) -> tuple[Element, ...]: ...

    def __getitem__(self, index: int | slice) -> Element | tuple[Element, ...]:
        return self._elements[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sequence):
            return NotImplemented
        return self._elements == other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return f"Sequence([{self.defined_from}, {self.defined_until}[, {len(self._elements)} elements)"

    # -- evaluation -----------------------------------------------------

    def breakpoints(self) -> tuple[Fraction, ...]:
        return self._times

    @property
    def points(self) -> tuple[Point, ...]:
        return self._elements[::2]  # type: ignore[return-value]

    @property
    def segments(self) -> tuple[Segment, ...]:
        return self._elements[1::2]  # type: ignore[return-value]

    def value_at(self, t: TimeLike) -> ExtendedRational:
        instant = as_time(t)
        self._check_closed_open(instant)
        index = bisect_right(self._times, instant) - 1
        if self._times[index] == instant:
            return self._elements[2 * index].value  # type: ignore[union-attr]
        return self._elements[2 * index + 1].line_at(instant)  # type: ignore[union-attr]

    def left_limit_at(self, t: TimeLike) -> ExtendedRational:
        instant = as_time(t)
        if not self.defined_from < instant <= self.defined_until:
            raise DomainError.outside_domain(instant, self.defined_from, self.defined_until)
        index = bisect_left(self._times, instant) - 1
        return self._elements[2 * index + 1].line_at(instant)  # type: ignore[union-attr]

    def right_limit_at(self, t: TimeLike) -> ExtendedRational:
        instant = as_time(t)
        self._check_closed_open(instant)
        index = bisect_right(self._times, instant) - 1
        return self._elements[2 * index + 1].line_at(instant)  # type: ignore[union-attr]

    def element_at(self, t: TimeLike) -> Element:
        """The point or segment whose support contains ``t``."""

        instant = as_time(t)
        self._check_closed_open(instant)
        index = bisect_right(self._times, instant) - 1
        if self._times[index] == instant:
            return self._elements[2 * index]
        return self._elements[2 * index + 1]

    def _check_closed_open(self, instant: Fraction) -> None:
        if not self.defined_from <= instant < self.defined_until:
            raise DomainError.outside_domain(instant, self.defined_from, self.defined_until)

    @property
    def is_finite(self) -> bool:
        return all(element.is_finite for element in self._elements)

    def infimum(self) -> ExtendedRational:
        """Infimum of values and one-sided limits over the domain."""

        return min(_extreme_candidates(self._elements))

    def supremum(self) -> ExtendedRational:
        return max(_extreme_candidates(self._elements))

    # -- transformations ------------------------------------------------

    def cut(self, start: TimeLike, end: TimeLike) -> Sequence:
        """Restriction to ``[start, end[``."""

        a, b = as_time(start), as_time(end)
        if a >= b:
            raise DomainError.empty_interval(a, b)
        if a < self.defined_from or b > self.defined_until:
            raise DomainError.outside_domain(a if a < self.defined_from else b, self.defined_from, self.defined_until)
        if a == self.defined_from and b == self.defined_until:
            return self

        result: list[Element] = []
        first = 2 * (bisect_right(self._times, a) - 1)
        for element in self._elements[first:]:
            if element.start_time >= b:
                break
            if isinstance(element, Point):
                if element.time >= a:
                    result.append(element)
                continue
            if element.end_time <= a:
                continue
            if element.start_time < a:
                result.append(Point(a, element.line_at(a)))
            low, high = max(element.start_time, a), min(element.end_time, b)
            result.append(element if low == element.start_time and high == element.end_time else element.trimmed(low, high))
        return Sequence(result)

    def shift(self, dt: TimeLike = 0, dv: RationalLike = ZERO) -> Sequence:
        """Translate by ``dt`` along time and ``dv`` along values."""

        delta_t, delta_v = as_time(dt), rational(dv)
        if delta_t == 0 and delta_v == 0:
            return self
        return Sequence(element.shift(delta_t, delta_v) for element in self._elements)

    def negate(self) -> Sequence:
        return Sequence(element.negate() for element in self._elements)

    def refine(self, times: Iterable[Fraction]) -> Sequence:
        """Split segments at every given instant that falls strictly inside one."""

        cuts = sorted({t for t in times if self.defined_from < t < self.defined_until and t not in self._times})
        if not cuts:
            return self
        result: list[Element] = []
        cursor = 0
        for element in self._elements:
            if isinstance(element, Point):
                result.append(element)
                continue
            while cursor < len(cuts) and cuts[cursor] <= element.start_time:
                cursor += 1
            start = element.start_time
            while cursor < len(cuts) and cuts[cursor] < element.end_time:
                split = cuts[cursor]
                result.append(element.trimmed(start, split))
                result.append(Point(split, element.line_at(split)))
                start = split
                cursor += 1
            result.append(element if start == element.start_time else element.trimmed(start, element.end_time))
        return Sequence(result)

    def canonicalize(self) -> Sequence:
        """Merge every removable point and colinear neighbours.

        The result is pointwise equal and has the fewest elements among
        sequences describing the same function on the same domain.
        """

        elements = self._elements
        merged: list[Element] = [elements[0]]
        for index in range(1, len(elements), 2):
            segment: Segment = elements[index]  # type: ignore[assignment]
            if len(merged) >= 3:
                point: Point = merged[-1]  # type: ignore[assignment]
                previous: Segment = merged[-2]  # type: ignore[assignment]
                if _removable(previous, point, segment):
                    merged.pop()
                    merged.pop()
                    segment = Segment(previous.start_time, segment.end_time, previous.right_limit_at_start, previous.slope)
            merged.append(segment)
            if index + 1 < len(elements):
                merged.append(elements[index + 1])
        if len(merged) == len(elements):
            return self
        return Sequence(merged)


def _removable(previous: Segment, point: Point, following: Segment) -> bool:
    return (
        previous.slope == following.slope
        and previous.left_limit_at_end == point.value
        and point.value == following.right_limit_at_start
    )


def _extreme_candidates(elements: Iterable[Element]) -> Iterator[ExtendedRational]:
    for element in elements:
        if isinstance(element, Point):
            yield element.value
        else:
            yield element.right_limit_at_start
            yield element.left_limit_at_end


def _validate(items: tuple[Element, ...]) -> None:
    if len(items) < 2:
        raise ConstructionError.empty_sequence()
    for index, element in enumerate(items):
        expected = Point if index % 2 == 0 else Segment
        if not isinstance(element, expected):
            raise ConstructionError.bad_alternation(index, element)
        if index and items[index - 1].end_time != element.start_time:
            raise ConstructionError.not_contiguous(items[index - 1], element)
    if not isinstance(items[-1], Segment):
        raise ConstructionError.bad_alternation(len(items) - 1, items[-1])


def align(first: Sequence, second: Sequence) -> tuple[Sequence, Sequence]:
    """Refine two sequences on the same domain onto their common breakpoints."""

    if first.defined_from != second.defined_from or first.defined_until != second.defined_until:
        raise DomainError.requires("align", "sequences on the same domain")
    times = set(first.breakpoints()) | set(second.breakpoints())
    return first.refine(times), second.refine(times)


def add_sequences(first: Sequence, second: Sequence) -> Sequence:
    """Pointwise sum; undefined forms raise :class:`~uppcalc.errors.UndefinedFormError`."""

    left, right = align(first, second)
    result: list[Element] = []
    for a, b in zip(left.elements, right.elements, strict=True):
        if isinstance(a, Point):
            result.append(Point(a.time, a.value + b.value))  # type: ignore[union-attr]
            continue
        limit = a.right_limit_at_start + b.right_limit_at_start  # type: ignore[union-attr]
        slope = ZERO if limit.is_infinite else a.slope + b.slope  # type: ignore[union-attr]
        result.append(Segment(a.start_time, a.end_time, limit, slope))
    return Sequence(result)


def subtract_sequences(first: Sequence, second: Sequence) -> Sequence:
    return add_sequences(first, second.negate())
