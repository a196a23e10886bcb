from __future__ import annotations

from fractions import Fraction

import pytest

from uppcalc import ComputationSettings, Point, Segment, Sequence, lower_envelope, parallel_aggregate, upper_envelope
from uppcalc.elements import Element
from uppcalc.errors import DomainError
from uppcalc.events import get_event_bus
from uppcalc.rational import MINUS_INFINITY, PLUS_INFINITY

THREADS = ComputationSettings(use_parallelism=True, parallelism_threshold=1, worker_count=4, executor="thread")
SEQUENTIAL = ComputationSettings.sequential()


def _tent_sides() -> list[Element]:
    return [Segment(0, 4, 0, 1), Segment(0, 4, 4, -1)]


def test_lower_envelope_of_crossing_segments() -> None:
    result = lower_envelope(_tent_sides(), (0, 4), SEQUENTIAL)
    expected = Sequence((Point(0, PLUS_INFINITY), Segment(0, 2, 0, 1), Point(2, 2), Segment(2, 4, 2, -1)))
    assert result == expected


def test_upper_envelope_of_crossing_segments() -> None:
    result = upper_envelope(_tent_sides(), (0, 4), SEQUENTIAL)
    expected = Sequence((Point(0, MINUS_INFINITY), Segment(0, 2, 4, -1), Point(2, 2), Segment(2, 4, 2, 1)))
    assert result == expected


def test_points_win_over_segments_only_when_lower() -> None:
    elements = [Point(0, 1), Segment(0, 2, 3, 0), Point(1, 5), Point(1, 2)]
    result = lower_envelope(elements, (0, 2), SEQUENTIAL)
    assert result.value_at(0) == 1
    assert result.value_at(1) == 2
    assert result.value_at(Fraction(3, 2)) == 3


def test_envelope_requires_elements_and_a_domain() -> None:
    with pytest.raises(DomainError):
        lower_envelope([], (0, 1))
    with pytest.raises(DomainError):
        lower_envelope(_tent_sides(), (2, 2))


def _many_segments(count: int) -> list[Element]:
    elements: list[Element] = [Point(0, 0)]
    for index in range(count):
        start = Fraction(index % 97, 3)
        length = Fraction(1 + index % 7, 2)
        value = Fraction((index * 37) % 23 - 11, 4)
        slope = Fraction((index * 11) % 9 - 4, 3)
        elements.append(Segment(start, start + length, value, slope))
    return elements


def test_parallel_envelope_is_identical_to_sequential() -> None:
    elements = _many_segments(1200)
    with get_event_bus().record("envelope.computed") as recorder:
        parallel = lower_envelope(elements, (0, 36), THREADS)
    assert recorder.payloads()[0]["parallel"] is True
    assert parallel == lower_envelope(elements, (0, 36), SEQUENTIAL)


def test_process_pool_envelope_is_identical_to_sequential() -> None:
    elements = _many_segments(300)
    processes = THREADS.model_copy(update={"executor": "process", "worker_count": 2})
    assert upper_envelope(elements, (0, 36), processes) == upper_envelope(elements, (0, 36), SEQUENTIAL)


def test_parallel_aggregate_folds_in_a_balanced_tree() -> None:
    def plus(first: int, second: int, *, settings: ComputationSettings | None = None) -> int:
        return first + second

    with get_event_bus().record("aggregate.computed") as recorder:
        total = parallel_aggregate(list(range(10)), plus, SEQUENTIAL)
    assert total == 45
    assert recorder.payloads() == [{"items": 10, "levels": 4, "parallel": False}]
    assert parallel_aggregate(["only"], plus) == "only"
    with pytest.raises(DomainError):
        parallel_aggregate([], plus)


def test_segments_straddling_the_domain_start_count_at_the_start() -> None:
    upper = upper_envelope([Segment(-1, 3, 5, 0), Point(0, 0), Segment(0, 3, 0, 0)], (0, 2), SEQUENTIAL)
    assert upper.value_at(0) == 5
    lower = lower_envelope([Segment(-1, 3, 1, 0), Point(0, 4), Segment(0, 3, 4, 0)], (0, 2), SEQUENTIAL)
    assert lower.value_at(0) == 1
    assert lower.value_at(1) == 1
