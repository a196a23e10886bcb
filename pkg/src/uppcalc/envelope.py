"""Deterministic parallel kernels: lower/upper envelopes and tree aggregation.

Envelopes group elements into time buckets delimited by the sorted distinct
element endpoints, so the set of active elements is fixed inside each bucket.
Contiguous runs of buckets are independent tasks; their partial results are
concatenated in order and canonicalized, which makes the output identical
whatever the worker count.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Iterator
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from contextlib import contextmanager
from fractions import Fraction
from functools import partial
from typing import Literal, Protocol, TypeVar

from .elements import Element, Point, Segment
from .errors import DomainError
from .events import get_event_bus
from .rational import MINUS_INFINITY, PLUS_INFINITY, ZERO, ExtendedRational, TimeLike, as_time
from .sequence import Sequence
from .settings import ComputationSettings, resolve_settings

logger = logging.getLogger(__name__)

ItemT = TypeVar("ItemT")


class BinaryOperation(Protocol[ItemT]):
    def __call__(self, first: ItemT, second: ItemT, /, *, settings: ComputationSettings | None = None) -> ItemT: ...


@contextmanager
def worker_pool(settings: ComputationSettings) -> Iterator[Executor]:
    """An executor sized by ``settings``; process-based unless ``executor="thread"``."""

    workers = settings.effective_workers
    pool: Executor = (
        ThreadPoolExecutor(max_workers=workers)
        if settings.executor == "thread"
        else ProcessPoolExecutor(max_workers=workers)
    )
    with pool:
        yield pool


def _sequential_copy(settings: ComputationSettings) -> ComputationSettings:
    return settings.model_copy(update={"use_parallelism": False})


# -- envelopes ----------------------------------------------------------


def lower_envelope(
    elements: Iterable[Element],
    domain: tuple[TimeLike, TimeLike],
    settings: ComputationSettings | None = None,
) -> Sequence:
    """Pointwise infimum of ``elements`` over ``[start, end[`` as a canonical sequence.

    Instants covered by no element are ``+inf``.
    """

    return _envelope(elements, domain, settings, "lower")


def upper_envelope(
    elements: Iterable[Element],
    domain: tuple[TimeLike, TimeLike],
    settings: ComputationSettings | None = None,
) -> Sequence:
    """Pointwise supremum; the mirror image of :func:`lower_envelope`."""

    return _envelope(elements, domain, settings, "upper")


def _envelope(
    elements: Iterable[Element],
    domain: tuple[TimeLike, TimeLike],
    settings: ComputationSettings | None,
    mode: Literal["lower", "upper"],
) -> Sequence:
    start, end = as_time(domain[0]), as_time(domain[1])
    if start >= end:
        raise DomainError.empty_interval(start, end)
    items = list(elements)
    if not items:
        raise DomainError.requires(f"{mode}_envelope", "at least one element")
    if mode == "upper":
        items = [element.negate() for element in items]

    straddling = [
        Point(start, element.line_at(start))
        for element in items
        if isinstance(element, Segment) and element.start_time < start < element.end_time
    ]
    clipped = [piece for piece in (_clip(element, start, end) for element in items) if piece is not None]
    clipped.extend(straddling)
    cuts = sorted({start, end, *(t for piece in clipped for t in (piece.start_time, piece.end_time))})
    resolved = resolve_settings(settings)
    parallel = resolved.runs_parallel(len(clipped)) and len(cuts) > 2

    if parallel:
        chunks = _split(cuts, resolved.effective_workers)
        subsets = [_overlapping(clipped, chunk[0], chunk[-1]) for chunk in chunks]
        with worker_pool(resolved) as pool:
            parts = list(pool.map(_lower_chunk, subsets, chunks))
        pieces = [element for part in parts for element in part]
    else:
        pieces = _lower_chunk(clipped, cuts)

    result = Sequence(pieces).canonicalize()
    if mode == "upper":
        result = result.negate()
    get_event_bus().emit(
        "envelope.computed",
        mode=mode,
        elements=len(items),
        buckets=len(cuts) - 1,
        parallel=parallel,
        workers=resolved.effective_workers if parallel else 1,
    )
    return result


def _clip(element: Element, start: Fraction, end: Fraction) -> Element | None:
    if isinstance(element, Point):
        return element if start <= element.time < end else None
    if element.end_time <= start or element.start_time >= end:
        return None
    low, high = max(element.start_time, start), min(element.end_time, end)
    if low == element.start_time and high == element.end_time:
        return element
    return element.trimmed(low, high)


def _split(cuts: list[Fraction], parts: int) -> list[tuple[Fraction, ...]]:
    buckets = len(cuts) - 1
    size = max(1, -(-buckets // parts))
    return [tuple(cuts[index : index + size + 1]) for index in range(0, buckets, size)]


def _overlapping(elements: list[Element], start: Fraction, end: Fraction) -> list[Element]:
    selected: list[Element] = []
    for element in elements:
        if isinstance(element, Point):
            if start <= element.time < end:
                selected.append(element)
        elif element.start_time < end and element.end_time > start:
            selected.append(element)
    return selected


def _lower_chunk(elements: Iterable[Element], cuts: Iterable[Fraction]) -> list[Element]:
    """Envelope over the buckets delimited by ``cuts``; every element endpoint must be a cut."""

    instants = list(cuts)
    point_values: dict[Fraction, list[ExtendedRational]] = {}
    segments: list[Segment] = []
    for element in elements:
        if isinstance(element, Point):
            point_values.setdefault(element.time, []).append(element.value)
        else:
            segments.append(element)
    segments.sort(key=lambda segment: segment.start_time)

    result: list[Element] = []
    active: list[Segment] = []
    admitted = 0
    for left, right in zip(instants, instants[1:], strict=False):
        while admitted < len(segments) and segments[admitted].start_time <= left:
            active.append(segments[admitted])
            admitted += 1
        active = [segment for segment in active if segment.end_time > left]
        candidates = list(point_values.get(left, ()))
        candidates.extend(segment.line_at(left) for segment in active if segment.start_time < left)
        result.append(Point(left, min(candidates) if candidates else PLUS_INFINITY))
        result.extend(_lower_lines(active, left, right))
    return result


def _lower_lines(lines: list[Segment], start: Fraction, end: Fraction) -> list[Element]:
    """Lower envelope of supporting lines over the open interval ]start, end[."""

    if any(line.right_limit_at_start.is_minus_infinity for line in lines):
        return [Segment(start, end, MINUS_INFINITY, ZERO)]
    finite = [(line.line_at(start).fraction, line.slope.fraction) for line in lines if line.is_finite]
    if not finite:
        return [Segment(start, end, PLUS_INFINITY, ZERO)]

    pieces: list[Element] = []
    at = start
    value, slope = min(finite)
    while True:
        crossing: Fraction | None = None
        successor = (value, slope)
        for other_value, other_slope in finite:
            if other_slope >= slope:
                continue
            other_now = other_value + other_slope * (at - start)
            meets = at + (other_now - value) / (slope - other_slope)
            if meets >= end:
                continue
            if crossing is None or meets < crossing or (meets == crossing and other_slope < successor[1]):
                crossing, successor = meets, (other_now + other_slope * (meets - at), other_slope)
        if crossing is None:
            pieces.append(Segment(at, end, ExtendedRational.finite(value), ExtendedRational.finite(slope)))
            return pieces
        pieces.append(Segment(at, crossing, ExtendedRational.finite(value), ExtendedRational.finite(slope)))
        pieces.append(Point(crossing, ExtendedRational.finite(successor[0])))
        at, (value, slope) = crossing, successor


# -- aggregation --------------------------------------------------------


def parallel_aggregate(
    items: Iterable[ItemT],
    operation: BinaryOperation[ItemT] | Callable[..., ItemT],
    settings: ComputationSettings | None = None,
) -> ItemT:
    """Balanced-tree fold of ``items`` with an associative ``operation``.

    ``operation`` receives ``settings=`` as a keyword; when levels run on a
    pool it must be picklable (a module-level function) and each call runs
    sequentially inside its worker.
    """

    level = list(items)
    count = len(level)
    if not level:
        raise DomainError.requires("parallel_aggregate", "at least one item")
    resolved = resolve_settings(settings)
    weight = sum(getattr(item, "element_count", 1) for item in level)
    parallel = len(level) > 2 and resolved.runs_parallel(weight)
    fold = partial(operation, settings=_sequential_copy(resolved) if parallel else resolved)

    levels = 0
    with _maybe_pool(resolved, parallel) as pool:
        while len(level) > 1:
            left, right = level[0::2], level[1::2]
            mapper = pool.map if pool is not None else map
            combined = list(mapper(fold, left[: len(right)], right))
            if len(level) % 2:
                combined.append(level[-1])
            level = combined
            levels += 1
            logger.debug("aggregate level %d: %d partial results", levels, len(level))

    get_event_bus().emit("aggregate.computed", items=count, levels=levels, parallel=parallel)
    return level[0]


@contextmanager
def _maybe_pool(settings: ComputationSettings, enabled: bool) -> Iterator[Executor | None]:
    if not enabled:
        yield None
        return
    with worker_pool(settings) as pool:
        yield pool
