"""Exact shape predicates over the whole time axis."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Literal

from .curve import Curve, equivalent
from .elements import Point, Segment
from .rational import ExtendedRational
from .sequence import Sequence

type PropertyName = Literal[
    "continuous",
    "leftContinuous",
    "rightContinuous",
    "nonDecreasing",
    "nonNegative",
    "concave",
    "convex",
    "subAdditive",
    "superAdditive",
]

PROPERTY_NAMES: tuple[PropertyName, ...] = (
    "continuous",
    "leftContinuous",
    "rightContinuous",
    "nonDecreasing",
    "nonNegative",
    "concave",
    "convex",
    "subAdditive",
    "superAdditive",
)


@dataclass(frozen=True)
class CurveProperties:
    """Flags computed by :func:`classify`."""

    is_continuous: bool
    is_left_continuous: bool
    is_right_continuous: bool
    is_non_decreasing: bool
    is_non_negative: bool
    is_concave: bool
    is_convex: bool
    is_sub_additive: bool
    is_super_additive: bool

    def as_dict(self) -> dict[str, bool]:
        return asdict(self)

    def get(self, name: PropertyName) -> bool:
        return bool(getattr(self, _ATTRIBUTES[name]))


_ATTRIBUTES: dict[PropertyName, str] = {
    "continuous": "is_continuous",
    "leftContinuous": "is_left_continuous",
    "rightContinuous": "is_right_continuous",
    "nonDecreasing": "is_non_decreasing",
    "nonNegative": "is_non_negative",
    "concave": "is_concave",
    "convex": "is_convex",
    "subAdditive": "is_sub_additive",
    "superAdditive": "is_super_additive",
}


def classify(f: Curve) -> CurveProperties:
    return CurveProperties(
        is_continuous=is_continuous(f),
        is_left_continuous=is_left_continuous(f),
        is_right_continuous=is_right_continuous(f),
        is_non_decreasing=is_non_decreasing(f),
        is_non_negative=is_non_negative(f),
        is_concave=is_concave(f),
        is_convex=is_convex(f),
        is_sub_additive=is_sub_additive(f),
        is_super_additive=is_super_additive(f),
    )


def check_property(f: Curve, name: PropertyName) -> bool:
    return _CHECKS[name](f)


def _observed(f: Curve) -> Sequence:
    """Transient, one period and the junction into the next one."""

    return f.extend(f.pseudo_period_start + 2 * f.pseudo_period_length)


def _points(f: Curve) -> list[tuple[Point, Segment | None, Segment]]:
    elements = _observed(f).elements
    triples: list[tuple[Point, Segment | None, Segment]] = []
    for index in range(0, len(elements) - 1, 2):
        previous = elements[index - 1] if index else None
        triples.append((elements[index], previous, elements[index + 1]))  # type: ignore[arg-type]
    return triples


def is_left_continuous(f: Curve) -> bool:
    return all(before is None or before.left_limit_at_end == point.value for point, before, _ in _points(f))


def is_right_continuous(f: Curve) -> bool:
    return all(after.right_limit_at_start == point.value for point, _, after in _points(f))


def is_continuous(f: Curve) -> bool:
    return is_left_continuous(f) and is_right_continuous(f)


def is_non_decreasing(f: Curve) -> bool:
    for point, before, after in _points(f):
        if after.slope < 0 or point.value > after.right_limit_at_start:
            return False
        if before is not None and before.left_limit_at_end > point.value:
            return False
    return True


def is_non_negative(f: Curve) -> bool:
    window = f.base_sequence
    return window.infimum() >= 0 and f.asymptotic_rate >= 0


def is_convex(f: Curve) -> bool:
    """Convex on its effective domain, which must be an interval; ``-inf`` is never convex."""

    elements = _observed(f).elements
    if any(_first_value(element).is_minus_infinity for element in elements):
        return False
    finite = [index for index, element in enumerate(elements) if _first_value(element).is_finite]
    if not finite:
        return True
    first, last = finite[0], finite[-1]
    if last - first + 1 != len(finite):
        return False

    slope = None
    for index in range(first, last + 1):
        element = elements[index]
        if isinstance(element, Segment):
            if slope is not None and element.slope < slope:
                return False
            slope = element.slope
            continue
        before = elements[index - 1] if index > first else None
        after = elements[index + 1] if index < last else None
        if isinstance(before, Segment) and before.left_limit_at_end != element.value:
            if after is not None:
                return False
            if element.value < before.left_limit_at_end:
                return False
        if isinstance(after, Segment) and after.right_limit_at_start != element.value:
            if before is not None:
                return False
            if element.value < after.right_limit_at_start:
                return False
    return True


def is_concave(f: Curve) -> bool:
    return is_convex(f.negate())


def is_sub_additive(f: Curve) -> bool:
    """``f(s + t) <= f(s) + f(t)`` for all ``s, t >= 0``; requires ``f(0) >= 0``."""

    from .binary import generic_convolution, minimum

    origin = f.value_at(0)
    if origin < 0:
        return False
    if is_concave(f):
        return True
    return equivalent(f, minimum(f, generic_convolution(f, f)))


def is_super_additive(f: Curve) -> bool:
    """``f(s + t) >= f(s) + f(t)`` for all ``s, t >= 0``; requires ``f(0) <= 0``."""

    from .binary import max_plus_convolution, maximum

    origin = f.value_at(0)
    if origin > 0:
        return False
    if is_convex(f):
        return True
    return equivalent(f, maximum(f, max_plus_convolution(f, f)))


def _first_value(element: Point | Segment) -> ExtendedRational:
    return element.value if isinstance(element, Point) else element.right_limit_at_start


_CHECKS = {
    "continuous": is_continuous,
    "leftContinuous": is_left_continuous,
    "rightContinuous": is_right_continuous,
    "nonDecreasing": is_non_decreasing,
    "nonNegative": is_non_negative,
    "concave": is_concave,
    "convex": is_convex,
    "subAdditive": is_sub_additive,
    "superAdditive": is_super_additive,
}

__all__ = [
    "PROPERTY_NAMES",
    "CurveProperties",
    "PropertyName",
    "check_property",
    "classify",
]
