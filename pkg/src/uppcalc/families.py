"""Named curve constructors.

Each constructor returns a minimal representation tagged with its family, so
that convolution dispatch can recognise it. Conventions:

* ``stair(a, b)`` has left-continuous risers: 0 at 0 and ``a * ceil(t / b)``
  afterwards, so the value ``k*a`` holds on ``](k-1)*b, k*b]``.
* ``delay(theta)`` is 0 on ``[0, theta]`` and ``+inf`` afterwards; ``delay(0)``
  is the convolution identity.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping

from .curve import Curve, CurveFamily
from .elements import Element, Point, Segment
from .errors import ConstructionError
from .rational import PLUS_INFINITY, ZERO, ExtendedRational, RationalLike, rational
from .sequence import Sequence


def _check(
    family: str, name: str, value: RationalLike, requirement: str, valid: Callable[[ExtendedRational], bool]
) -> ExtendedRational:
    parsed = rational(value)
    if parsed.is_infinite or not valid(parsed):
        raise ConstructionError.invalid_parameter(family, name, value, requirement)
    return parsed


def _positive(family: str, name: str, value: RationalLike) -> ExtendedRational:
    return _check(family, name, value, "a finite value > 0", lambda parsed: parsed > 0)


def _non_negative(family: str, name: str, value: RationalLike) -> ExtendedRational:
    return _check(family, name, value, "a finite value >= 0", lambda parsed: parsed >= 0)


def rate_latency(rate: RationalLike, latency: RationalLike) -> Curve:
    """``R * max(t - L, 0)``."""

    r = _positive("rateLatency", "rate", rate)
    delay_time = _non_negative("rateLatency", "latency", latency).fraction
    elements: list[Element] = [Point(0, ZERO)]
    if delay_time > 0:
        elements.extend((Segment(0, delay_time, ZERO, ZERO), Point(delay_time, ZERO)))
    elements.append(Segment(delay_time, delay_time + 1, ZERO, r))
    return Curve(
        Sequence(elements),
        delay_time,
        1,
        r,
        family="rateLatency",
        family_params={"rate": r, "latency": delay_time},
    )


def sigma_rho(sigma: RationalLike, rho: RationalLike) -> Curve:
    """Token bucket: 0 at 0 and ``sigma + rho * t`` afterwards."""

    burst = _non_negative("sigmaRho", "sigma", sigma)
    r = _non_negative("sigmaRho", "rho", rho)
    params = {"sigma": burst, "rho": r}
    if burst == 0:
        return Curve(Sequence((Point(0, ZERO), Segment(0, 1, ZERO, r))), 0, 1, r, family="sigmaRho", family_params=params)
    elements = (Point(0, ZERO), Segment(0, 1, burst, r), Point(1, burst + r), Segment(1, 2, burst + r, r))
    return Curve(Sequence(elements), 1, 1, r, family="sigmaRho", family_params=params)


def delay(theta: RationalLike) -> Curve:
    """0 on ``[0, theta]`` and ``+inf`` afterwards."""

    shift = _non_negative("delay", "theta", theta).fraction
    elements: list[Element] = [Point(0, ZERO)]
    if shift > 0:
        elements.extend((Segment(0, shift, ZERO, ZERO), Point(shift, ZERO)))
    elements.append(Segment(shift, shift + 1, PLUS_INFINITY, ZERO))
    curve = Curve.ultimately_constant(Sequence(elements))
    return curve.with_family("delay", {"theta": shift})


def stair(height: RationalLike, width: RationalLike) -> Curve:
    """``height * ceil(t / width)``."""

    a = _positive("stair", "height", height)
    b = _positive("stair", "width", width).fraction
    base = Sequence((Point(0, ZERO), Segment(0, b, a, ZERO)))
    return Curve(base, 0, b, a, family="stair", family_params={"height": a, "width": b})


def constant(value: RationalLike) -> Curve:
    level = rational(value)
    return Curve.constant_value(level).with_family("constant", {"value": level})


def zero() -> Curve:
    return constant(ZERO)


def plus_infinite() -> Curve:
    return constant(PLUS_INFINITY)


def linear(rate: RationalLike) -> Curve:
    """``rate * t``."""

    slope = rational(rate)
    if slope.is_infinite:
        raise ConstructionError.invalid_parameter("generic", "rate", rate, "a finite value")
    return Curve(Sequence((Point(0, ZERO), Segment(0, 1, ZERO, slope))), 0, 1, slope)


def max_plus_identity() -> Curve:
    """0 at 0 and ``-inf`` afterwards."""

    return delay(0).negate()


def flow_control(rate: RationalLike, latency: RationalLike, window: RationalLike) -> Curve:
    """Sub-additive closure of ``R * max(t - L, 0) + W`` with 0 at the origin.

    When ``W >= R * L`` the closure is the shifted rate-latency curve itself;
    otherwise it is a staircase of period ``L`` and height ``W`` whose risers
    have slope ``R``.
    """

    r = _positive("flowControl", "rate", rate)
    lag = _non_negative("flowControl", "latency", latency).fraction
    w = _positive("flowControl", "window", window)
    params = {"rate": r, "latency": lag, "window": w}

    if w >= r * lag:
        if lag == 0:
            elements: tuple[Element, ...] = (
                Point(0, ZERO),
                Segment(0, 1, w, r),
                Point(1, w + r),
                Segment(1, 2, w + r, r),
            )
            return Curve(Sequence(elements), 1, 1, r, family="flowControl", family_params=params)
        elements = (Point(0, ZERO), Segment(0, lag, w, ZERO), Point(lag, w), Segment(lag, lag + 1, w, r))
        return Curve(Sequence(elements), lag, 1, r, family="flowControl", family_params=params)

    knee = lag + (w / r).fraction
    elements = (
        Point(0, ZERO),
        Segment(0, lag, w, ZERO),
        Point(lag, w),
        Segment(lag, knee, w, r),
        Point(knee, 2 * w),
        Segment(knee, 2 * lag, 2 * w, ZERO),
    )
    return Curve(Sequence(elements), lag, lag, w, family="flowControl", family_params=params)


_CONSTRUCTORS: dict[str, tuple[Callable[..., Curve], tuple[str, ...]]] = {
    "rateLatency": (rate_latency, ("rate", "latency")),
    "sigmaRho": (sigma_rho, ("sigma", "rho")),
    "delay": (delay, ("theta",)),
    "stair": (stair, ("height", "width")),
    "constant": (constant, ("value",)),
    "flowControl": (flow_control, ("rate", "latency", "window")),
}


def family_parameters(family: CurveFamily) -> tuple[str, ...]:
    try:
        return _CONSTRUCTORS[family][1]
    except KeyError as exc:
        raise ConstructionError.unknown_family(family) from exc


def construct(family: CurveFamily, params: Mapping[str, RationalLike]) -> Curve:
    """Build a family member from named parameters."""

    try:
        constructor, names = _CONSTRUCTORS[family]
    except KeyError as exc:
        raise ConstructionError.unknown_family(family) from exc
    missing = [name for name in names if name not in params]
    if missing:
        raise ConstructionError.invalid_parameter(family, missing[0], None, "a value")
    return constructor(*(params[name] for name in names))


def rebuild(curve: Curve) -> Curve:
    """Reconstruct a tagged curve from its family parameters."""

    if curve.family == "generic":
        return curve
    return construct(curve.family, curve.family_params)


__all__ = [
    "constant",
    "construct",
    "delay",
    "family_parameters",
    "flow_control",
    "linear",
    "max_plus_identity",
    "plus_infinite",
    "rate_latency",
    "rebuild",
    "sigma_rho",
    "stair",
    "zero",
]
