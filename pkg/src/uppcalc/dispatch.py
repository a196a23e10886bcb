"""Built-in convolution fast paths.

Every strategy returns a curve equal to the generic convolution or ``None``
to let the next one try. They are registered as a single pluggy plugin marked
``trylast`` so user strategies are consulted first.
"""

from __future__ import annotations

import logging
from collections.abc import Callable

from .binary import dominates, minimum
from .curve import Curve
from .events import get_event_bus
from .families import rate_latency
from .plugins import hookimpl
from .properties import is_concave, is_non_decreasing, is_sub_additive
from .settings import ComputationSettings

logger = logging.getLogger(__name__)

type Strategy = Callable[[Curve, Curve, ComputationSettings], Curve | None]

_SUB_ADDITIVE_FAMILIES = frozenset({"sigmaRho", "flowControl", "stair"})


def _starts_at_zero(*curves: Curve) -> bool:
    return all(curve.value_at(0) == 0 for curve in curves)


def delay_shift(f: Curve, g: Curve, settings: ComputationSettings) -> Curve | None:
    """``h * delay(theta)`` is ``h`` shifted right when ``h`` is nondecreasing from 0."""

    for shifter, other in ((f, g), (g, f)):
        if shifter.family != "delay":
            continue
        if _starts_at_zero(other) and is_non_decreasing(other):
            return other.delay_by(shifter.family_params["theta"].fraction)
    return None


def rate_latency_pair(f: Curve, g: Curve, settings: ComputationSettings) -> Curve | None:
    if f.family != "rateLatency" or g.family != "rateLatency":
        return None
    first, second = f.family_params, g.family_params
    return rate_latency(min(first["rate"], second["rate"]), first["latency"] + second["latency"])


def concave_minimum(f: Curve, g: Curve, settings: ComputationSettings) -> Curve | None:
    """Concave curves through the origin convolve to their minimum."""

    if _starts_at_zero(f, g) and is_concave(f) and is_concave(g):
        return minimum(f, g, settings)
    return None


def _known_sub_additive(curve: Curve) -> bool:
    if curve.family in _SUB_ADDITIVE_FAMILIES:
        return True
    return is_sub_additive(curve)


def sub_additive_dominance(f: Curve, g: Curve, settings: ComputationSettings | None = None) -> Curve | None:
    """Return ``f`` when ``f(0) = g(0) = 0``, ``f <= g`` and ``f`` is sub-additive, or ``g`` symmetrically.

    In that case ``f * g = f``; ``None`` means the shortcut does not apply.
    """

    if not _starts_at_zero(f, g):
        return None
    for low, high in ((f, g), (g, f)):
        if dominates(low, high, settings) and _known_sub_additive(low):
            return low
    return None


def _sub_additive_dominance(f: Curve, g: Curve, settings: ComputationSettings) -> Curve | None:
    return sub_additive_dominance(f, g, settings)


STRATEGIES: tuple[tuple[str, Strategy], ...] = (
    ("delay-shift", delay_shift),
    ("rate-latency", rate_latency_pair),
    ("concave-minimum", concave_minimum),
    ("sub-additive-dominance", _sub_additive_dominance),
)


def try_strategies(f: Curve, g: Curve, settings: ComputationSettings) -> Curve | None:
    for name, strategy in STRATEGIES:
        result = strategy(f, g, settings)
        if result is not None:
            logger.debug("convolution fast path %s", name)
            get_event_bus().emit("dispatch.selected", strategy=name)
            return result
    return None


class BuiltinStrategies:
    """Pluggy plugin exposing :data:`STRATEGIES`."""

    @hookimpl(trylast=True)
    def convolution_strategy(self, f: Curve, g: Curve, settings: ComputationSettings) -> Curve | None:
        return try_strategies(f, g, settings)


__all__ = [
    "STRATEGIES",
    "BuiltinStrategies",
    "concave_minimum",
    "delay_shift",
    "rate_latency_pair",
    "sub_additive_dominance",
    "try_strategies",
]
