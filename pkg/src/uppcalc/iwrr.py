"""Strict service curve of one flow under interleaved weighted round robin.

The pipeline sums delayed staircases in the data domain, caps their growth
with a unit-rate convolution and maps the result to time through the server
curve. The three parameter functions (:meth:`RoundRobinSystem.interference`,
:meth:`RoundRobinSystem.interfering_data` and
:meth:`RoundRobinSystem.round_length`) are stand-in definitions: simple
worst-case counts over interleaved cycles, not a published derivation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .binary import add_many, convolution
from .curve import Curve
from .errors import ConstructionError
from .families import rate_latency, stair
from .settings import ComputationSettings
from .unary import composition

DEFAULT_WEIGHTS = (4, 6, 7, 10)
DEFAULT_MIN_LENGTHS = (4096, 3072, 4608, 3072)
DEFAULT_MAX_LENGTHS = (8704, 5632, 6656, 8192)
# 10 Mb/s with milliseconds as the time unit
DEFAULT_SERVER_RATE = 10000


@dataclass(frozen=True)
class RoundRobinSystem:
    weights: tuple[int, ...] = DEFAULT_WEIGHTS
    min_lengths: tuple[int, ...] = DEFAULT_MIN_LENGTHS
    max_lengths: tuple[int, ...] = DEFAULT_MAX_LENGTHS
    server: Curve = field(default_factory=lambda: rate_latency(DEFAULT_SERVER_RATE, 0))

    def __post_init__(self) -> None:
        count = len(self.weights)
        if not count or len(self.min_lengths) != count or len(self.max_lengths) != count:
            raise ConstructionError.invalid_parameter("iwrr", "weights", self.weights, "one entry per flow")
        for low, high in zip(self.min_lengths, self.max_lengths, strict=True):
            if not 0 < low <= high:
                raise ConstructionError.invalid_parameter("iwrr", "min_lengths", low, f"in ]0, {high}]")
        if any(weight <= 0 for weight in self.weights):
            raise ConstructionError.invalid_parameter("iwrr", "weights", self.weights, "positive")

    @property
    def flows(self) -> range:
        return range(len(self.weights))

    def interference(self, flow: int, other: int, packets: int) -> int:
        """Stand-in: packets of ``other`` served no later than packet ``packets`` of ``flow``.

        In each cycle a flow with weight at least the cycle index sends one
        packet; ``other`` is assumed to go first within a cycle.
        """

        if packets <= 0:
            return 0
        rounds, rest = divmod(packets - 1, self.weights[flow])
        return rounds * self.weights[other] + min(rest + 1, self.weights[other])

    def interfering_data(self, flow: int, served: int) -> int:
        """Stand-in: total service before ``flow`` gets its next packet after ``served`` units."""

        packet = served // self.min_lengths[flow] + 1
        others = sum(
            self.interference(flow, other, packet) * self.max_lengths[other] for other in self.flows if other != flow
        )
        return served + others

    def round_length(self, flow: int) -> int:
        """Stand-in: service spanned by one full round seen from ``flow``."""

        own = self.weights[flow] * self.min_lengths[flow]
        return own + sum(self.weights[other] * self.max_lengths[other] for other in self.flows if other != flow)

    def delayed_stairs(self, flow: int) -> list[Curve]:
        step = stair(self.min_lengths[flow], self.round_length(flow))
        return [
            step.delay_by(self.interfering_data(flow, k * self.min_lengths[flow])) for k in range(self.weights[flow])
        ]


def strict_service_curve(
    system: RoundRobinSystem | None = None, flow: int = 0, settings: ComputationSettings | None = None
) -> Curve:
    """Sum the delayed stairs, convolve with the unit rate and compose with the server curve."""

    system = system or RoundRobinSystem()
    if flow not in system.flows:
        raise ConstructionError.invalid_parameter("iwrr", "flow", flow, f"in [0, {len(system.weights)}[")
    data_service = add_many(system.delayed_stairs(flow), settings)
    capped = convolution(rate_latency(1, 0), data_service, settings)
    return composition(capped, system.server, settings)


__all__ = ["RoundRobinSystem", "strict_service_curve"]
