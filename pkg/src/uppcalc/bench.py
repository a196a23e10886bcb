"""Benchmark harness comparing the standard and optimized convolution paths.

Each case runs under four configurations (standard/optimized x
sequential/parallel). All four results must be equivalent before any
timing is reported.

The published flow-control operands have pseudo-periods 835 and 571, whose
hyperperiod of 476785 makes the standard path a matter of hours in pure
Python; ``subadditive-conv-small`` keeps the same shape at desk scale.
"""

from __future__ import annotations

import logging
import statistics
import time
from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

from pydantic import Field

from .binary import convolution
from .curve import Curve, equivalent
from .errors import BenchmarkMismatchError, DomainError
from .families import flow_control, rate_latency
from .schema import WireModel
from .settings import ComputationSettings, resolve_settings

logger = logging.getLogger(__name__)

type ConfigurationName = Literal["standard-sequential", "standard-parallel", "optimized-sequential", "optimized-parallel"]

CONFIGURATIONS: tuple[tuple[ConfigurationName, bool, bool], ...] = (
    ("standard-sequential", False, False),
    ("standard-parallel", False, True),
    ("optimized-sequential", True, False),
    ("optimized-parallel", True, True),
)

MIN_RUNS = 3


@dataclass(frozen=True)
class BenchCase:
    name: str
    description: str
    operands: Callable[[], tuple[Curve, Curve]]
    operation: Callable[[Curve, Curve, ComputationSettings], Curve] = convolution


def _published_operands() -> tuple[Curve, Curve]:
    return flow_control(416, 835, 313), flow_control(552, 571, 970)


def _small_operands() -> tuple[Curve, Curve]:
    return flow_control(4, 17, 3), flow_control(5, 13, 9)


def _trivial_operands() -> tuple[Curve, Curve]:
    return rate_latency(3, 2), rate_latency(5, 1)


CASES: dict[str, BenchCase] = {
    case.name: case
    for case in (
        BenchCase("subadditive-conv", "Convolution of the published flow-control operands", _published_operands),
        BenchCase("subadditive-conv-small", "Flow-control convolution at desk scale", _small_operands),
        BenchCase("trivial", "Convolution of two rate-latency curves", _trivial_operands),
    )
}


class ConfigurationTiming(WireModel):
    name: str
    q1_ms: float
    q2_ms: float
    q3_ms: float


class BenchReport(WireModel):
    case: str
    runs: int = Field(ge=MIN_RUNS)
    configurations: list[ConfigurationTiming]

    def timing(self, name: ConfigurationName) -> ConfigurationTiming:
        return next(entry for entry in self.configurations if entry.name == name)


def configuration_settings(base: ComputationSettings, *, optimized: bool, parallel: bool) -> ComputationSettings:
    return base.model_copy(update={"use_fast_paths": optimized, "use_parallelism": parallel})


def _time_runs(case: BenchCase, f: Curve, g: Curve, settings: ComputationSettings, runs: int) -> tuple[Curve, list[float]]:
    result = case.operation(f, g, settings)
    timings: list[float] = []
    for _ in range(runs):
        started = time.perf_counter()
        case.operation(f, g, settings)
        timings.append((time.perf_counter() - started) * 1000)
    return result, timings


def run_case(
    name: str,
    runs: int = 10,
    settings: ComputationSettings | None = None,
    *,
    configurations: tuple[ConfigurationName, ...] | None = None,
) -> BenchReport:
    """Time ``name`` under every configuration and check the results agree.

    The first run of each configuration is a discarded warmup whose result
    is kept for the equivalence check.
    """

    if runs < MIN_RUNS:
        raise DomainError.requires("bench", f"at least {MIN_RUNS} runs, got {runs}")
    try:
        case = CASES[name]
    except KeyError as exc:
        raise DomainError.requires("bench", f"a registered case ({', '.join(sorted(CASES))}), got '{name}'") from exc

    base = resolve_settings(settings)
    f, g = case.operands()
    selected = [entry for entry in CONFIGURATIONS if configurations is None or entry[0] in configurations]

    reference: tuple[str, Curve] | None = None
    timings: list[ConfigurationTiming] = []
    for label, optimized, parallel in selected:
        config = configuration_settings(base, optimized=optimized, parallel=parallel)
        logger.info("bench %s: running %s (%d runs)", name, label, runs)
        result, samples = _time_runs(case, f, g, config, runs)
        if reference is None:
            reference = (label, result)
        elif not equivalent(reference[1], result):
            raise BenchmarkMismatchError(name, (reference[0], label))
        q1, q2, q3 = statistics.quantiles(samples, n=4, method="inclusive")
        timings.append(ConfigurationTiming(name=label, q1_ms=q1, q2_ms=q2, q3_ms=q3))
    return BenchReport(case=name, runs=runs, configurations=timings)


__all__ = ["CASES", "CONFIGURATIONS", "BenchCase", "BenchReport", "ConfigurationTiming", "run_case"]
