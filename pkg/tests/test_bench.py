from __future__ import annotations

import os

import pytest

from uppcalc import ComputationSettings, rate_latency, sigma_rho
from uppcalc.bench import CASES, CONFIGURATIONS, BenchCase, BenchReport, run_case
from uppcalc.errors import BenchmarkMismatchError, DomainError

SEQUENTIAL = ComputationSettings.sequential()


def test_trivial_case_reports_every_configuration() -> None:
    report = run_case("trivial", 3, SEQUENTIAL)

    assert isinstance(report, BenchReport)
    assert report.runs == 3
    assert [entry.name for entry in report.configurations] == [name for name, _, _ in CONFIGURATIONS]
    for entry in report.configurations:
        assert 0 <= entry.q1_ms <= entry.q2_ms <= entry.q3_ms
    assert report.timing("optimized-parallel").name == "optimized-parallel"


def test_configurations_can_be_selected() -> None:
    report = run_case("trivial", 4, SEQUENTIAL, configurations=("optimized-sequential",))
    assert [entry.name for entry in report.configurations] == ["optimized-sequential"]


def test_report_serializes_with_camel_case_fields() -> None:
    document = run_case("trivial", 3, SEQUENTIAL).model_dump(by_alias=True)
    assert set(document["configurations"][0]) == {"name", "q1Ms", "q2Ms", "q3Ms"}


@pytest.mark.parametrize(("case", "runs"), [("trivial", 2), ("missing", 3)])
def test_invalid_requests_are_domain_errors(case: str, runs: int) -> None:
    with pytest.raises(DomainError):
        run_case(case, runs)


def test_disagreeing_configurations_abort_the_run(monkeypatch: pytest.MonkeyPatch) -> None:
    broken = BenchCase(
        "broken",
        "Returns a different curve on the optimized path",
        lambda: (rate_latency(1, 1), sigma_rho(1, 1)),
        operation=lambda f, g, settings: g if settings.use_fast_paths else f,
    )
    monkeypatch.setitem(CASES, "broken", broken)

    with pytest.raises(BenchmarkMismatchError) as exc_info:
        run_case("broken", 3, SEQUENTIAL)
    assert "broken" in str(exc_info.value)


def test_flow_control_case_agrees_and_the_optimized_path_wins() -> None:
    report = run_case("subadditive-conv-small", 3, SEQUENTIAL)

    assert [entry.name for entry in report.configurations] == [name for name, _, _ in CONFIGURATIONS]

    standard = report.timing("standard-sequential").q2_ms
    optimized = report.timing("optimized-sequential").q2_ms
    assert optimized * 100 <= standard


@pytest.mark.skipif((os.cpu_count() or 1) < 4, reason="needs at least four cores")
def test_flow_control_case_runs_faster_in_parallel() -> None:
    settings = ComputationSettings(executor="process", worker_count=4)
    standard = ("standard-sequential", "standard-parallel")
    report = run_case("subadditive-conv-small", 3, settings, configurations=standard)

    sequential = report.timing("standard-sequential").q2_ms
    parallel = report.timing("standard-parallel").q2_ms
    assert sequential >= 1.2 * parallel
