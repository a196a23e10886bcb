from __future__ import annotations

from fractions import Fraction

import pytest

from uppcalc import Curve, ExtendedRational, Point, Segment, Sequence, equivalent, rate_latency, sigma_rho, stair
from uppcalc.errors import ExpressionError, OperationExecutionError, UnresolvedReferenceError
from uppcalc.events import EventBus
from uppcalc.expressions import evaluate, literal, op, ref
from uppcalc.families import delay

RESIDUAL = Curve(Sequence((Point(0, 0), Segment(0, 4, 0, 0), Point(4, 0), Segment(4, 6, 3, 1))), 5, 1, 1)


def test_delay_bound_expression() -> None:
    definitions = {"ac": sigma_rho(1, 1), "fast": rate_latency(3, 0), "slow": rate_latency(3, 4)}
    service = op("min", ref("fast"), op("vshift", ref("slow"), value=3))

    assert evaluate(op("hdev", ref("ac"), service), definitions) == ExtendedRational(2)

    curve = evaluate(service, definitions)
    assert isinstance(curve, Curve)
    assert [curve.value_at(t) for t in (0, Fraction(1, 2), 1, 3, 4, 6)] == [0, Fraction(3, 2), 3, 3, 3, 9]


def test_residual_service_expression() -> None:
    definitions = {"beta": rate_latency(3, 2), "alpha": sigma_rho(3, 2), "delta": delay(4)}
    residual = op("sub", ref("beta"), op("conv", ref("alpha"), ref("delta")), nonNegative=True)

    result = evaluate(op("min", residual, ref("delta")), definitions)

    assert isinstance(result, Curve)
    assert equivalent(result, RESIDUAL)
    assert result.right_limit_at(4) == 3


def test_literal_nodes_and_parameters() -> None:
    shifted = evaluate(op("delay", literal(stair(2, 3)), theta=1))
    assert isinstance(shifted, Curve)
    assert [shifted.value_at(t) for t in (0, 1, 2, 4, 5)] == [0, 0, 2, 2, 4]

    window = evaluate(op("cut", literal(rate_latency(1, 0)), start=1, end=3))
    assert isinstance(window, Sequence)
    assert window.defined_from == 1
    assert window.defined_until == 3


def test_variadic_operations_fold_every_argument() -> None:
    total = evaluate(op("add", ref("a"), ref("a"), ref("a")), {"a": rate_latency(1, 0)})
    assert isinstance(total, Curve)
    assert total.value_at(4) == 12


def test_paths_are_reported_in_events_and_errors() -> None:
    bus = EventBus()
    tree = op("min", ref("a"), op("conv", ref("a"), ref("b")))

    with bus.record("operation.started") as recorder:
        evaluate(tree, {"a": rate_latency(1, 0), "b": rate_latency(2, 1)}, event_bus=bus)
    assert [payload["path"] for payload in recorder.payloads()] == ["$.args[1]", "$"]

    with pytest.raises(UnresolvedReferenceError) as exc_info:
        evaluate(tree, {"a": rate_latency(1, 0)})
    assert exc_info.value.name == "b"
    assert exc_info.value.path == "$.args[1].args[1]"


def test_invalid_expressions_are_rejected() -> None:
    definitions = {"a": sigma_rho(4, 1), "b": rate_latency(3, 3)}
    with pytest.raises(ExpressionError):
        evaluate(op("conv", ref("a")), definitions)
    with pytest.raises(ExpressionError):
        evaluate(op("lpi", op("vdev", ref("a"), ref("b"))), definitions)
    with pytest.raises(OperationExecutionError) as exc_info:
        evaluate(op("min", ref("a"), op("lpi", op("sub", ref("b"), ref("a"), nonNegative=False))), definitions)
    assert exc_info.value.path == "$.args[1]"
