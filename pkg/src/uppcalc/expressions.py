"""Evaluation of JSON expression trees over named curves."""

from __future__ import annotations

from collections.abc import Mapping, MutableMapping
from typing import Any

from .context import EvaluationContext
from .curve import Curve
from .events import EventBus, get_event_bus
from .operation import Value
from .plugins import CurvePluginManager
from .registry import OperationRegistry
from .runtime import invoke_operation
from .schema import CurveNode, ExpressionNode, OpNode, RefNode
from .serialization import curve_from_model, curve_to_model
from .settings import ComputationSettings


def _walk(node: ExpressionNode, path: str, ctx: EvaluationContext, **runtime: Any) -> Value:
    if isinstance(node, RefNode):
        return ctx.resolve(node.ref, path)
    if isinstance(node, CurveNode):
        return curve_from_model(node.curve)
    args = tuple(_walk(child, f"{path}.args[{index}]", ctx, **runtime) for index, child in enumerate(node.args))
    return invoke_operation(node.op, args, node.params, path=path, context=ctx, **runtime)


def evaluate(
    node: ExpressionNode,
    definitions: Mapping[str, Curve] | None = None,
    *,
    registry: OperationRegistry | None = None,
    plugins: CurvePluginManager | None = None,
    event_bus: EventBus | None = None,
    settings: ComputationSettings | None = None,
    state: MutableMapping[str, Any] | None = None,
) -> Value:
    """Evaluate ``node`` bottom-up.

    Sub-expression paths look like ``$.args[1].args[0]``; they appear in
    every ``operation.*`` event and in the errors raised for a failing node.
    """

    bus = event_bus if event_bus is not None else get_event_bus()
    ctx = EvaluationContext(event_bus=bus, settings=settings, definitions=definitions, state=state)
    return _walk(node, "$", ctx, registry=registry, plugins=plugins)


def ref(name: str) -> RefNode:
    return RefNode(ref=name)


def literal(curve: Curve) -> CurveNode:
    return CurveNode(curve=curve_to_model(curve))  # type: ignore[arg-type]


def op(name: str, *args: ExpressionNode, **params: Any) -> OpNode:
    """Build an operation node; ``params`` values are rationals or booleans."""

    return OpNode(op=name, args=list(args), params=params)


__all__ = ["evaluate", "literal", "op", "ref"]
