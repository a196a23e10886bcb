"""Runtime defaults and single-operation invocation."""

from __future__ import annotations

import inspect
import time
from collections.abc import Iterator, Mapping, MutableMapping
from contextlib import contextmanager
from typing import Any

from .context import EvaluationContext
from .curve import Curve
from .errors import (
    ExpressionError,
    OperationExecutionError,
    OperationLookupError,
    OperationRegistrationAggregateError,
    OperationRegistrationError,
    UnresolvedReferenceError,
)
from .events import EventBus, get_event_bus, reset_event_bus, set_event_bus
from .operation import Operation, ParamValue, Value
from .plugins import CurvePluginManager
from .registry import OperationRegistry
from .settings import ComputationSettings, get_settings, reset_settings, set_settings

type OperationRef = str | type[Operation] | Operation

_default_registry = OperationRegistry()
_default_plugins = CurvePluginManager.with_builtins()


def get_registry() -> OperationRegistry:
    return _default_registry


def get_plugins() -> CurvePluginManager:
    return _default_plugins


def _coerce_operation(operation: OperationRef, registry: OperationRegistry, path: str) -> Operation:
    if isinstance(operation, Operation):
        return operation
    if isinstance(operation, str):
        try:
            return registry.get(operation)()
        except OperationLookupError as exc:
            raise ExpressionError.unknown_operation(operation, path) from exc
    if inspect.isclass(operation) and issubclass(operation, Operation):
        return operation()
    raise OperationRegistrationError.not_subclass(operation)  # type: ignore[arg-type]


def refresh_registry(registry: OperationRegistry, plugins: CurvePluginManager) -> None:
    """Register every operation contributed by ``plugins`` that ``registry`` lacks."""

    candidates: list[type[Operation]] = []
    errors: list[OperationRegistrationError] = []
    seen: set[str] = set()

    for operation_cls in plugins.iter_operations():
        name = getattr(operation_cls, "name", None)
        if not name:
            errors.append(OperationRegistrationError.missing_name(operation_cls))
            continue
        if name in seen:
            errors.append(OperationRegistrationError.duplicate(name))
            continue
        if name in registry:
            if registry.info(name).operation_cls is not operation_cls:
                errors.append(OperationRegistrationError.duplicate(name))
            continue
        if not inspect.isclass(operation_cls) or not issubclass(operation_cls, Operation):
            errors.append(OperationRegistrationError.not_subclass(operation_cls))
            continue
        candidates.append(operation_cls)
        seen.add(name)

    if errors:
        raise (errors[0] if len(errors) == 1 else OperationRegistrationAggregateError(errors))

    for operation_cls in candidates:
        registry.register(operation_cls, source=getattr(operation_cls, "__module__", None))


def set_registry(registry: OperationRegistry) -> None:
    global _default_registry
    _default_registry = registry


def reset_registry() -> None:
    set_registry(OperationRegistry())


def set_plugins(plugins: CurvePluginManager) -> None:
    global _default_plugins
    _default_plugins = plugins


def reset_plugins() -> None:
    set_plugins(CurvePluginManager.with_builtins())


def reset_runtime_defaults() -> None:
    reset_registry()
    reset_plugins()
    reset_event_bus()
    reset_settings()


@contextmanager
def scoped_runtime(
    *,
    settings: ComputationSettings | None = None,
    registry: OperationRegistry | None = None,
    plugins: CurvePluginManager | None = None,
    event_bus: EventBus | None = None,
) -> Iterator[None]:
    previous_settings = get_settings()
    previous_registry = get_registry()
    previous_plugins = get_plugins()
    previous_bus = get_event_bus()

    try:
        if settings is not None:
            set_settings(settings)
        if registry is not None:
            set_registry(registry)
        if plugins is not None:
            set_plugins(plugins)
        if event_bus is not None:
            set_event_bus(event_bus)
        yield
    finally:
        set_settings(previous_settings)
        set_registry(previous_registry)
        set_plugins(previous_plugins)
        set_event_bus(previous_bus)


def invoke_operation(
    operation: OperationRef,
    args: tuple[Value, ...],
    params: Mapping[str, ParamValue] | None = None,
    *,
    path: str = "$",
    registry: OperationRegistry | None = None,
    plugins: CurvePluginManager | None = None,
    event_bus: EventBus | None = None,
    settings: ComputationSettings | None = None,
    definitions: Mapping[str, Curve] | None = None,
    state: MutableMapping[str, Any] | None = None,
    context: EvaluationContext | None = None,
) -> Value:
    """Execute one operation on already evaluated arguments.

    Emits ``operation.started`` and then ``operation.completed`` or
    ``operation.failed``; failures inside the operation are wrapped in
    :class:`OperationExecutionError` carrying ``path``.
    """

    if registry is None:
        registry = _default_registry
    refresh_registry(registry, plugins if plugins is not None else _default_plugins)
    operation_obj = _coerce_operation(operation, registry, path)
    name = operation_obj.name
    bound_args, bound_params = operation_obj.bind(args, params or {}, path)

    if context is None:
        bus = event_bus if event_bus is not None else get_event_bus()
        context = EvaluationContext(event_bus=bus, settings=settings, definitions=definitions, state=state)
    ctx = context
    operation_obj.set_context(ctx)
    ctx.emit("operation.started", operation=name, path=path)
    started = time.perf_counter()
    try:
        result = operation_obj.execute(bound_args, bound_params)
    except (OperationExecutionError, ExpressionError, UnresolvedReferenceError):
        raise
    except Exception as exc:
        ctx.emit("operation.failed", operation=name, path=path, error=exc)
        raise OperationExecutionError(name, path, exc) from exc
    else:
        duration_ms = (time.perf_counter() - started) * 1000
        ctx.emit("operation.completed", operation=name, path=path, duration_ms=duration_ms)
        return result
    finally:
        operation_obj.set_context(None)


__all__ = [
    "OperationRef",
    "get_plugins",
    "get_registry",
    "get_settings",
    "invoke_operation",
    "refresh_registry",
    "reset_plugins",
    "reset_registry",
    "reset_runtime_defaults",
    "scoped_runtime",
    "set_plugins",
    "set_registry",
    "set_settings",
]
