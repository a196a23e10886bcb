"""uppcalc - exact min-plus calculus on ultimately pseudo-periodic curves."""

from __future__ import annotations

from .binary import (
    add,
    add_many,
    convolution,
    deconvolution,
    dominates,
    generic_convolution,
    horizontal_deviation,
    max_plus_convolution,
    max_plus_deconvolution,
    maximum,
    minimum,
    minimum_of,
    subtract,
    vertical_deviation,
)
from .context import EvaluationContext
from .curve import Curve, CurveFamily, equivalent
from .dispatch import sub_additive_dominance
from .elements import Element, Point, Segment
from .envelope import lower_envelope, parallel_aggregate, upper_envelope
from .errors import (
    BenchmarkMismatchError,
    ClosureConvergenceError,
    ConstructionError,
    CurveError,
    DomainError,
    ExpressionError,
    OperationExecutionError,
    OperationLookupError,
    OperationRegistrationAggregateError,
    OperationRegistrationError,
    PluginError,
    UndefinedFormError,
    UnresolvedReferenceError,
)
from .events import (
    STANDARD_EVENTS,
    CapturedEvent,
    EventBus,
    EventRecorder,
    attach_logging,
    get_event_bus,
    reset_event_bus,
    set_event_bus,
)
from .expressions import evaluate
from .families import (
    constant,
    construct,
    delay,
    flow_control,
    linear,
    max_plus_identity,
    plus_infinite,
    rate_latency,
    sigma_rho,
    stair,
    zero,
)
from .operation import Operation
from .plugins import CurvePluginManager, HookSpecs, hookimpl, hookspec
from .properties import PROPERTY_NAMES, CurveProperties, check_property, classify
from .rational import (
    MINUS_INFINITY,
    PLUS_INFINITY,
    ExtendedRational,
    Ordering,
    compare,
    rational,
    rational_gcd,
    rational_lcm,
)
from .registry import OperationRecord, OperationRegistry
from .runtime import (
    get_plugins,
    get_registry,
    invoke_operation,
    reset_plugins,
    reset_registry,
    reset_runtime_defaults,
    scoped_runtime,
    set_plugins,
    set_registry,
)
from .sequence import Sequence
from .settings import ComputationSettings, get_settings, reset_settings, set_settings
from .unary import (
    composition,
    lower_pseudo_inverse,
    sub_additive_closure,
    sub_additive_closure_window,
    super_additive_closure,
    super_additive_closure_window,
    upper_pseudo_inverse,
)

__all__ = [
    "MINUS_INFINITY",
    "PLUS_INFINITY",
    "PROPERTY_NAMES",
    "STANDARD_EVENTS",
    "BenchmarkMismatchError",
    "CapturedEvent",
    "ClosureConvergenceError",
    "ComputationSettings",
    "ConstructionError",
    "Curve",
    "CurveError",
    "CurveFamily",
    "CurvePluginManager",
    "CurveProperties",
    "DomainError",
    "Element",
    "EvaluationContext",
    "EventBus",
    "EventRecorder",
    "ExpressionError",
    "ExtendedRational",
    "HookSpecs",
    "Operation",
    "OperationExecutionError",
    "OperationLookupError",
    "OperationRecord",
    "OperationRegistrationAggregateError",
    "OperationRegistrationError",
    "OperationRegistry",
    "Ordering",
    "PluginError",
    "Point",
    "Segment",
    "Sequence",
    "UndefinedFormError",
    "UnresolvedReferenceError",
    "add",
    "add_many",
    "attach_logging",
    "check_property",
    "classify",
    "compare",
    "composition",
    "constant",
    "construct",
    "convolution",
    "deconvolution",
    "delay",
    "dominates",
    "equivalent",
    "evaluate",
    "flow_control",
    "generic_convolution",
    "get_event_bus",
    "get_plugins",
    "get_registry",
    "get_settings",
    "hookimpl",
    "hookspec",
    "horizontal_deviation",
    "invoke_operation",
    "linear",
    "lower_envelope",
    "lower_pseudo_inverse",
    "max_plus_convolution",
    "max_plus_deconvolution",
    "max_plus_identity",
    "maximum",
    "minimum",
    "minimum_of",
    "parallel_aggregate",
    "plus_infinite",
    "rate_latency",
    "rational",
    "rational_gcd",
    "rational_lcm",
    "reset_event_bus",
    "reset_plugins",
    "reset_registry",
    "reset_runtime_defaults",
    "reset_settings",
    "scoped_runtime",
    "set_event_bus",
    "set_plugins",
    "set_registry",
    "set_settings",
    "sigma_rho",
    "stair",
    "sub_additive_closure",
    "sub_additive_closure_window",
    "sub_additive_dominance",
    "subtract",
    "super_additive_closure",
    "super_additive_closure_window",
    "upper_pseudo_inverse",
    "upper_envelope",
    "vertical_deviation",
    "zero",
]
