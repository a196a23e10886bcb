"""Built-in expression operations."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from types import MappingProxyType
from typing import ClassVar

from . import binary, unary
from .curve import Curve
from .envelope import parallel_aggregate
from .operation import Operation, ParamValue, ResultKind, Value
from .plugins import hookimpl
from .rational import ExtendedRational


def _rational(params: Mapping[str, ParamValue], name: str) -> ExtendedRational:
    value = params[name]
    if isinstance(value, bool):
        msg = f"parameter '{name}' must be a rational, got a boolean"
        raise TypeError(msg)
    return value


class Minimum(Operation):
    name = "min"
    description = "Pointwise minimum of two or more curves."
    arity = (2, None)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        if len(args) == 2:
            return binary.minimum(*args, self.settings)
        return binary.minimum_of(args, self.settings)


class Maximum(Operation):
    name = "max"
    description = "Pointwise maximum of two or more curves."
    arity = (2, None)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return parallel_aggregate(args, binary.maximum, self.settings)


class Add(Operation):
    name = "add"
    description = "Pointwise sum of two or more curves."
    arity = (2, None)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return binary.add_many(args, self.settings)


class Subtract(Operation):
    name = "sub"
    description = "Pointwise difference, clamped at zero unless nonNegative is false."
    defaults: ClassVar[Mapping[str, ParamValue]] = MappingProxyType({"nonNegative": True})

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        f, g = args
        return binary.subtract(f, g, non_negative=bool(params["nonNegative"]), settings=self.settings)


class Convolution(Operation):
    name = "conv"
    description = "Min-plus convolution of two or more curves."
    arity = (2, None)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return parallel_aggregate(args, binary.convolution, self.settings)


class Deconvolution(Operation):
    name = "deconv"
    description = "Min-plus deconvolution."

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return binary.deconvolution(*args, self.settings)


class MaxPlusConvolution(Operation):
    name = "maxconv"
    description = "Max-plus convolution."

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return binary.max_plus_convolution(*args, self.settings)


class MaxPlusDeconvolution(Operation):
    name = "maxdeconv"
    description = "Max-plus deconvolution."

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return binary.max_plus_deconvolution(*args, self.settings)


class VerticalDeviation(Operation):
    name = "vdev"
    description = "Backlog bound between an arrival and a service curve."
    returns: ClassVar[ResultKind] = "scalar"

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return binary.vertical_deviation(*args, self.settings)


class HorizontalDeviation(Operation):
    name = "hdev"
    description = "Delay bound between an arrival and a service curve."
    returns: ClassVar[ResultKind] = "scalar"

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return binary.horizontal_deviation(*args, self.settings)


class LowerPseudoInverse(Operation):
    name = "lpi"
    arity = (1, 1)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return unary.lower_pseudo_inverse(args[0], self.settings)


class UpperPseudoInverse(Operation):
    name = "upi"
    arity = (1, 1)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return unary.upper_pseudo_inverse(args[0], self.settings)


class SubAdditiveClosure(Operation):
    name = "subclosure"
    arity = (1, 1)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return unary.sub_additive_closure(args[0], self.settings)


class SuperAdditiveClosure(Operation):
    name = "superclosure"
    arity = (1, 1)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return unary.super_additive_closure(args[0], self.settings)


class Composition(Operation):
    name = "compose"
    description = "f(g(t)) for the outer curve f and the inner curve g."

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return unary.composition(*args, self.settings)


class Delay(Operation):
    name = "delay"
    description = "Shift right by theta, filling the gap with 0."
    arity = (1, 1)
    required = ("theta",)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return args[0].delay_by(_rational(params, "theta"))


class Anticipate(Operation):
    name = "anticipate"
    description = "Shift left by theta."
    arity = (1, 1)
    required = ("theta",)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return args[0].anticipate_by(_rational(params, "theta"))


class VerticalShift(Operation):
    name = "vshift"
    arity = (1, 1)
    required = ("value",)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return args[0].vertical_shift(_rational(params, "value"))


class Cut(Operation):
    name = "cut"
    description = "Restriction to [start, end[ as a finite sequence."
    arity = (1, 1)
    required = ("start", "end")
    returns: ClassVar[ResultKind] = "sequence"

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return args[0].cut(_rational(params, "start"), _rational(params, "end"))


BUILTIN_OPERATIONS: tuple[type[Operation], ...] = (
    Minimum,
    Maximum,
    Add,
    Subtract,
    Convolution,
    Deconvolution,
    MaxPlusConvolution,
    MaxPlusDeconvolution,
    VerticalDeviation,
    HorizontalDeviation,
    LowerPseudoInverse,
    UpperPseudoInverse,
    SubAdditiveClosure,
    SuperAdditiveClosure,
    Composition,
    Delay,
    Anticipate,
    VerticalShift,
    Cut,
)


class BuiltinOperations:
    """Pluggy plugin contributing :data:`BUILTIN_OPERATIONS`."""

    @hookimpl
    def curve_operations(self) -> Iterable[type[Operation]]:
        return BUILTIN_OPERATIONS
