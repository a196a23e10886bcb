"""Operation base class behind every expression node."""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Mapping
from types import MappingProxyType
from typing import ClassVar, Literal

from .context import EvaluationContext
from .curve import Curve
from .errors import ExpressionError
from .rational import ExtendedRational
from .sequence import Sequence
from .settings import ComputationSettings

type Value = Curve | ExtendedRational | Sequence
type ParamValue = ExtendedRational | bool
type ResultKind = Literal["curve", "scalar", "sequence"]


class Operation(ABC):
    """Base class for expression operations.

    Subclasses define a unique ``name``, their ``arity`` as ``(low, high)``
    (``high`` is ``None`` for variadic folds), the ``required`` parameter
    names and optional ``defaults``, then implement ``execute``.
    """

    name: ClassVar[str]
    description: ClassVar[str | None] = None
    arity: ClassVar[tuple[int, int | None]] = (2, 2)
    required: ClassVar[tuple[str, ...]] = ()
    defaults: ClassVar[Mapping[str, ParamValue]] = MappingProxyType({})
    returns: ClassVar[ResultKind] = "curve"

    def __init__(self, *, context: EvaluationContext | None = None) -> None:
        self._context = context

    @property
    def context(self) -> EvaluationContext:
        if self._context is None:
            msg = "Operation context is not attached. Pass `context=` when instantiating or use `invoke_operation`."
            raise RuntimeError(msg)
        return self._context

    def set_context(self, context: EvaluationContext | None) -> None:
        self._context = context

    @property
    def settings(self) -> ComputationSettings:
        return self.context.settings

    @classmethod
    def bind(
        cls, args: tuple[Value, ...], params: Mapping[str, ParamValue], path: str = "$"
    ) -> tuple[tuple[Curve, ...], dict[str, ParamValue]]:
        """Check ``args`` and ``params`` against the declared signature."""

        low, high = cls.arity
        if len(args) < low or (high is not None and len(args) > high):
            raise ExpressionError.arity(cls.name, cls.arity, len(args), path)
        for index, value in enumerate(args):
            if not isinstance(value, Curve):
                raise ExpressionError.wrong_kind(cls.name, index, "curve", path)
        bound: dict[str, ParamValue] = {**cls.defaults, **params}
        for name in cls.required:
            if name not in bound:
                raise ExpressionError.missing_parameter(cls.name, name, path)
        return args, bound  # type: ignore[return-value]

    @abstractmethod
    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        """Apply the operation."""


__all__ = ["Operation", "ParamValue", "ResultKind", "Value"]
