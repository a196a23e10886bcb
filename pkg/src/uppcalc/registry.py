"""Operation registry keeping track of the available expression operations."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .errors import OperationLookupError, OperationRegistrationError
from .operation import Operation


@dataclass(frozen=True)
class OperationRecord:
    """Metadata describing a registered operation."""

    name: str
    operation_cls: type[Operation]
    description: str | None
    source: str | None = None


class OperationRegistry:
    """Central registry for operation classes."""

    def __init__(self) -> None:
        self._operations: dict[str, OperationRecord] = {}

    def register(self, operation_cls: type[Operation], *, source: str | None = None) -> None:
        if not isinstance(operation_cls, type) or not issubclass(operation_cls, Operation):
            raise OperationRegistrationError.not_subclass(operation_cls)
        name = getattr(operation_cls, "name", None)
        if not name:
            raise OperationRegistrationError.missing_name(operation_cls)
        if name in self._operations:
            raise OperationRegistrationError.duplicate(name)
        description = getattr(operation_cls, "description", None)
        self._operations[name] = OperationRecord(
            name=name, operation_cls=operation_cls, description=description, source=source
        )

    def bulk_register(self, operations: Iterable[type[Operation]], *, source: str | None = None) -> None:
        for operation_cls in operations:
            self.register(operation_cls, source=source)

    def get(self, name: str) -> type[Operation]:
        try:
            return self._operations[name].operation_cls
        except KeyError as exc:
            raise OperationLookupError.missing(name) from exc

    def info(self, name: str) -> OperationRecord:
        try:
            return self._operations[name]
        except KeyError as exc:
            raise OperationLookupError.missing(name) from exc

    def list(self) -> list[OperationRecord]:
        return list(self._operations.values())

    def names(self) -> tuple[str, ...]:
        return tuple(sorted(self._operations))

    def __contains__(self, name: object) -> bool:
        return name in self._operations

    def __len__(self) -> int:
        return len(self._operations)
