from __future__ import annotations

from collections.abc import Mapping

import pytest

from uppcalc.curve import Curve
from uppcalc.errors import OperationLookupError, OperationRegistrationError
from uppcalc.operation import Operation, ParamValue, Value
from uppcalc.registry import OperationRecord, OperationRegistry


class Identity(Operation):
    name = "identity"
    description = "Returns its argument."
    arity = (1, 1)

    def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:
        return args[0]


def test_registry_register_and_retrieve() -> None:
    registry = OperationRegistry()
    registry.register(Identity)

    record = registry.info("identity")
    assert isinstance(record, OperationRecord)
    assert record.operation_cls is Identity
    assert record.description == "Returns its argument."
    assert "identity" in registry
    assert registry.get("identity") is Identity
    assert len(registry) == 1


def test_registry_bulk_register_and_list() -> None:
    registry = OperationRegistry()

    class Another(Identity):
        name = "another"

    registry.bulk_register([Identity, Another], source="plugins")

    assert sorted(record.name for record in registry.list()) == ["another", "identity"]
    assert registry.names() == ("another", "identity")
    assert {record.source for record in registry.list()} == {"plugins"}


def test_registry_rejects_invalid_operations() -> None:
    registry = OperationRegistry()

    class Nameless(Operation):
        arity = (1, 1)

        def execute(self, args: tuple[Curve, ...], params: Mapping[str, ParamValue]) -> Value:  # pragma: no cover
            return args[0]

    with pytest.raises(OperationRegistrationError):
        registry.register(type("NotAnOperation", (), {}))  # type: ignore[arg-type]

    with pytest.raises(OperationRegistrationError):
        registry.register(Nameless)

    registry.register(Identity)
    with pytest.raises(OperationRegistrationError):
        registry.register(Identity)


def test_registry_lookup_errors() -> None:
    registry = OperationRegistry()
    with pytest.raises(OperationLookupError):
        registry.get("missing")
    with pytest.raises(OperationLookupError):
        registry.info("missing")
