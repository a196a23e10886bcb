"""Evaluation context injected into every operation instance."""

from __future__ import annotations

from collections.abc import Mapping, MutableMapping
from types import MappingProxyType
from typing import Any

from .curve import Curve
from .errors import UnresolvedReferenceError
from .events import EventBus
from .settings import ComputationSettings, resolve_settings


class EvaluationContext:
    """Definitions, settings and the event bus shared by one evaluation."""

    def __init__(
        self,
        *,
        event_bus: EventBus,
        settings: ComputationSettings | None = None,
        definitions: Mapping[str, Curve] | None = None,
        state: MutableMapping[str, Any] | None = None,
    ) -> None:
        self._event_bus = event_bus
        self._settings = resolve_settings(settings)
        self._definitions: dict[str, Curve] = dict(definitions or {})
        self._state: MutableMapping[str, Any] = state if state is not None else {}

    @property
    def event_bus(self) -> EventBus:
        return self._event_bus

    @property
    def settings(self) -> ComputationSettings:
        return self._settings

    @property
    def definitions(self) -> Mapping[str, Curve]:
        """Read-only view of the named curves."""

        return MappingProxyType(self._definitions)

    @property
    def state(self) -> MutableMapping[str, Any]:
        """Mutable state bag shared across the current evaluation."""

        return self._state

    def emit(self, event: str, /, **payload: Any) -> None:
        self._event_bus.emit(event, **payload)

    def resolve(self, name: str, path: str = "$") -> Curve:
        try:
            return self._definitions[name]
        except KeyError as exc:
            raise UnresolvedReferenceError(name, path) from exc

    def define(self, name: str, curve: Curve) -> None:
        self._definitions[name] = curve
