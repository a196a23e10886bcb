"""Plugin integration powered by :mod:`pluggy`."""

from __future__ import annotations

from collections.abc import Iterable
from typing import TYPE_CHECKING, Any

import pluggy

from .errors import PluginError

if TYPE_CHECKING:
    from .curve import Curve
    from .settings import ComputationSettings

hookspec = pluggy.HookspecMarker("uppcalc")
hookimpl = pluggy.HookimplMarker("uppcalc")


class HookSpecs:
    """Hook specification container registered with :class:`pluggy.PluginManager`."""

    @hookspec
    def curve_operations(self) -> Iterable[type]:  # pragma: no cover - executed via Pluggy
        """Yield or return an iterable of operation classes to register."""
        raise NotImplementedError

    @hookspec(firstresult=True)
    def convolution_strategy(
        self, f: Curve, g: Curve, settings: ComputationSettings
    ) -> Curve | None:  # pragma: no cover - executed via Pluggy
        """Return a curve equal to ``f * g``, or ``None`` to fall through."""
        raise NotImplementedError


class CurvePluginManager:
    """Thin wrapper around :class:`pluggy.PluginManager` with helpful utilities."""

    def __init__(self) -> None:
        self._manager = pluggy.PluginManager("uppcalc")
        self._manager.add_hookspecs(HookSpecs)

    @classmethod
    def with_builtins(cls) -> CurvePluginManager:
        """A manager carrying the built-in operations and convolution fast paths."""

        from .builtins import BuiltinOperations
        from .dispatch import BuiltinStrategies

        manager = cls()
        manager.register(BuiltinOperations(), name="uppcalc.operations")
        manager.register(BuiltinStrategies(), name="uppcalc.strategies")
        return manager

    @property
    def hook(self) -> pluggy.PluginManager.hook:  # type: ignore[valid-type]
        return self._manager.hook

    def register(self, plugin: Any, name: str | None = None) -> None:
        if self._manager.is_registered(plugin):
            raise PluginError("register", ValueError(f"Plugin {plugin!r} is already registered"))
        if name is not None and self._manager.has_plugin(name):
            raise PluginError("register", ValueError(f"Plugin name '{name}' is already registered"))
        self._manager.register(plugin, name=name)

    def unregister(self, name: str) -> None:
        self._manager.unregister(name=name)

    def iter_operations(self) -> Iterable[type]:
        hook = self._manager.hook.curve_operations
        try:
            contributions = hook()
        except Exception as exc:  # pragma: no cover
            raise PluginError("curve_operations", exc) from exc

        # pluggy returns results in reverse registration order
        implementations = list(reversed(hook.get_hookimpls()))
        for impl, contribution in zip(implementations, contributions, strict=False):
            if contribution is None:
                continue
            if not isinstance(contribution, Iterable):
                plugin_name = impl.plugin_name or repr(impl.plugin)
                error = TypeError(f"Plugin {plugin_name} returned non-iterable curve_operations result")
                raise PluginError("curve_operations", error) from error
            yield from contribution

    def convolution_strategy(self, f: Curve, g: Curve, settings: ComputationSettings) -> Curve | None:
        try:
            return self._manager.hook.convolution_strategy(f=f, g=g, settings=settings)
        except Exception as exc:
            raise PluginError("convolution_strategy", exc) from exc
