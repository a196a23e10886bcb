"""Computation settings shared by every algebra entry point."""

from __future__ import annotations

import os
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, PositiveInt

WORKERS_ENV = "UPPCALC_WORKERS"


def _default_workers() -> int | None:
    configured = os.environ.get(WORKERS_ENV)
    if configured:
        return int(configured)
    return None


class ComputationSettings(BaseModel):
    """How work is executed; results never depend on these values."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    use_parallelism: bool = True
    parallelism_threshold: PositiveInt = 256
    worker_count: PositiveInt | None = Field(default_factory=_default_workers)
    executor: Literal["process", "thread"] = "process"
    use_fast_paths: bool = True

    @classmethod
    def sequential(cls, **overrides: object) -> ComputationSettings:
        return cls(use_parallelism=False, **overrides)  # type: ignore[arg-type]

    def with_workers(self, count: int) -> ComputationSettings:
        return self.model_copy(update={"worker_count": ComputationSettings(worker_count=count).worker_count})

    @property
    def effective_workers(self) -> int:
        return self.worker_count or os.cpu_count() or 1

    def runs_parallel(self, size: int) -> bool:
        """Whether work of ``size`` items should be spread across workers."""

        return self.use_parallelism and size >= self.parallelism_threshold and self.effective_workers > 1


_default_settings = ComputationSettings()


def get_settings() -> ComputationSettings:
    return _default_settings


def set_settings(settings: ComputationSettings) -> None:
    global _default_settings
    _default_settings = settings


def reset_settings() -> None:
    set_settings(ComputationSettings())


def resolve_settings(settings: ComputationSettings | None) -> ComputationSettings:
    return settings if settings is not None else _default_settings
