"""Conversion between curves, sequences and scalars and their JSON documents.

Generic curves are minimized before writing and family curves are written by
their parameters, so equal inputs always produce the same bytes.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from typing import Any

from .curve import Curve
from .elements import Element, Point, Segment
from .families import construct
from .operation import Value
from .rational import ExtendedRational
from .schema import (
    CURVE_ADAPTER,
    DEFINITIONS_ADAPTER,
    EXPRESSION_ADAPTER,
    RESULT_ADAPTER,
    ConstantModel,
    DelayModel,
    ExpressionNode,
    FlowControlModel,
    GenericCurveModel,
    PointModel,
    RateLatencyModel,
    ScalarModel,
    SegmentModel,
    SequenceModel,
    SigmaRhoModel,
    StairModel,
    WireModel,
)
from .sequence import Sequence

_FAMILY_MODELS: dict[str, type[WireModel]] = {
    "rateLatency": RateLatencyModel,
    "sigmaRho": SigmaRhoModel,
    "delay": DelayModel,
    "stair": StairModel,
    "constant": ConstantModel,
    "flowControl": FlowControlModel,
}


def element_to_model(element: Element) -> PointModel | SegmentModel:
    if isinstance(element, Point):
        return PointModel(time=element.time, value=element.value)
    return SegmentModel(
        start_time=element.start_time,
        end_time=element.end_time,
        right_limit_at_start=element.right_limit_at_start,
        slope=element.slope,
    )


def element_from_model(model: PointModel | SegmentModel) -> Element:
    if isinstance(model, PointModel):
        return Point(model.time, model.value)
    return Segment(model.start_time, model.end_time, model.right_limit_at_start, model.slope)


def _elements(models: Iterable[PointModel | SegmentModel]) -> Sequence:
    return Sequence(element_from_model(model) for model in models)


def curve_to_model(curve: Curve) -> WireModel:
    if curve.family != "generic":
        return _FAMILY_MODELS[curve.family](**curve.family_params)
    minimal = curve.minimize()
    return GenericCurveModel(
        base_sequence=[element_to_model(element) for element in minimal.base_sequence],
        pseudo_period_start=minimal.pseudo_period_start,
        pseudo_period_length=minimal.pseudo_period_length,
        pseudo_period_height=minimal.pseudo_period_height,
    )


def curve_from_model(model: WireModel) -> Curve:
    if isinstance(model, GenericCurveModel):
        return Curve(
            _elements(model.base_sequence),
            model.pseudo_period_start,
            model.pseudo_period_length,
            model.pseudo_period_height,
        )
    family = model.family  # type: ignore[attr-defined]
    params = {name: getattr(model, name) for name in type(model).model_fields if name != "family"}
    return construct(family, params)


def sequence_to_model(sequence: Sequence) -> SequenceModel:
    return SequenceModel(
        defined_from=sequence.defined_from,
        defined_until=sequence.defined_until,
        elements=[element_to_model(element) for element in sequence],
    )


def value_to_model(value: Value) -> WireModel:
    if isinstance(value, Curve):
        return curve_to_model(value)
    if isinstance(value, Sequence):
        return sequence_to_model(value)
    return ScalarModel(value=value)


def value_from_model(model: WireModel) -> Value:
    if isinstance(model, ScalarModel):
        return model.value
    if isinstance(model, SequenceModel):
        return _elements(model.elements)
    return curve_from_model(model)


def dumps(value: Value | Mapping[str, Curve]) -> str:
    """Canonical JSON text of a result value or of a definitions mapping."""

    if isinstance(value, Curve | Sequence | ExtendedRational):
        return value_to_model(value).model_dump_json(by_alias=True, indent=2) + "\n"
    return json.dumps({name: curve_to_data(curve) for name, curve in value.items()}, indent=2) + "\n"


def loads_curve(text: str | bytes) -> Curve:
    return curve_from_model(CURVE_ADAPTER.validate_json(text))


def loads_value(text: str | bytes) -> Value:
    return value_from_model(RESULT_ADAPTER.validate_json(text))


def loads_definitions(text: str | bytes) -> dict[str, Curve]:
    models = DEFINITIONS_ADAPTER.validate_json(text)
    return {name: curve_from_model(model) for name, model in models.items()}


def loads_expression(text: str | bytes) -> ExpressionNode:
    return EXPRESSION_ADAPTER.validate_json(text)


def curve_from_data(data: Mapping[str, Any]) -> Curve:
    return curve_from_model(CURVE_ADAPTER.validate_python(data))


def curve_to_data(curve: Curve) -> dict[str, Any]:
    return curve_to_model(curve).model_dump(mode="json", by_alias=True)


__all__ = [
    "curve_from_data",
    "curve_from_model",
    "curve_to_data",
    "curve_to_model",
    "dumps",
    "element_from_model",
    "element_to_model",
    "loads_curve",
    "loads_definitions",
    "loads_expression",
    "loads_value",
    "sequence_to_model",
    "value_from_model",
    "value_to_model",
]
