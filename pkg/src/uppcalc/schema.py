"""Pydantic models for the JSON curve, result and expression formats.

Field names are camelCase on the wire; rationals travel as canonical strings
("3/2", "inf") and integers are accepted on input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Annotated, Any, Literal

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, TypeAdapter
from pydantic.alias_generators import to_camel

from .errors import ConstructionError
from .rational import ExtendedRational, rational


def _parse_rational(value: Any) -> ExtendedRational:
    if isinstance(value, ExtendedRational):
        return value
    if isinstance(value, bool) or not isinstance(value, int | str | Fraction):
        msg = f"expected a rational string or an integer, got {value!r}"
        raise ValueError(msg)  # noqa: TRY004
    try:
        return rational(value)
    except ConstructionError as exc:
        raise ValueError(str(exc)) from exc


RationalField = Annotated[
    ExtendedRational,
    BeforeValidator(_parse_rational),
    PlainSerializer(str, return_type=str),
]


class WireModel(BaseModel):
    """Base model with camelCase aliases and strict field sets."""

    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        alias_generator=to_camel,
        populate_by_name=True,
        extra="forbid",
        frozen=True,
    )


class PointModel(WireModel):
    kind: Literal["point"] = "point"
    time: RationalField
    value: RationalField


class SegmentModel(WireModel):
    kind: Literal["segment"] = "segment"
    start_time: RationalField
    end_time: RationalField
    right_limit_at_start: RationalField
    slope: RationalField


ElementModel = Annotated[PointModel | SegmentModel, Field(discriminator="kind")]


class GenericCurveModel(WireModel):
    family: Literal["generic"] = Field(default="generic", alias="type")
    base_sequence: list[ElementModel]
    pseudo_period_start: RationalField
    pseudo_period_length: RationalField
    pseudo_period_height: RationalField


class RateLatencyModel(WireModel):
    family: Literal["rateLatency"] = Field(default="rateLatency", alias="type")
    rate: RationalField
    latency: RationalField


class SigmaRhoModel(WireModel):
    family: Literal["sigmaRho"] = Field(default="sigmaRho", alias="type")
    sigma: RationalField
    rho: RationalField


class DelayModel(WireModel):
    family: Literal["delay"] = Field(default="delay", alias="type")
    theta: RationalField


class StairModel(WireModel):
    family: Literal["stair"] = Field(default="stair", alias="type")
    height: RationalField
    width: RationalField


class ConstantModel(WireModel):
    family: Literal["constant"] = Field(default="constant", alias="type")
    value: RationalField


class FlowControlModel(WireModel):
    family: Literal["flowControl"] = Field(default="flowControl", alias="type")
    rate: RationalField
    latency: RationalField
    window: RationalField


FamilyModel = RateLatencyModel | SigmaRhoModel | DelayModel | StairModel | ConstantModel | FlowControlModel
CurveModel = Annotated[GenericCurveModel | FamilyModel, Field(discriminator="family")]


class SequenceModel(WireModel):
    family: Literal["sequence"] = Field(default="sequence", alias="type")
    defined_from: RationalField
    defined_until: RationalField
    elements: list[ElementModel]


class ScalarModel(WireModel):
    family: Literal["scalar"] = Field(default="scalar", alias="type")
    value: RationalField


ResultModel = Annotated[
    GenericCurveModel | FamilyModel | SequenceModel | ScalarModel,
    Field(discriminator="family"),
]


class RefNode(WireModel):
    ref: str


class CurveNode(WireModel):
    curve: CurveModel


class OpNode(WireModel):
    op: str
    args: list[ExpressionNode] = Field(default_factory=list)
    params: dict[str, bool | RationalField] = Field(default_factory=dict)


ExpressionNode = RefNode | OpNode | CurveNode

OpNode.model_rebuild()

CURVE_ADAPTER: TypeAdapter[Any] = TypeAdapter(CurveModel)
RESULT_ADAPTER: TypeAdapter[Any] = TypeAdapter(ResultModel)
DEFINITIONS_ADAPTER: TypeAdapter[Any] = TypeAdapter(dict[str, CurveModel])
EXPRESSION_ADAPTER: TypeAdapter[Any] = TypeAdapter(ExpressionNode)

__all__ = [
    "CURVE_ADAPTER",
    "DEFINITIONS_ADAPTER",
    "EXPRESSION_ADAPTER",
    "RESULT_ADAPTER",
    "ConstantModel",
    "CurveModel",
    "CurveNode",
    "DelayModel",
    "ElementModel",
    "ExpressionNode",
    "FamilyModel",
    "FlowControlModel",
    "GenericCurveModel",
    "OpNode",
    "PointModel",
    "RateLatencyModel",
    "RefNode",
    "ResultModel",
    "ScalarModel",
    "SegmentModel",
    "SequenceModel",
    "SigmaRhoModel",
    "StairModel",
    "WireModel",
]
