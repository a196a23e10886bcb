"""Exact rational numbers extended with +inf and -inf.

Finite values are backed by :class:`fractions.Fraction`, so numerators and
denominators are arbitrary-precision and always canonical. Undefined forms
such as ``(+inf) + (-inf)`` raise :class:`~uppcalc.errors.UndefinedFormError`.
"""

from __future__ import annotations

import math
from enum import IntEnum
from fractions import Fraction
from typing import Literal

from .errors import ConstructionError, DomainError, UndefinedFormError

type RationalLike = ExtendedRational | Fraction | int | str
type TimeLike = Fraction | int | str | ExtendedRational

_FINITE = 0
_PLUS = 1
_MINUS = -1

_INFINITY_TEXT = {"inf": _PLUS, "+inf": _PLUS, "infinity": _PLUS, "-inf": _MINUS, "-infinity": _MINUS}


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


class ExtendedRational:
    """An exact number in Q extended with +inf and -inf. Instances are immutable."""

    __slots__ = ("_kind", "_value")

    _kind: int
    _value: Fraction

    def __init__(self, value: RationalLike | float = 0, denominator: int | None = None) -> None:
        if denominator is not None and not isinstance(value, int):
            msg = "a denominator is only accepted with an integer numerator"
            raise TypeError(msg)
        if isinstance(value, ExtendedRational):
            kind, fraction = value._kind, value._value
        elif isinstance(value, str):
            kind, fraction = _parse_text(value)
        elif isinstance(value, float):
            if not math.isinf(value):
                msg = "floats are not exact; pass a Fraction, an int or a string"
                raise TypeError(msg)
            kind, fraction = (_PLUS if value > 0 else _MINUS), Fraction(0)
        else:
            kind, fraction = _FINITE, Fraction(value) if denominator is None else Fraction(value, denominator)
        object.__setattr__(self, "_kind", kind)
        object.__setattr__(self, "_value", fraction)

    @classmethod
    def _make(cls, kind: int, fraction: Fraction) -> ExtendedRational:
        instance = object.__new__(cls)
        object.__setattr__(instance, "_kind", kind)
        object.__setattr__(instance, "_value", fraction)
        return instance

    @classmethod
    def finite(cls, fraction: Fraction | int) -> ExtendedRational:
        return cls._make(_FINITE, Fraction(fraction))

    @classmethod
    def plus_infinity(cls) -> ExtendedRational:
        return cls._make(_PLUS, Fraction(0))

    @classmethod
    def minus_infinity(cls) -> ExtendedRational:
        return cls._make(_MINUS, Fraction(0))

    def __setattr__(self, name: str, value: object) -> None:
        msg = "ExtendedRational is immutable"
        raise AttributeError(msg)

    def __reduce__(self) -> tuple[object, tuple[str]]:
        return (ExtendedRational, (str(self),))

    # -- inspection -----------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self._kind == _FINITE

    @property
    def is_infinite(self) -> bool:
        return self._kind != _FINITE

    @property
    def is_plus_infinity(self) -> bool:
        return self._kind == _PLUS

    @property
    def is_minus_infinity(self) -> bool:
        return self._kind == _MINUS

    @property
    def kind(self) -> Literal["finite", "plus-infinity", "minus-infinity"]:
        if self._kind == _PLUS:
            return "plus-infinity"
        if self._kind == _MINUS:
            return "minus-infinity"
        return "finite"

    @property
    def numerator(self) -> int:
        return self.fraction.numerator

    @property
    def denominator(self) -> int:
        return self.fraction.denominator

    @property
    def fraction(self) -> Fraction:
        """The finite value as a :class:`Fraction`."""

        if self._kind != _FINITE:
            raise DomainError.not_finite(self)
        return self._value

    @property
    def sign(self) -> int:
        if self._kind != _FINITE:
            return self._kind
        return (self._value > 0) - (self._value < 0)

    def is_integer(self) -> bool:
        return self._kind == _FINITE and self._value.denominator == 1

    def floor(self) -> int:
        return math.floor(self.fraction)

    def ceil(self) -> int:
        return math.ceil(self.fraction)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: RationalLike) -> ExtendedRational:
        right = _coerce(other)
        if right is None:
            return NotImplemented
        if self._kind == _FINITE and right._kind == _FINITE:
            return ExtendedRational._make(_FINITE, self._value + right._value)
        if self._kind != _FINITE and right._kind != _FINITE and self._kind != right._kind:
            raise UndefinedFormError.form(self, "+", right)
        return self if self._kind != _FINITE else right

    __radd__ = __add__

    def __sub__(self, other: RationalLike) -> ExtendedRational:
        right = _coerce(other)
        if right is None:
            return NotImplemented
        if self._kind == _FINITE and right._kind == _FINITE:
            return ExtendedRational._make(_FINITE, self._value - right._value)
        if self._kind != _FINITE and self._kind == right._kind:
            raise UndefinedFormError.form(self, "-", right)
        return self if self._kind != _FINITE else -right

    def __rsub__(self, other: RationalLike) -> ExtendedRational:
        left = _coerce(other)
        if left is None:
            return NotImplemented
        return left - self

    def __mul__(self, other: RationalLike) -> ExtendedRational:
        right = _coerce(other)
        if right is None:
            return NotImplemented
        if self._kind == _FINITE and right._kind == _FINITE:
            return ExtendedRational._make(_FINITE, self._value * right._value)
        sign = self.sign * right.sign
        if sign == 0:
            raise UndefinedFormError.form(self, "*", right)
        return PLUS_INFINITY if sign > 0 else MINUS_INFINITY

    __rmul__ = __mul__

    def __truediv__(self, other: RationalLike) -> ExtendedRational:
        right = _coerce(other)
        if right is None:
            return NotImplemented
        if right._kind == _FINITE and right._value == 0:
            raise UndefinedFormError.form(self, "/", right)
        if self._kind == _FINITE and right._kind == _FINITE:
            return ExtendedRational._make(_FINITE, self._value / right._value)
        if self._kind != _FINITE and right._kind != _FINITE:
            raise UndefinedFormError.form(self, "/", right)
        if self._kind == _FINITE:
            return ZERO
        return PLUS_INFINITY if self.sign * right.sign > 0 else MINUS_INFINITY

    def __rtruediv__(self, other: RationalLike) -> ExtendedRational:
        left = _coerce(other)
        if left is None:
            return NotImplemented
        return left / self

    def __neg__(self) -> ExtendedRational:
        return ExtendedRational._make(-self._kind, -self._value)

    def __pos__(self) -> ExtendedRational:
        return self

    def __abs__(self) -> ExtendedRational:
        return -self if self.sign < 0 else self

    # -- ordering -------------------------------------------------------

    def _key(self) -> tuple[int, Fraction]:
        return (self._kind, self._value)

    def __eq__(self, other: object) -> bool:
        right = _coerce(other)
        if right is None:
            return NotImplemented
        return self._kind == right._kind and self._value == right._value

    def __lt__(self, other: RationalLike) -> bool:
        right = _coerce(other)
        if right is None:
            return NotImplemented
        return self._key() < right._key()

    def __le__(self, other: RationalLike) -> bool:
        right = _coerce(other)
        if right is None:
            return NotImplemented
        return self._key() <= right._key()

    def __gt__(self, other: RationalLike) -> bool:
        right = _coerce(other)
        if right is None:
            return NotImplemented
        return self._key() > right._key()

    def __ge__(self, other: RationalLike) -> bool:
        right = _coerce(other)
        if right is None:
            return NotImplemented
        return self._key() >= right._key()

    def __hash__(self) -> int:
        if self._kind == _FINITE:
            return hash(self._value)
        return hash(math.inf * self._kind)

    def __bool__(self) -> bool:
        return self._kind != _FINITE or self._value != 0

    def __float__(self) -> float:
        if self._kind != _FINITE:
            return math.inf * self._kind
        return float(self._value)

    # -- text -----------------------------------------------------------

    def __str__(self) -> str:
        if self._kind == _PLUS:
            return "inf"
        if self._kind == _MINUS:
            return "-inf"
        if self._value.denominator == 1:
            return str(self._value.numerator)
        return f"{self._value.numerator}/{self._value.denominator}"

    def __repr__(self) -> str:
        return f"ExtendedRational('{self}')"

    def to_fraction_string(self) -> str:
        """Render finite values as ``p/q`` even when ``q`` is 1."""

        if self._kind != _FINITE:
            return str(self)
        return f"{self._value.numerator}/{self._value.denominator}"


ZERO = ExtendedRational._make(_FINITE, Fraction(0))
ONE = ExtendedRational._make(_FINITE, Fraction(1))
PLUS_INFINITY = ExtendedRational._make(_PLUS, Fraction(0))
MINUS_INFINITY = ExtendedRational._make(_MINUS, Fraction(0))


def _parse_text(text: str) -> tuple[int, Fraction]:
    cleaned = text.strip().lower()
    if cleaned in _INFINITY_TEXT:
        return _INFINITY_TEXT[cleaned], Fraction(0)
    if "." in cleaned or "e" in cleaned:
        raise ConstructionError.unparsable(text)
    try:
        return _FINITE, Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConstructionError.unparsable(text) from exc


def _coerce(value: object) -> ExtendedRational | None:
    if isinstance(value, ExtendedRational):
        return value
    if isinstance(value, bool):
        return None
    if isinstance(value, int | Fraction):
        return ExtendedRational._make(_FINITE, Fraction(value))
    return None


def rational(value: RationalLike | float) -> ExtendedRational:
    """Coerce ``value`` to an :class:`ExtendedRational`."""

    if isinstance(value, ExtendedRational):
        return value
    return ExtendedRational(value)


def as_time(value: TimeLike) -> Fraction:
    """Coerce ``value`` to a finite time instant."""

    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    converted = rational(value)
    if converted.is_infinite:
        raise ConstructionError.infinite_time(value)
    return converted.fraction


def compare(a: RationalLike, b: RationalLike) -> Ordering:
    left, right = rational(a), rational(b)
    if left < right:
        return Ordering.LESS
    if left > right:
        return Ordering.GREATER
    return Ordering.EQUAL


def arith(a: RationalLike, b: RationalLike, op: Literal["add", "sub", "mul", "div"]) -> ExtendedRational:
    left, right = rational(a), rational(b)
    match op:
        case "add":
            return left + right
        case "sub":
            return left - right
        case "mul":
            return left * right
        case "div":
            return left / right
    msg = f"Unknown arithmetic operator: {op!r}"
    raise ValueError(msg)


def _positive_fraction(value: RationalLike, operation: str) -> Fraction:
    converted = rational(value)
    if converted.is_infinite or converted.fraction <= 0:
        raise DomainError.requires(operation, f"positive finite arguments, got {converted}")
    return converted.fraction


def rational_lcm(a: RationalLike, b: RationalLike) -> ExtendedRational:
    """Smallest positive m such that m/a and m/b are integers: lcm(p, r) / gcd(q, s)."""

    left, right = _positive_fraction(a, "rational_lcm"), _positive_fraction(b, "rational_lcm")
    numerator = math.lcm(left.numerator, right.numerator)
    denominator = math.gcd(left.denominator, right.denominator)
    return ExtendedRational.finite(Fraction(numerator, denominator))


def rational_gcd(a: RationalLike, b: RationalLike) -> ExtendedRational:
    """Largest positive g such that a/g and b/g are integers: gcd(p, r) / lcm(q, s)."""

    left, right = _positive_fraction(a, "rational_gcd"), _positive_fraction(b, "rational_gcd")
    numerator = math.gcd(left.numerator, right.numerator)
    denominator = math.lcm(left.denominator, right.denominator)
    return ExtendedRational.finite(Fraction(numerator, denominator))


def fraction_lcm(a: Fraction, b: Fraction) -> Fraction:
    """:func:`rational_lcm` on plain positive fractions."""

    return Fraction(math.lcm(a.numerator, b.numerator), math.gcd(a.denominator, b.denominator))
