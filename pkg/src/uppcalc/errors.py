"""Exception hierarchy shared by every uppcalc module."""

from __future__ import annotations

from typing import Any


class CurveError(RuntimeError):
    """Base error type for uppcalc failures."""


class ConstructionError(CurveError):
    """Raised when an element, sequence, curve or family cannot be built."""

    @classmethod
    def empty_segment(cls, start: Any, end: Any) -> ConstructionError:
        return cls(f"Segment interval ]{start}, {end}[ is empty")

    @classmethod
    def infinite_slope(cls, slope: Any) -> ConstructionError:
        return cls(f"Segment slope must be finite, got {slope}")

    @classmethod
    def sloped_infinity(cls, slope: Any) -> ConstructionError:
        return cls(f"Infinite segment must be flat, got slope {slope}")

    @classmethod
    def infinite_time(cls, value: Any) -> ConstructionError:
        return cls(f"Element times must be finite, got {value}")

    @classmethod
    def not_contiguous(cls, previous: Any, current: Any) -> ConstructionError:
        return cls(f"Elements {previous!r} and {current!r} are not contiguous")

    @classmethod
    def bad_alternation(cls, index: int, element: Any) -> ConstructionError:
        return cls(f"Element {index} ({element!r}) breaks point/segment alternation")

    @classmethod
    def empty_sequence(cls) -> ConstructionError:
        return cls("A sequence needs at least one point and one segment")

    @classmethod
    def bad_period(cls, start: Any, length: Any, height: Any) -> ConstructionError:
        return cls(f"Invalid pseudo-period T={start}, d={length}, c={height}")

    @classmethod
    def infinite_tail_height(cls, height: Any) -> ConstructionError:
        return cls(f"An ultimately infinite curve needs pseudo-period height 0, got {height}")

    @classmethod
    def base_mismatch(cls, expected_end: Any, actual_end: Any) -> ConstructionError:
        return cls(f"Base sequence must cover [0, {expected_end}[, covers until {actual_end}")

    @classmethod
    def invalid_parameter(cls, family: str, name: str, value: Any, requirement: str) -> ConstructionError:
        return cls(f"{family}: parameter '{name}'={value} must be {requirement}")

    @classmethod
    def unknown_family(cls, family: Any) -> ConstructionError:
        return cls(f"Unknown curve family: {family!r}")

    @classmethod
    def unparsable(cls, text: Any) -> ConstructionError:
        return cls(f"Cannot parse {text!r} as an extended rational")


class DomainError(CurveError):
    """Raised when an operation is applied outside its preconditions."""

    @classmethod
    def outside_domain(cls, t: Any, start: Any, end: Any | None = None) -> DomainError:
        upper = "+inf" if end is None else str(end)
        return cls(f"t={t} is outside the domain [{start}, {upper}[")

    @classmethod
    def not_finite(cls, value: Any) -> DomainError:
        return cls(f"Expected a finite value, got {value}")

    @classmethod
    def requires(cls, operation: str, condition: str) -> DomainError:
        return cls(f"{operation} requires {condition}")

    @classmethod
    def empty_interval(cls, start: Any, end: Any) -> DomainError:
        return cls(f"Interval [{start}, {end}[ is empty")

    @classmethod
    def not_pseudo_periodic(cls, operation: str) -> DomainError:
        return cls(f"The result of {operation} is not ultimately pseudo-periodic")

    @classmethod
    def unbounded_closure(cls, reason: str) -> DomainError:
        return cls(f"Closure is unbounded: {reason}")


class UndefinedFormError(DomainError, ArithmeticError):
    """Raised for undefined extended-rational forms such as (+inf) + (-inf)."""

    @classmethod
    def form(cls, left: Any, operator: str, right: Any) -> UndefinedFormError:
        return cls(f"Undefined form: {left} {operator} {right}")


class ClosureConvergenceError(DomainError):
    """Raised when the finite-horizon closure iteration does not stabilise."""

    def __init__(self, iterations: int, horizon: Any):
        super().__init__(f"Closure did not stabilise on [0, {horizon}[ after {iterations} iterations")
        self.iterations = iterations
        self.horizon = horizon


class OperationRegistrationError(CurveError):
    """Raised when an operation cannot be registered or resolved."""

    @classmethod
    def not_subclass(cls, operation_cls: type[Any]) -> OperationRegistrationError:
        return cls(f"{operation_cls!r} is not an Operation subclass")

    @classmethod
    def missing_name(cls, operation_cls: type[Any]) -> OperationRegistrationError:
        return cls(f"Operation class {operation_cls.__name__} is missing the 'name' attribute")

    @classmethod
    def duplicate(cls, name: str) -> OperationRegistrationError:
        return cls(f"Operation '{name}' is already registered")


class OperationRegistrationAggregateError(OperationRegistrationError):
    """Raised when several operation registrations fail at once."""

    def __init__(self, errors: list[OperationRegistrationError]):
        super().__init__("; ".join(str(err) for err in errors))
        self.errors = errors


class OperationLookupError(OperationRegistrationError):
    """Raised when an operation name is not present in the registry."""

    @classmethod
    def missing(cls, name: str) -> OperationLookupError:
        return cls(f"Operation '{name}' is not registered")


class ExpressionError(CurveError):
    """Raised for malformed expression trees."""

    @classmethod
    def arity(cls, operation: str, expected: tuple[int, int | None], actual: int, path: str) -> ExpressionError:
        low, high = expected
        if high is None:
            wanted = f"at least {low}"
        else:
            wanted = str(low) if low == high else f"{low}..{high}"
        return cls(f"{path}: '{operation}' takes {wanted} argument(s), got {actual}")

    @classmethod
    def missing_parameter(cls, operation: str, name: str, path: str) -> ExpressionError:
        return cls(f"{path}: '{operation}' requires parameter '{name}'")

    @classmethod
    def unknown_operation(cls, operation: str, path: str) -> ExpressionError:
        return cls(f"{path}: unknown operation '{operation}'")

    @classmethod
    def wrong_kind(cls, operation: str, index: int, expected: str, path: str) -> ExpressionError:
        return cls(f"{path}: argument {index} of '{operation}' must be a {expected}")


class UnresolvedReferenceError(CurveError):
    """Raised when an expression references an undefined curve."""

    def __init__(self, name: str, path: str):
        super().__init__(f"{path}: unresolved reference '{name}'")
        self.name = name
        self.path = path


class OperationExecutionError(CurveError):
    """Raised when an evaluated operation fails."""

    def __init__(self, operation: str, path: str, original: BaseException):
        super().__init__(f"{path}: operation '{operation}' failed: {original}")
        self.operation = operation
        self.path = path
        self.original = original


class PluginError(CurveError):
    """Raised when a plugin hook fails."""

    def __init__(self, hook: str, original: BaseException):
        super().__init__(f"Plugin hook '{hook}' failed: {original!r}")
        self.hook = hook
        self.original = original


class BenchmarkMismatchError(CurveError):
    """Raised when benchmark configurations produce different curves."""

    def __init__(self, case: str, configurations: tuple[str, str]):
        first, second = configurations
        super().__init__(f"Benchmark '{case}': configuration '{first}' disagrees with '{second}'")
        self.case = case
        self.configurations = configurations
