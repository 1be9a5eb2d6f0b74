"""Exception taxonomy shared by every calckit module."""


class CalcError(Exception):
    """Base class for all calckit errors."""


class ParseError(CalcError):
    """Malformed expression text. Carries the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class EvalError(CalcError):
    """Expression evaluation failed structurally (unbound name, unknown function)."""


class DimensionError(CalcError):
    """Operand shapes are inconsistent with the operation."""


class SingularityError(CalcError):
    """A matrix is singular to working precision."""


class DomainError(CalcError):
    """Inputs are outside the mathematical domain of the operation."""


class ConvergenceError(CalcError):
    """An iterative method exhausted its budget without settling."""
