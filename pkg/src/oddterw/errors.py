"""Exception types shared across the package."""


class OddTerwError(Exception):
    """Base class for all library errors."""


class ParameterError(OddTerwError, ValueError):
    """An argument is outside the domain a function accepts."""


class ShapeError(OddTerwError, ValueError):
    """Matrix dimensions do not conform for the requested operation."""


class ClosureDivergenceError(OddTerwError, RuntimeError):
    """Span closure failed to stabilize within the round cap.

    The algebra is finite dimensional, so hitting this indicates a bug in
    the arithmetic kernel rather than a genuinely divergent computation.
    """


class FormulaError(OddTerwError, ArithmeticError):
    """A counting identity that must hold numerically failed to hold."""
