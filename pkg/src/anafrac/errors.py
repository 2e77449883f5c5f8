"""Exception hierarchy shared by all anafrac modules."""


class AnafracError(Exception):
    """Base class for every error raised by this package."""


class PoleError(AnafracError):
    """Gamma function evaluated at a nonpositive integer."""


class DomainError(AnafracError):
    """Argument outside the mathematical domain of an operation."""


class ToleranceError(AnafracError):
    """A series summation hit its term cap before meeting the tolerance."""


class DivergenceError(AnafracError):
    """Series terms failed to decay; the sum does not converge numerically."""


class RadiusError(AnafracError):
    """Kernel evaluated at or beyond its convergence radius."""


class QuadFailure(AnafracError):
    """Adaptive quadrature could not meet the tolerance within its budget."""


class HypothesisViolation(AnafracError):
    """A scenario's ratio/positivity hypothesis failed at a grid point."""


class BoxViolation(AnafracError):
    """A scenario's box bounds (m, M, n, N) failed at a grid point."""


class PhiRangeError(AnafracError):
    """Shift parameter phi outside (0, tau1)."""


class ExprSyntaxError(AnafracError):
    """Expression source failed to parse.

    Carries the byte offset of the failure in ``offset``.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifierError(ExprSyntaxError):
    """Identifier in an expression does not resolve."""


class ArityError(ExprSyntaxError):
    """Function called with the wrong number of arguments."""


class ParseError(AnafracError):
    """Scenario file is not well formed."""


class ConstraintError(AnafracError):
    """Scenario file parsed but violates a field constraint."""


class RangeError(AnafracError):
    """Integer selector outside its allowed range."""
