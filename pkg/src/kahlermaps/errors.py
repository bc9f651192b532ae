"""Exception hierarchy.

Every numerical failure derives from :class:`NumericalError` so the CLI can
map it to a single exit code; grammar failures derive from
:class:`PotentialSyntaxError`.
"""


class KahlerMapsError(Exception):
    """Base class for all errors raised by this package."""


class PotentialSyntaxError(KahlerMapsError, ValueError):
    """Malformed potential expression.

    Attributes
    ----------
    position : int
        Byte offset into the UTF-8 encoded source text.
    expected : tuple of str
        Token kinds the parser would have accepted.
    """

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at offset {position}"
        if self.expected:
            detail += f" (expected {', '.join(self.expected)})"
        super().__init__(detail)


class UnknownIdentifier(PotentialSyntaxError):
    pass


class ArityError(PotentialSyntaxError):
    pass


class NumericalError(KahlerMapsError, ArithmeticError):
    """Any failure while evaluating a numerical quantity."""


class DomainError(NumericalError):
    """Argument outside the domain of a function (log of nonpositive, ...)."""


class NonDifferentiable(DomainError):
    """Derivative requested at a kink, e.g. sqrt at 0."""


class SolveError(NumericalError):
    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message if residual is None else f"{message} (last residual {residual:.3e})")


class NegativeRadicand(DomainError):
    """A squared profile came out negative, i.e. some dPhi/dx_k < 0."""


class FSDenominator(DomainError):
    """The moment sum reached 1, so no Fubini-Study profile exists."""


class NotHermitian(NumericalError):
    pass


class StepTooLarge(NumericalError):
    pass


class TooFewPoints(KahlerMapsError, ValueError):
    pass


class RayExitsDomain(NumericalError):
    pass


class NotAnalyticAtOrigin(NumericalError):
    pass


class NonzeroConstantTerm(KahlerMapsError, ValueError):
    pass
