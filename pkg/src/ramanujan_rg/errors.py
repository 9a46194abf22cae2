"""Exception types raised across the package."""


class RamanujanError(Exception):
    """Base class for all package errors."""


class EmptyEdgeSet(RamanujanError):
    pass


class MalformedGraph6(RamanujanError, ValueError):
    pass


class ConvergenceFailure(RamanujanError):
    pass


class InvalidShape(RamanujanError, ValueError):
    pass


class InexactDivision(RamanujanError, ArithmeticError):
    pass


class NotRegularSpectrum(RamanujanError, ValueError):
    pass


class NotCharpolyOfRegular(RamanujanError, ValueError):
    pass


class HypothesisViolation(RamanujanError, ValueError):
    """The input graph does not satisfy connected, regular, order >= 5."""

    def __init__(self, message: str, reason: str = "hypothesis"):
        super().__init__(message)
        self.reason = reason


class SizeCapExceeded(RamanujanError):
    pass


class InvalidParameters(RamanujanError, ValueError):
    pass


class NegativeMultiplicity(RamanujanError):
    pass


class GenerationFailure(RamanujanError):
    pass
