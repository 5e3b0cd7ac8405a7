"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class OFLError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class SeriesSyntaxError(OFLError, ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


class DuplicateExponent(OFLError, ValueError):
    pass


class ZeroDivisor(OFLError, ZeroDivisionError):
    pass


class ZeroSeries(OFLError, ValueError):
    pass


class NegativeLeading(OFLError, ValueError):
    pass


class NonSquareLeadingCoefficient(OFLError, ValueError):
    """Leading coefficient has no square root in the rationals."""


class NotSquarefree(OFLError, ValueError):
    pass


class HorizonExhausted(OFLError):
    """A function-induced cut could not decide membership at its horizon."""


class BudgetExhausted(OFLError):
    pass


class NoBracket(OFLError):
    pass


class InvalidInterval(OFLError, ValueError):
    pass


class DegenerateInterval(OFLError, ValueError):
    pass


class OutOfDomain(OFLError, ValueError):
    pass


class DepthLimit(OFLError):
    pass


class FunctionalFailure(OFLError):
    pass


class NotStabilized(OFLError):
    def __init__(self, exponent, values=()):
        self.exponent = exponent
        self.values = list(values)
        super().__init__(f"coefficient at exponent {exponent} not stabilized")
