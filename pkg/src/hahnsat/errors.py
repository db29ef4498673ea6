"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HahnError(Exception):
    """Base class for all errors raised by hahnsat."""


class DimensionMismatch(HahnError, ValueError):
    pass


class ZeroArgument(HahnError, ValueError):
    pass


# -- precision ---------------------------------------------------------------

class PrecisionError(HahnError):
    """Something could not be decided at the available truncation order."""


class InsufficientPrecision(PrecisionError):
    pass


class UndecidableAtPrecision(PrecisionError):
    pass


# -- field arithmetic --------------------------------------------------------

class ZeroDivisor(HahnError, ZeroDivisionError):
    pass


class NegativeValue(HahnError, ValueError):
    pass


class NotPositive(HahnError, ValueError):
    pass


class NonRepresentableCoefficientPower(HahnError, ValueError):
    pass


class ParseError(HahnError, ValueError):
    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


# -- pseudo-convergence ------------------------------------------------------

class NotPseudoCauchy(HahnError):
    def __init__(self, message: str, triple: tuple[int, int, int] | None = None) -> None:
        super().__init__(message)
        self.triple = triple


# -- cut engine --------------------------------------------------------------

class EqualityDetected(HahnError):
    pass


class AmbiguousAtDepth(HahnError):
    def __init__(self, message: str, depth: int) -> None:
        super().__init__(message)
        self.depth = depth


class ClaimViolation(HahnError):
    pass


class SeparationFailure(HahnError):
    pass


class ResidueCollision(HahnError):
    pass


class NonExpressible(HahnError):
    pass


# -- harness -----------------------------------------------------------------

class NotSeparated(HahnError):
    pass


class NoWitness(HahnError):
    pass
