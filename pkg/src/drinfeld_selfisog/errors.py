"""Exception hierarchy.

Every mathematical failure raised by the library derives from
:class:`AlgebraError`; the CLI prints the class name and exits with status 1.
"""
from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all mathematical errors of the library."""


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class ContextMismatch(AlgebraError):
    pass


class InvalidInput(AlgebraError, ValueError):
    pass


class UndefinedGcd(AlgebraError):
    pass


class NotDivisible(AlgebraError):
    pass


class InseparableInput(AlgebraError):
    pass


class NonInvertibleDenominator(AlgebraError):
    pass


class NotAnIsogeny(AlgebraError):
    pass


class DegenerateDenominator(AlgebraError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"solving denominator vanishes at index {index}")


class DegenerateJDenominator(AlgebraError):
    def __init__(self, witness, message: str = ""):
        self.witness = witness
        super().__init__(message or f"J denominator shares the factor {witness} with g")


class IntegralityViolation(AlgebraError):
    pass


class NotAnIdeal(AlgebraError):
    pass


class NotPrime(AlgebraError):
    pass


class TooLarge(AlgebraError):
    pass


class HypothesisViolation(AlgebraError):
    pass


class HypothesisWarning(UserWarning):
    """Emitted instead of :class:`HypothesisViolation` when the caller opts in."""
