"""Exception types raised by the library.

Every error that the CLI maps to exit status 2 derives from ``ParameterError``.
"""


class OrbitCodeError(Exception):
    pass


class ParameterError(OrbitCodeError, ValueError):
    """Inputs violate a documented precondition."""


class NotPrime(ParameterError):
    pass


class SizeCapExceeded(ParameterError):
    pass


class NotADivisor(ParameterError):
    pass


class ZeroScalar(ParameterError):
    pass


class FieldMismatch(ParameterError):
    pass


class ZeroDimensional(ParameterError):
    pass


class DimensionMismatch(ParameterError):
    pass


class BadParams(ParameterError):
    pass


class BadK(BadParams):
    pass


class BadL(BadParams):
    pass


class BadM(BadParams):
    pass


class OddN(BadParams):
    pass


class BadShape(BadParams):
    pass


class BadDegree(BadParams):
    pass


class NotCoprime(BadParams):
    pass


class DirectSumFailure(ParameterError):
    pass


class YNotFull(ParameterError):
    pass


class UnsupportedFamily(ParameterError):
    pass


class TooLarge(ParameterError):
    pass


class InexactDivision(OrbitCodeError, ArithmeticError):
    """A closed-form count did not divide exactly (internal inconsistency)."""


class InvariantViolation(OrbitCodeError, AssertionError):
    """A computed object broke a structural invariant that must always hold."""
