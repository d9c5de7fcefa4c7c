"""Exception hierarchy.  Each class carries a stable machine-readable code."""


class HyperconeError(Exception):
    code = "error"
    exit_status = 4


class InvalidInput(HyperconeError, ValueError):
    code = "invalid_input"
    exit_status = 2


class InvalidCurve(InvalidInput):
    code = "invalid_curve"


class InvalidPoint(InvalidInput):
    code = "invalid_point"


class InvalidDivisor(InvalidInput):
    code = "invalid_divisor"


class BadPrime(InvalidInput):
    code = "bad_prime"


class Unsupported(HyperconeError, NotImplementedError):
    code = "unsupported"
    exit_status = 3


class ConsistencyError(HyperconeError, AssertionError):
    """An internal cross-check failed (two routes disagree)."""
    code = "consistency"
    exit_status = 4
