"""Exception hierarchy shared by every covarray module."""


class CovarrayError(ValueError):
    """Base class for all errors raised by covarray."""


# finite fields
class NonPrimeError(CovarrayError):
    pass


class DegreeOutOfRangeError(CovarrayError):
    pass


class OrderTooLargeError(CovarrayError):
    pass


class MixedFieldsError(CovarrayError):
    pass


class ZeroInverseError(CovarrayError, ZeroDivisionError):
    pass


class LengthMismatchError(CovarrayError):
    pass


# arrays and coverage
class StrengthTooLargeError(CovarrayError):
    pass


class BudgetExceededError(CovarrayError):
    """Exact enumeration would exceed the work budget; use sampling instead."""


class AlphabetGrowError(CovarrayError):
    pass


class ParseError(CovarrayError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


# constructions
class TooManyVectorsError(CovarrayError):
    pass


# builder and bounds
class NotPrimePowerError(CovarrayError):
    pass


class KLessThanTError(CovarrayError):
    pass


class BadEpsilonError(CovarrayError):
    pass


class GaveUpError(CovarrayError, RuntimeError):
    """The randomized builder ran out of attempts or resamples."""

    def __init__(self, message: str, attempts: int = 0, resamples: int = 0):
        super().__init__(message)
        self.attempts = attempts
        self.resamples = resamples


# lagrangian lab
class InstanceTooLargeError(CovarrayError):
    pass


class IllegalWeightingError(CovarrayError):
    pass


class EmptySupportError(CovarrayError):
    pass


class IsolatedVertexError(CovarrayError):
    pass
