"""Exception hierarchy.

Every failure a caller can act on has its own class. ``NumericalFailure``
subclasses are the ones the CLI maps to exit code 1.
"""


class RotorError(Exception):
    pass


class NumericalFailure(RotorError):
    pass


class InvalidInput(RotorError):
    pass


class CenterOnPath(NumericalFailure):
    pass


class SegmentTooWide(NumericalFailure):
    pass


class RefinementBudgetExceeded(NumericalFailure):
    pass


class DiagonalInput(InvalidInput):
    pass


class NotFixed(NumericalFailure):
    pass


class NotInteger(NumericalFailure):
    pass


class NoRecurrence(NumericalFailure):
    pass


class NotFree(NumericalFailure):
    pass


class NoReturn(NumericalFailure):
    pass


class EmptyInput(InvalidInput):
    pass


class NotConstant(NumericalFailure):
    pass


class NotCommuting(NumericalFailure):
    pass


class NonFiniteSample(NumericalFailure):
    pass


class InvalidParams(InvalidInput):
    pass
