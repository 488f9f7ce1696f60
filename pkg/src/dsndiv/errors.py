"""Exception hierarchy shared by the library and the command line."""


class DSNError(Exception):
    """Base class for every error raised by :mod:`dsndiv`."""


class ValidationError(DSNError, ValueError):
    """An input violates a documented invariant (shape, range, sum)."""


class DimensionMismatch(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class IndexOutOfRange(ValidationError, IndexError):
    pass


class ParseError(ValidationError):
    """A population or study file could not be parsed."""


class ComputationError(DSNError, ArithmeticError):
    """A numerically valid input produced an undefined result."""


class DegenerateInner(ComputationError):
    """An inner similarity-weighted abundance is zero where a reciprocal is needed."""


class DegenerateVariance(ComputationError):
    """A correlation was requested on a constant vector."""


class SampleTooSmall(ComputationError):
    pass


class NoImprovement(ComputationError):
    """No optimizer start produced a finite objective."""


class IoFailure(DSNError, OSError):
    pass


class InputUnreadable(IoFailure):
    """An input file is missing or unreadable."""
