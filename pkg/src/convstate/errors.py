"""Exception hierarchy shared by all modules."""


class ConvStateError(Exception):
    """Base class for library errors."""


class MixedFields(ConvStateError, ValueError):
    pass


class DivisionByZero(ConvStateError, ZeroDivisionError):
    pass


class BothZero(ConvStateError, ValueError):
    pass


class DimensionMismatch(ConvStateError, ValueError):
    pass


class PreconditionError(ConvStateError):
    """A mathematical precondition on the input does not hold."""


class NonCausalDenominator(PreconditionError):
    pass


class RankDeficient(PreconditionError):
    pass


class NotReduced(PreconditionError):
    pass


class NotBasic(PreconditionError):
    pass


class NotCanonical(PreconditionError):
    pass


class TooLargeToEnumerate(PreconditionError):
    pass


class FormatError(ConvStateError, ValueError):
    """Malformed matrix file or symbol stream."""
