"""Exception hierarchy shared by every module."""


class AdhmError(Exception):
    """Base class for all library errors."""


class DivisionByZero(AdhmError, ZeroDivisionError):
    pass


class FieldMismatch(AdhmError):
    pass


class DimensionMismatch(AdhmError):
    pass


class UnsupportedField(AdhmError):
    pass


class BoundExceeded(AdhmError):
    """An exhaustive search would exceed its configured size bound."""


class NoFraming(AdhmError):
    pass


class InvalidPair(AdhmError):
    pass


class PreconditionViolated(AdhmError):
    pass


class NeedsS2Certificate(AdhmError):
    pass


class ZeroRepresentation(AdhmError):
    pass


class NotSemistable(AdhmError):
    pass


class InvalidChernData(AdhmError):
    pass


class NotS0Stable(AdhmError):
    pass


class InvalidPoint(AdhmError):
    pass


class NotStable(AdhmError):
    pass


class NotS2(AdhmError):
    pass


class MalformedInput(AdhmError):
    pass
