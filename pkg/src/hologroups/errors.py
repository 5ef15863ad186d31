"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class HoloError(Exception):
    exit_code = 1


class VerificationError(HoloError):
    """A computed object failed a consistency check it must satisfy."""

    exit_code = 1


class SpecParseError(HoloError, ValueError):
    exit_code = 2


class BudgetExceeded(HoloError):
    """A search or construction would exceed its configured bound."""

    exit_code = 3


class OutOfScope(HoloError):
    exit_code = 4


class NotPerfectError(OutOfScope):
    pass
