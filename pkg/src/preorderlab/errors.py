"""Exception hierarchy shared by every module."""


class PreorderLabError(Exception):
    pass


class InvalidTopology(PreorderLabError, ValueError):
    pass


class SizeMismatch(PreorderLabError, ValueError):
    pass


class PointOutOfRange(PreorderLabError, IndexError):
    pass


class InstanceTooLarge(PreorderLabError):
    pass


class NotASubrelation(PreorderLabError, ValueError):
    pass


class BadArguments(PreorderLabError, ValueError):
    pass


class NotNormal(PreorderLabError):
    pass


class NotConvex(PreorderLabError):
    pass


class NotCompletelyRegular(PreorderLabError):
    pass


class NotDiscrete(PreorderLabError):
    pass


class NotAQPM(PreorderLabError, ValueError):
    pass


class WindowOutOfRange(PreorderLabError, ValueError):
    pass


class UnknownPredicate(PreorderLabError, KeyError):
    pass


class BadParameters(PreorderLabError, ValueError):
    pass


class ParseError(PreorderLabError, ValueError):
    pass


class InvariantBreach(PreorderLabError, AssertionError):
    """An internal cross-check disagreed; indicates a bug, not bad input."""
