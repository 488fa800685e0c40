"""Exception hierarchy for bernlike."""


class BernlikeError(Exception):
    """Base class for all library errors."""


class NonFiniteValue(BernlikeError, ValueError):
    """A starting function produced NaN or infinity."""


class InvalidFamily(BernlikeError, ValueError):
    """A family failed numerical validation and cannot be evaluated."""


class IndexOutOfRange(BernlikeError, IndexError):
    pass


class InvalidOrder(BernlikeError, ValueError):
    pass


class InvalidDegree(BernlikeError, ValueError):
    pass


class UnsupportedPhi(BernlikeError, TypeError):
    """The polynomial backend was asked for a non-polynomial phi."""


class UnsupportedOrder(BernlikeError, ValueError):
    pass


class NotIncreasing(BernlikeError, ValueError):
    pass


class NotConvex(BernlikeError, ValueError):
    pass
