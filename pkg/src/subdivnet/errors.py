"""Exception hierarchy.

Every error raised by the library derives from :class:`NetworkError`, which
is itself a :class:`ValueError`, so callers can catch broadly or narrowly.
"""


class NetworkError(ValueError):
    """Base class for all input and validation errors."""


class InvalidVertexError(NetworkError):
    pass


class DuplicateVertexError(NetworkError):
    pass


class LoopEdgeError(NetworkError):
    pass


class DuplicateEdgeError(NetworkError):
    pass


class NonPositiveConductanceError(NetworkError):
    pass


class DisconnectedError(NetworkError):
    pass


class UnknownVertexError(NetworkError, KeyError):
    # KeyError.__str__ quotes the message; keep the ValueError form
    __str__ = ValueError.__str__


class UnknownEdgeError(NetworkError, KeyError):
    __str__ = ValueError.__str__


class BadSizeError(NetworkError):
    pass


class DomainMismatchError(NetworkError):
    pass


class DimensionMismatchError(NetworkError):
    pass


class NotOrthogonalToOnesError(NetworkError):
    """Right-hand side of a Poisson problem has nonzero total mass."""


class SolveFailureError(NetworkError):
    """Factorization broke down; usually a numerically disconnected network."""


class SplitOutOfRangeError(NetworkError):
    pass


class NotRegularError(NetworkError):
    pass


class NotUnitConductanceError(NetworkError):
    pass


class NegativeIndexError(NetworkError):
    pass


class IndexBelowMinusOneError(NetworkError):
    pass


class IndexOutOfRangeError(NetworkError):
    pass


class ParseError(NetworkError):
    pass
