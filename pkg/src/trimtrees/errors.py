"""Exception hierarchy shared by every module."""


class TrimTreeError(Exception):
    """Base class for all library errors."""


class SymbolError(TrimTreeError, ValueError):
    """A symbol lies outside its coordinate's alphabet."""


class PreconditionError(TrimTreeError, ValueError):
    """An operation was called outside its documented domain."""


class NotExactError(TrimTreeError):
    """The inputs leave the ultimately periodic class and no horizon was given."""


class NotSerializableError(TrimTreeError, TypeError):
    """The object is a programmatic handle with no textual form."""


class PromiseViolation(TrimTreeError):
    """A tree sequence broke its ``T[n+1] ⊆_n T[n]`` promise.

    ``index`` is the index of the offending (later) tree.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"promise violated at index {index}")


class GuardExceeded(TrimTreeError):
    """The brute-force oracle refused to materialize an oversized object."""
