"""Exception hierarchy shared by the library and the CLI."""


class EntropyError(Exception):
    """Base class for all library errors."""


class ParseError(EntropyError, ValueError):
    """Malformed polynomial or matrix text.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class ZeroPolynomialError(EntropyError, ValueError):
    pass


class DimensionError(EntropyError, ValueError):
    pass


class GuardError(EntropyError):
    """A size guard (window volume, enumeration count, 64-bit bound) was exceeded."""


class InconsistencyError(EntropyError):
    """Two independent routes to the same quantity disagreed."""
