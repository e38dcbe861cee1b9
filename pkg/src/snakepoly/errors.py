"""Exception hierarchy shared by all modules."""


class SnakePolyError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SnakePolyError, ValueError):
    """An object does not live on the surface (or in the space) it is used with."""


class ParseError(SnakePolyError, ValueError):
    """Malformed JSON input or an inconsistent raw snake graph."""


class IntegrityError(SnakePolyError):
    """An internal consistency check failed."""


class UsageError(SnakePolyError):
    """Bad command line arguments."""
