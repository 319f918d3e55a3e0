"""Exceptions raised across the package."""


class TCopulaError(Exception):
    """Base exception for tcopula errors."""
    pass


class DomainError(TCopulaError, ValueError):
    """A parameter lies outside the domain an operation is defined on."""
    pass


class MomentUndefinedError(DomainError):
    """The requested moment diverges for the given degrees of freedom."""
    pass


class UsageError(TCopulaError):
    """Invalid command-line input."""
    pass


class OutputError(TCopulaError):
    """Writing a result file failed."""
    pass
