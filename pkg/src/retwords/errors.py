"""Exception hierarchy.

Domain errors (everything deriving from :class:`DomainError`) are the
failures the CLI reports with exit status 1; :class:`ConfigError` maps to
status 2.
"""


class RetwordsError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class ConfigError(RetwordsError, ValueError):
    code = "config"


class DomainError(RetwordsError):
    code = "domain"


class RadicandMismatch(DomainError, ValueError):
    """Scalars from two different quadratic fields were combined."""

    code = "radicand-mismatch"


class RegularityViolation(DomainError):
    """An endpoint connection was met where a regular IET forbids one."""

    code = "regularity-violation"


class HorizonExceeded(DomainError):
    """An orbit search ran past its step cap."""

    code = "horizon-exceeded"


class NoOccurrence(DomainError):
    code = "no-occurrence"


class NotReducible(DomainError):
    """A rotation coding has no interval whose length is the angle."""

    code = "not-reducible"
