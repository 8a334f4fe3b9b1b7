"""Exception hierarchy shared by all weylkit modules.

Every error raised by this package is a :class:`WeylkitError`, so callers can
catch the whole family with one clause.  The subclasses separate the failure
categories the command-line front end maps to distinct exit codes.
"""


class WeylkitError(ValueError):
    """Base class for all errors raised by weylkit."""


class ShapeError(WeylkitError):
    """Operands have incompatible or invalid dimensions."""


class ParseError(WeylkitError):
    """A file or stream does not conform to one of the JSON formats."""


class DomainError(WeylkitError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(WeylkitError):
    """A value violates a structural invariant (normalization, Hermiticity, ...)."""
