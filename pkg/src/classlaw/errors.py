"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to.
"""


class ClassLawError(Exception):
    exit_code = 2


class DomainError(ClassLawError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ValidationError(DomainError):
    """A discriminant (or similar input) failed a structural check."""


class PrecisionError(ClassLawError, ArithmeticError):
    """Coefficients did not round cleanly even after raising precision."""

    exit_code = 4


class ResourceError(ClassLawError):
    """A configured size or precision limit would be exceeded."""

    exit_code = 4


class IntegrityError(ClassLawError):
    """A cached record is corrupt or inconsistent."""
