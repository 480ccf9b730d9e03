"""
Linkform - Error Types

Exception hierarchy shared by the tools, the graph nodes and the CLI.
Every error carries the process exit code the CLI reports for it.
"""

from typing import Any


class LinkformError(Exception):
    """Base class for all linkform errors."""

    exit_code: int = 1


class InvalidArgument(LinkformError, ValueError):
    """An operation was called outside its precondition."""

    exit_code = 2


class ResourceExceeded(LinkformError):
    """A guard (factorization size or iteration budget) was hit.

    Raised instead of returning an answer that could not be certified.
    """

    exit_code = 3


class InfiniteTorsion(LinkformError):
    """The cohomology order n is 0, so H^4 is infinite cyclic and no linking form exists."""

    exit_code = 2


class ParameterViolation(InvalidArgument):
    """One or more of the family conditions failed.

    Attributes:
        violations: CongruenceViolation / FreenessViolation records, in the
            order they were detected.
    """

    def __init__(self, violations: list[Any]):
        self.violations = violations
        details = "; ".join(v.describe() for v in violations)
        super().__init__(f"invalid parameters: {details}")


class ConfigurationError(LinkformError):
    """An environment setting could not be parsed."""

    exit_code = 2


class CertificateError(LinkformError):
    """A computed certificate did not re-verify. Indicates a bug, never bad input."""

    exit_code = 1
