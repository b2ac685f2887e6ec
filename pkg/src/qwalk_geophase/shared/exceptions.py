"""Custom exception classes for the numerical services.

Every exception carries the process exit code the CLI reports for it:
2 for invalid input, 3 for numerical failure.
"""

from typing import Any, Dict, Optional


class BaseException(Exception):
    """Base exception class for the application."""

    exit_code: int = 1
    default_message: str = "An error occurred"

    def __init__(
        self,
        message: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Initialize base exception.

        Args:
            message: Error message (the class default when omitted)
            details: Diagnostic values such as residuals or offending inputs
        """
        self.message = message or self.default_message
        self.details = details or {}
        super().__init__(self.message)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.message!r}, exit_code={self.exit_code})"


class ValidationException(BaseException):
    """Inputs violate an operation's preconditions."""

    exit_code = 2
    default_message = "Validation error"


class ServiceException(BaseException):
    """A numerical routine failed."""

    exit_code = 3
    default_message = "Service error"


class ConvergenceException(ServiceException):
    """An eigensolver, quadrature or ODE integration did not converge."""

    default_message = "Numerical routine did not converge"


class TrackingException(ServiceException):
    """Root tracking jumped beyond tolerance between samples."""

    default_message = "Root tracking discontinuity"


class ValidityException(ServiceException):
    """A perturbative formula was used outside its range."""

    default_message = "Approximation outside its validity range"
