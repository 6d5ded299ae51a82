"""Exception types shared across the package."""
from __future__ import annotations


class DarbouxDiracError(Exception):
    """Base class for all package errors."""


class DomainError(DarbouxDiracError, ValueError):
    """An argument lies outside the domain of the operation."""


class ConvergenceError(DarbouxDiracError, ArithmeticError):
    """A series or adaptive quadrature failed to converge."""


class PoleError(DarbouxDiracError, ArithmeticError):
    """A quotient hit a (near) zero denominator.

    ``where`` holds the offending abscissa, or a bracketing interval when the
    pole was detected as a sign change.
    """

    def __init__(self, message: str, where=None):
        super().__init__(message)
        self.where = where
