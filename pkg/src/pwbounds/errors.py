"""Exception types shared across the package.

Each class maps onto one CLI exit code, so scripts can tell a bad
hypothesis apart from a bad input file or a quadrature failure.
"""

from __future__ import annotations


class PWBoundsError(Exception):
    exit_code = 1


class DomainError(PWBoundsError, ValueError):
    """Arguments outside the range where an operation is defined."""

    exit_code = 2


class RangeError(DomainError):
    """Parameters outside every range where a closed form is proven."""

    exit_code = 2


class ParseError(PWBoundsError):
    exit_code = 3


class InfeasibleError(PWBoundsError):
    exit_code = 4

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ConvergenceError(PWBoundsError, ArithmeticError):
    """Adaptive quadrature ran out of subdivisions.

    ``estimate`` and ``error`` hold the best result reached so far.
    """

    exit_code = 5

    def __init__(self, message: str, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
