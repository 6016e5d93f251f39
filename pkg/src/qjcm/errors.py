"""Exception types raised across the package."""

__all__ = [
    "QJCMError", "DomainError", "NonConvergence", "DegenerateFrequency", "PreconditionError",
    "NoStationaryPoint", "BasisTooSmall", "ToleranceNotMet", "SpecMismatch", "ParseError",
    "ValidationError",
]


class QJCMError(Exception):
    """Base class for all package errors."""


class DomainError(QJCMError, ValueError):
    """Argument lies outside the convergence domain of a deformed series."""


class NonConvergence(QJCMError, RuntimeError):
    """A series needed more terms than the hard cap allows."""


class DegenerateFrequency(QJCMError, ArithmeticError):
    """Rabi frequency is flat in n, so no revival timescale exists."""


class PreconditionError(QJCMError, ValueError):
    """Operation called outside its documented preconditions."""


class NoStationaryPoint(QJCMError, ArithmeticError):
    """Stationarity condition has no admissible real solution."""


class BasisTooSmall(QJCMError, ValueError):
    """Truncated Fock basis cannot hold the initial state faithfully."""


class ToleranceNotMet(QJCMError, RuntimeError):
    """Adaptive integrator failed to reach the requested accuracy."""


class SpecMismatch(QJCMError, ValueError):
    """Field distribution and Hamiltonian use different deformations."""


class ParseError(QJCMError, ValueError):
    """Malformed scenario document."""

    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


class ValidationError(QJCMError, ValueError):
    """Scenario parsed but violates a model precondition."""
