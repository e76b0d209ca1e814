"""
Custom exceptions for the ortholat package.
"""

from typing import Optional


class OrthoLatException(Exception):
    """Base exception for all package-specific errors."""
    pass


class GraphError(OrthoLatException):
    """Invalid graph input: endpoint out of range, self-loop, bad vertex."""
    pass


class CapacityError(OrthoLatException):
    """A width, automorphism or subset-scan cap was exceeded."""
    pass


class LatticeError(OrthoLatException):
    """An argument is not an element of the lattice it was passed to."""
    pass


class PreconditionError(OrthoLatException):
    """The preconditions of an operation do not hold for its arguments."""
    pass


class VerificationError(OrthoLatException):
    """A property that must hold for every graph failed on this one."""
    pass


class ParseError(OrthoLatException):
    """Syntax error in graph input."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
