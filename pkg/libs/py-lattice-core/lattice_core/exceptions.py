"""Custom exceptions for the lattice core library."""

from typing import Any


class LatticeToolkitError(Exception):
    """Base exception for all toolkit errors."""

    def __init__(self, message: str, context: dict[str, Any] | None = None):
        self.message = message
        self.context = context or {}
        super().__init__(message)

    def to_dict(self) -> dict:
        """Convert exception to the machine report error format."""
        return {
            "error": {
                "code": self.__class__.__name__.replace("Error", "").lower(),
                "message": self.message,
                "context": self.context,
            }
        }


class DimensionMismatchError(LatticeToolkitError):
    """Operands have incompatible shapes."""


class NotSquareError(LatticeToolkitError):
    """A square matrix was required."""


class NotDisjointError(LatticeToolkitError):
    """Vectors were required to have pairwise disjoint supports."""


class NotPositiveError(LatticeToolkitError):
    """A vector or functional was required to be positive."""


class ZeroVectorError(LatticeToolkitError):
    """A nonzero vector was required."""


class NotInAlgebraError(LatticeToolkitError):
    """Element does not lie in the span of the algebra basis."""


class NotUnitizedError(LatticeToolkitError):
    """Operation needs the unitized algebra."""


class ClosureOverflowError(LatticeToolkitError):
    """Algebra closure produced more than n^2 independent matrices."""

    def __init__(self, message: str, context: dict[str, Any] | None = None, dimension: int = 0):
        super().__init__(message, context)
        self.dimension = dimension


class InsufficientWeightsError(LatticeToolkitError):
    """Weight sequence is shorter than the requested truncation."""


class TooLargeError(LatticeToolkitError):
    """Exhaustive enumeration requested beyond its size limit."""


class InvalidConfigError(LatticeToolkitError):
    """Sampler or campaign configuration is invalid."""


class CorpusError(LatticeToolkitError):
    """Corpus read or write failures."""


class InconsistentResultError(LatticeToolkitError):
    """Two independent computations of the same fact disagree."""
