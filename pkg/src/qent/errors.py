"""Exception hierarchy.

Two branches matter to callers: :class:`ValidationError` means the input
violated a precondition (CLI exit status 1), :class:`ComputationError` means
the input was well formed but the requested analysis could not be completed
(CLI exit status 2).
"""


class QentError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(QentError, ValueError):
    """An input value violated a documented precondition."""


class ComputationError(QentError, RuntimeError):
    """A well-formed request whose computation cannot be completed."""


class EmptyInputError(ValidationError):
    """A probability vector or channel grid with no entries."""


class NegativeEntryError(ValidationError):
    """A probability entry below zero."""


class NonFiniteEntryError(ValidationError):
    """A NaN or infinite entry where a probability was expected."""


class NotNormalizedError(ValidationError):
    """Vector entries do not sum to 1 within the simplex tolerance."""


class RaggedMatrixError(ValidationError):
    """Channel rows of unequal length (or not a 2-D grid at all)."""


class RowNotNormalizedError(ValidationError):
    """A channel row that does not sum to 1 within the simplex tolerance."""

    def __init__(self, row: int, total: float):
        self.row = row
        self.total = total
        super().__init__(f"row {row} sums to {total!r}, not 1")


class DimensionMismatchError(ValidationError):
    """Vector/matrix dimensions that do not line up."""


class NotSquareError(ValidationError):
    """A square channel matrix was required."""


class NonPositiveQError(ValidationError):
    """Tsallis parameter q must be positive."""


class QBelowOneError(ValidationError):
    """Norm-family parameter q outside its allowed range (q >= 1, or q > 1)."""


class ZeroOrderError(ValidationError):
    """Series truncation order must be at least 1."""


class FileFormatError(ValidationError):
    """An input JSON file missing the expected structure."""


class NonUniqueStationaryError(ComputationError):
    """The chain has more than one recurrent class, so no unique invariant
    distribution exists (e.g. the identity matrix)."""


class StationarySolveError(ComputationError):
    """The stationary linear solve failed or did not meet the residual bound."""
