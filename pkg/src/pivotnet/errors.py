"""Exception types shared across the package."""


class PivotnetError(Exception):
    """Base class for every error raised by this package."""


class InputError(PivotnetError, ValueError):
    """Invalid input data: CSV content, vector shapes, or parameter ranges."""


class MissingFileError(PivotnetError, FileNotFoundError):
    """The input file does not exist."""


class RaggedRowError(InputError):
    """A CSV row does not have the expected number of cells."""


class NonNumericCellError(InputError):
    """A CSV cell is empty or could not be parsed as a number."""


class NegativeCellError(InputError):
    """A participation count is negative."""


class DuplicateActorIdError(InputError):
    """Two rows share the same actor identifier."""


class DuplicateEventIdError(InputError):
    """Two header columns share the same event identifier."""


class LengthMismatchError(InputError):
    """Two sequences that must have equal length do not."""


class IndexOutOfRangeError(PivotnetError, IndexError):
    """An actor ordinal lies outside the matrix."""


class EmptySubsetError(InputError):
    """The node subset handed to community discovery is empty."""


class DegenerateMatrixError(PivotnetError):
    """Covariance is undefined: the eigen model needs at least two actors."""


class DegenerateCommunityError(PivotnetError):
    """Every energy is zero, so no probability distribution can be formed."""


class ConvergenceError(PivotnetError):
    """The iterative eigensolver did not converge within its sweep budget."""
