"""Exception types raised by tttorder."""


class TTTOrderError(Exception):
    """Base class for all tttorder errors."""


class EmptyInputError(TTTOrderError, ValueError):
    """Raised when a sample is constructed from no observations."""


class NegativeValueError(TTTOrderError, ValueError):
    """Raised when data violates the nonnegativity requirement."""


class NonFiniteValueError(TTTOrderError, ValueError):
    """Raised when data contains NaN or infinite entries."""


class ZeroMeanError(TTTOrderError, ValueError):
    """Raised when a scaled transform is requested for an all-zero sample."""


class KindMismatchError(TTTOrderError, ValueError):
    """Raised when combining curves of different kinds (step vs. linear)."""


class LengthMismatchError(TTTOrderError, ValueError):
    """Raised when a resampling weight vector does not match the sample size."""


class SchemeMismatchError(TTTOrderError, ValueError):
    """Raised when the input data does not fit the requested sampling scheme."""


class NonConvergenceError(TTTOrderError, RuntimeError):
    """Raised when an iterative special-function evaluation fails to converge."""
