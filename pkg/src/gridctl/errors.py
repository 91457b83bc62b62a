class GridError(Exception):
    """Base class for all errors raised by gridctl."""


class UsageError(GridError, ValueError):
    """Malformed input: bad dimensions, out-of-range nodes, wrong arity."""


class InvalidDimensionError(UsageError):
    pass


class NodeRangeError(UsageError):
    pass


class ArityError(UsageError):
    pass


class NotSimpleGridError(UsageError):
    """The simple-grid criteria were asked about a grid with repeated eigenvalues."""


class CapacityError(GridError):
    """Node count exceeds the configured dense-matrix cap."""


class PrecisionError(GridError):
    """Numeric grouping or a zero test could not be decided at the working precision."""


class OracleError(GridError):
    """The numerical oracle failed its own residual or orthogonality checks."""


class AnalysisError(GridError):
    """Two internal routes that must agree did not."""
