"""Exception types raised across the package.

Each class names one contract violation; all inherit from InfoShotError so
callers can catch package errors wholesale, and from the closest builtin so
generic handlers keep working.
"""


class InfoShotError(Exception):
    """Base class for every error raised by this package."""


class MalformedHeaderError(InfoShotError, ValueError):
    """File is neither a valid ISF container nor parseable CSV."""


class DimensionMismatchError(InfoShotError, ValueError):
    """Declared shape disagrees with the actual payload."""


class NonFiniteValueError(InfoShotError, ValueError):
    """A feature component is NaN or infinite."""


class IoFailureError(InfoShotError, OSError):
    """Reading or writing a feature file failed at the OS level."""


class InvalidBudgetError(InfoShotError, ValueError):
    """Requested sampling budget is not satisfiable (rate or count <= 0, K > T, ...)."""


class IndexOutOfRangeError(InfoShotError, IndexError):
    """Frame index or index range falls outside [0, T)."""


class BlockTooLargeError(InfoShotError, ValueError):
    """Requested affinity block exceeds the view's block size."""


class SegmentTooLongError(InfoShotError, ValueError):
    """Segment exceeds the maximum shot length for dense affinity."""


class WindowOutOfSegmentError(InfoShotError, ValueError):
    """Boundary-score windows cannot fit inside the segment."""


class LengthMismatchError(InfoShotError, ValueError):
    """Score track length disagrees with the frame count."""


class MissingFpsError(InfoShotError, ValueError):
    """Event intervals are in seconds but no fps was supplied."""


class EmptySampleSetError(InfoShotError, ValueError):
    """Distortion is undefined for an empty sample set."""


class EmptySuiteError(InfoShotError, ValueError):
    """Suite-level evaluation needs at least one video."""


class InvalidSpecError(InfoShotError, ValueError):
    """Synthetic-sequence spec violates its invariants."""


class TooLargeError(InfoShotError, ValueError):
    """Input exceeds the combinatorial bound of an exhaustive oracle."""
