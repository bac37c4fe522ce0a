"""Exception hierarchy shared across the library.

The CLI maps these onto process exit codes; library code raises them
directly and never calls sys.exit.
"""


class DegreeLabError(Exception):
    """Base class for all library errors."""


class ParseError(DegreeLabError):
    """Malformed polynomial or map-file input.

    Carries the character position (0-based) when known.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DimensionError(DegreeLabError):
    """Shape mismatch: ambient variable counts, matrix sizes, ranks."""


class ResourceLimitError(DegreeLabError):
    """A degree or term-count cap was exceeded.

    `iterate` names the iteration step that was being computed when the
    cap was hit; `partial` optionally carries whatever result was
    completed before the abort.
    """

    def __init__(self, message, iterate=None, partial=None):
        super().__init__(message)
        self.iterate = iterate
        self.partial = partial


class HypothesisError(DegreeLabError):
    """A mathematical hypothesis required by the operation fails.

    E.g. requesting a spectral-gap fit when the gap condition does not
    hold, or a resonant pair of dynamical degrees.
    """


class PrecisionError(DegreeLabError):
    """Declared precision on an input is insufficient for the request."""


class ConvergenceError(DegreeLabError):
    """An iterative scheme failed to converge within its budget.

    `last` carries the final iterate for diagnostics.
    """

    def __init__(self, message, last=None):
        super().__init__(message)
        self.last = last


class InvariantError(DegreeLabError):
    """An internal invariant was violated; indicates a bug, not bad input."""
