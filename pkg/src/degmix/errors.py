"""Exception types shared across the package."""


class DegmixError(Exception):
    """Base class for all degmix errors."""


class ParameterError(DegmixError, ValueError):
    """A model or function parameter is outside its admissible range."""


class GraphError(DegmixError, ValueError):
    """An operation was applied to a graph that cannot support it."""


class EdgeListFormatError(DegmixError, ValueError):
    """An edge-list file violates the expected format.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number
