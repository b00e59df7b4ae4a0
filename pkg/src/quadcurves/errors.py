"""Exception types shared across the package."""


class QuadCurvesError(Exception):
    """Base class for all package errors."""


class DomainError(QuadCurvesError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterError(QuadCurvesError, ValueError):
    """Family or operator parameters violate their invariants."""


class ResourceError(QuadCurvesError, RuntimeError):
    """A size or iteration cap was exceeded."""


class ModeError(QuadCurvesError, ValueError):
    """The requested computation mode cannot handle this input."""


class ParseError(QuadCurvesError, ValueError):
    """Malformed serialized input.  ``location`` names the offending field."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
