"""Exception hierarchy shared by the library and the CLI."""


class CirclefixError(Exception):
    """Base class for all errors raised by this package."""


class OrderMismatchError(CirclefixError, ValueError):
    """Two truncated series with different truncation orders were combined."""


class InvalidDataError(CirclefixError, ValueError):
    """Input violates a structural requirement (bad parameters, malformed data)."""


class UnsupportedShapeError(CirclefixError, ValueError):
    """Operation only supports a particular number of fixed points."""


class NotDescribableError(CirclefixError):
    """No describing multigraph of the supported shape exists for the data."""


class ConstraintViolation(CirclefixError):
    """Fixed point data violates a necessary condition for realizability."""

    def __init__(self, constraint: str, message: str):
        super().__init__(f"{constraint}: {message}")
        self.constraint = constraint


class DegreeError(CirclefixError, ValueError):
    """Requested Pontryagin degree exceeds the number of weights."""


class StageOrderError(CirclefixError):
    """A pipeline stage was invoked before its preconditions were established."""


class ClassificationFailure(CirclefixError):
    """A search result disagreed with the known classification (implementation bug)."""


class TheoremContradiction(CirclefixError):
    """The dim-12 pipeline produced an admissible candidate (implementation bug)."""

    def __init__(self, message: str, certificate=None):
        super().__init__(message)
        self.certificate = certificate
