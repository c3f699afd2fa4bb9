"""Exception hierarchy shared across the package."""


class LpMeasureError(Exception):
    pass


class DivergenceError(LpMeasureError):
    """A quadrature or series that should be finite is not."""


class DomainError(LpMeasureError):
    """A grid function does not cover the support it is applied to."""


class PreconditionError(LpMeasureError, ValueError):
    pass


class NumericalIntegrityError(LpMeasureError):
    """Two independent computation paths disagree beyond tolerance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class SpecParseError(LpMeasureError, ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
