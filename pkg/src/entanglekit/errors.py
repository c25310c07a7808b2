"""Exception types shared across the package."""


class EntangleKitError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(EntangleKitError, ValueError):
    """An object failed its construction invariants (hermiticity, trace, norm, ...)."""


class DimensionError(ValidationError):
    """Operation applied to a state with incompatible subsystem dimensions."""


class ParameterError(ValidationError):
    """A numeric parameter is outside its documented range."""


class SizeError(ValidationError):
    """Requested object exceeds the configured maximum total dimension."""


class CapacityError(EntangleKitError):
    """Input exceeds a hard search cap (e.g. ensemble ordering search)."""


class PreconditionError(EntangleKitError):
    """Input is structurally valid but violates an operation's precondition."""


class ParseError(EntangleKitError, ValueError):
    """A text file (QMX matrix or ensemble) is malformed.

    Carries the 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
