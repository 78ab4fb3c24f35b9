"""Exception hierarchy shared across the package."""


class SidesumError(Exception):
    """Base class for all package-specific errors."""


class ParseError(SidesumError):
    """Malformed input text (non-canonical rational, bad tiling JSON, ...)."""


class DomainError(SidesumError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedFieldError(SidesumError):
    """Arithmetic or comparison across incompatible quadratic fields."""


class UnboundVariableError(SidesumError):
    """An affine expression was evaluated without a value for some variable."""


class StructureError(SidesumError):
    """A tiling does not have the structure an operation requires."""


class ResourceLimitError(SidesumError):
    """A configured resource guard (size limit, node budget) was exceeded.

    ``partial`` may carry whatever partial result was available when the
    budget ran out; it must never be mistaken for a complete answer.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
