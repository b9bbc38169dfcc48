class AltZetaError(Exception):
    """Base class for all library errors."""


class ParameterError(AltZetaError, ValueError):
    """An argument is outside the range an operation accepts."""


class DomainError(AltZetaError, ValueError):
    """The function is undefined (or unsupported) at the requested point."""


class PoleError(DomainError):
    """The requested point sits on, or too close to, a pole."""
