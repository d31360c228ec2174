"""Exception hierarchy shared by every layer of birkit."""


class BirkitError(Exception):
    """Base class for all engine errors."""


class InputError(BirkitError, ValueError):
    """Malformed user input (maps to CLI exit code 1)."""


class PolySyntaxError(InputError):
    def __init__(self, message, text="", position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
            if text:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class UnknownVariable(InputError):
    pass


class NonIntegerCoefficient(InputError):
    pass


class RingMismatch(BirkitError, ValueError):
    pass


class ZeroPolynomial(BirkitError, ValueError):
    pass


class HomogeneityError(InputError):
    pass


class SchemaError(InputError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class PreconditionViolated(BirkitError):
    pass


class NotApplicable(BirkitError):
    pass


class ResourceLimit(BirkitError):
    """Raised when a Groebner computation exceeds the configured limits."""

    def __init__(self, kind, limit, message=None):
        self.kind = kind
        self.limit = limit
        super().__init__(message or f"resource limit exceeded: {kind} > {limit}")


class IoError(InputError):
    """A session or fixture file could not be read."""
