"""Exception types shared across the package."""


class ThickLatError(Exception):
    """Base class for every error this package raises deliberately."""


class SchemaError(ThickLatError):
    """A document is malformed: not JSON, or not the expected shape."""


class ValidationError(ThickLatError):
    """A document is well-formed but semantically inconsistent."""


class UnknownFamily(ThickLatError):
    """The requested builtin family does not exist."""


class InvalidParameter(ThickLatError):
    """A parameter is missing or out of range."""


class TooLarge(ThickLatError):
    """An input exceeds a configured size guard."""


class NoTensor(ThickLatError):
    """A tensor operation was applied to a presentation without a tensor table."""


class NotAnElement(ThickLatError):
    """A set handed to a lattice operation is not one of its elements."""


class NotThick(ThickLatError):
    """A computed subset is not closed under the triangle rule."""
