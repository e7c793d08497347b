"""Exception hierarchy."""


class FuseliftError(Exception):
    """Base class for all errors raised by fuselift."""


class DomainError(FuseliftError, ValueError):
    """An argument lies outside the domain of an operation."""


class NotQuadraticError(DomainError):
    """A Q/Z-valued map fails the quadratic-form axioms."""


class ExtensionError(FuseliftError):
    """Extension data fails the hypotheses needed to build the extension."""


class InconsistencyError(FuseliftError):
    """A derived table contradicts an identity that must hold for valid input."""


class ParseError(FuseliftError):
    """Malformed serialized data. ``where`` locates the offending item."""

    def __init__(self, message: str, where: str = ""):
        self.where = where
        super().__init__(f"{where}: {message}" if where else message)
