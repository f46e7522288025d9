"""Exception hierarchy shared by every module of the package."""


class HopfOreError(Exception):
    """Base class for all package errors."""


class SemanticError(HopfOreError):
    """Input is well formed but violates a mathematical constraint."""


class DivisionByZero(HopfOreError, ZeroDivisionError):
    pass


class FieldMismatch(HopfOreError):
    pass


class ZeroElement(SemanticError):
    pass


class IndexOutOfRange(HopfOreError, ValueError):
    pass


class GroupMismatch(HopfOreError):
    pass


class ContextMismatch(HopfOreError):
    pass


class RegimeMismatch(SemanticError):
    pass


class InfiniteRegime(RegimeMismatch):
    pass


class ChiAEqualsOne(SemanticError):
    pass


class UnsupportedRegime(SemanticError):
    pass


class FieldTooSmall(SemanticError):
    pass


class InvalidCharacter(SemanticError):
    pass


class ZeroBeta(SemanticError):
    pass


class ZeroAlpha(SemanticError):
    pass


class DimensionMismatch(HopfOreError, ValueError):
    pass


class NotInvariant(HopfOreError, ValueError):
    pass


class InternalDimensionMismatch(HopfOreError, AssertionError):
    """A dimension count that must hold by construction failed: this is a bug."""


class EigenvalueOutsideCandidates(HopfOreError):
    """The oracle found x^s eigenvalue mass not accounted for by the candidate set."""


class ParseError(HopfOreError, ValueError):
    """Syntax error in a scalar literal, label or expression, with a 0-based position."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.text = text
        self.position = position
        self.message = message
        super().__init__(f"{message} at position {position}")

    def caret(self) -> str:
        """Two-line rendering of the input with a caret under the offending character."""
        return f"{self.text}\n{' ' * self.position}^"
