"""Exception hierarchy shared by every module."""


class TrisectError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetMismatchError(TrisectError, ValueError):
    """Two words (or a word and a map) live over different alphabets."""


class MissingImageError(TrisectError, KeyError):
    """A substitution has no image for some generator."""

    def __str__(self):
        return str(self.args[0]) if self.args else "missing image"


class ShapeError(TrisectError, ValueError):
    """A presentation or homomorphism does not have the required shape."""


class ParameterError(TrisectError, ValueError):
    """Invalid (g, k, p, b) parameters."""


class UnvalidatedHomError(TrisectError, ValueError):
    """A check that needs a well-defined homomorphism got one that is not."""


class DSLError(TrisectError):
    """A problem in a .tri document, with an optional source position."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(str(self))

    def __str__(self):
        if self.line is None:
            return self.message
        return f"{self.line}:{self.column}: {self.message}"
