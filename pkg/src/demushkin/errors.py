"""Exception types shared across the package.

Two families matter to callers: ``DomainError`` (a precondition or
mathematical-domain violation, CLI exit code 1) and ``ParseError``
(malformed input text, CLI exit code 2).
"""


class DomainError(ValueError):
    """A precondition of an operation is violated."""


class NotPrimeError(DomainError):
    """A value required to be prime is not."""


class NotAUnitError(DomainError):
    """A residue required to be invertible is not a unit."""


class PrecisionError(DomainError):
    """The requested 2-adic precision cannot certify the answer."""


class DegenerateFormError(DomainError):
    """A bilinear form required to be nondegenerate is degenerate."""


class SearchBoundError(DomainError):
    """An exhaustive search was requested beyond its dimension bound."""


class ParseError(ValueError):
    """Malformed input text."""


class WordSyntaxError(ParseError):
    """Syntax error in a group word, with the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class GeneratorRangeError(ParseError):
    """A generator index exceeds the declared generator count."""
