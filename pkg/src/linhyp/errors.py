"""Exception types shared across the package."""


class LinhypError(Exception):
    """Base class for all errors raised by linhyp."""


class OutOfRange(LinhypError):
    """A vertex label, parameter or argument lies outside its admissible range."""


class NotATriple(LinhypError):
    """An edge does not consist of three distinct vertices."""


class NotLinear(LinhypError):
    """Two edges share two or more vertices.

    Carries the offending pair of edges in ``args[1]`` when available.
    """

    def __init__(self, msg, edges=None):
        super().__init__(msg)
        self.edges = edges


class PatternTooLarge(LinhypError):
    """Pattern exceeds the documented bound of the backtracking matcher."""


class GroundTooSmall(LinhypError):
    """Ground set too small for the requested construction."""


class GroundMismatch(LinhypError):
    """Two structures that must share a ground set do not."""


class ExchangeViolation(LinhypError):
    """Two rank-size sets differ by a single exchange (not a stable family)."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class LineTooShort(LinhypError):
    """A line passed to the consecutive-triples chain has fewer than 3 points."""


class InternalLinearityFailure(LinhypError):
    """Encoder produced a non-linear component; indicates a bug."""


class NotDecodable(LinhypError):
    """Input to decode is not in the image of encode."""


class MissingCount(LinhypError):
    """A required entry is absent from the counts table."""


class BudgetExceeded(LinhypError):
    """A search exhausted its time or node budget before completing."""


class FormatError(LinhypError):
    """A text file does not conform to the .l3h / .pav grammar."""
