"""Shared exception types.

Every failure mode that callers are expected to handle gets its own class,
so the CLI can map them onto distinct exit codes.
"""


class CayleykitError(Exception):
    """Base class for all library errors."""


class ParseError(CayleykitError):
    """Malformed word, expression, or interchange file."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class AlphabetError(CayleykitError):
    """Symbol or word does not belong to the expected alphabet."""


class DomainError(CayleykitError):
    """Input lies outside the domain of the requested function."""


class FunctionalityError(CayleykitError):
    """A transducer produced (or could produce) two outputs for one input."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class MembershipError(CayleykitError):
    """Word rejected by the representation's language checker."""


class FaithfulnessError(CayleykitError):
    """A machine tried to damage the left tape marker."""


class BudgetExceededError(CayleykitError):
    """Step count exceeded the declared time budget."""


class CapExceededError(CayleykitError):
    """A configurable safety cap (ball size, enumeration count) was hit."""


class UnsupportedError(CayleykitError):
    """Operation is documented as out of scope for this representation."""


class OracleDisagreementError(CayleykitError):
    """A representation and its brute-force oracle computed different answers."""
