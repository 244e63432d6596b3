"""Exception types shared across the package."""
from __future__ import annotations


class DnLogicError(Exception):
    pass


class ParseError(DnLogicError):
    def __init__(self, message: str, position: int, expected: frozenset[str]):
        self.message = message
        self.position = position
        self.expected = expected
        exp = ", ".join(sorted(expected))
        super().__init__(f"{message} at position {position} (expected one of: {exp})")


class UnsupportedFragment(DnLogicError):
    """The formula lies outside the fragment an engine handles."""


class NotPsrEligible(DnLogicError):
    pass


class NotMarkovEligible(DnLogicError):
    pass


class AttestationRequired(DnLogicError):
    pass
