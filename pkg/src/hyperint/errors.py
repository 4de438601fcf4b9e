"""Exceptions shared across the package."""


class DomainError(ValueError):
    """Input is outside an operation's mathematical domain."""


class VerificationError(AssertionError):
    """An internal consistency identity failed to hold."""
