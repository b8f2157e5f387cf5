"""Exceptions shared across the package."""


class CovertSetCoverError(Exception):
    """Base class for all package-specific errors."""


class UncoverableInstanceError(CovertSetCoverError):
    """The family cannot cover the universe; carries a witness element."""

    def __init__(self, element, message=None):
        self.element = element
        super().__init__(message or f"element {element} is not contained in any set")


class InvalidCoverError(CovertSetCoverError):
    """A claimed cover violates its invariants (duplicates, gaps, dead picks)."""


class BruteForceCapExceededError(CovertSetCoverError):
    """Instance too large for exhaustive optimum search."""
