"""Exception types raised across the package."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class ReciprocityError(DomainError):
    """Local invariants of a central simple class do not sum to 0 mod 1."""


class UnsupportedConfiguration(DomainError):
    """The inputs are mathematically meaningful but not handled natively."""


class NoPositiveInvolution(DomainError):
    """A division algebra over a CM field fails the involution condition."""
