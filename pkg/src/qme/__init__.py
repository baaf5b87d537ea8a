"""Which algebras occur as End^0 of abelian surfaces with quaternion multiplication
(and of abelian varieties with real multiplication), decided in exact arithmetic."""
from .errors import DomainError, NoPositiveInvolution, ReciprocityError, UnsupportedConfiguration

__version__ = "0.1.0"

__all__ = ["DomainError", "NoPositiveInvolution", "ReciprocityError", "UnsupportedConfiguration"]
