"""Q and quadratic fields Q(sqrt d), identified by the squarefree integer d."""
import enum
from dataclasses import dataclass

from .arith import INFINITE, RationalPlace, factorize, is_prime, kronecker
from .errors import DomainError

__all__ = [
    "FieldDesc", "RATIONALS", "quadratic", "SplittingType", "splitting",
    "local_degrees", "TooLarge", "TOO_LARGE", "cyclotomic_quadratic",
    "minimal_field_of_sqrtp_zeta",
]


@dataclass(frozen=True, order=True)
class FieldDesc:
    """Q(sqrt d) for squarefree d; ``d == 1`` is Q itself."""
    d: int

    def __post_init__(self):
        if isinstance(self.d, bool) or not isinstance(self.d, int):
            raise DomainError(f"field parameter must be an int, got {self.d!r}")
        if self.d != 1 and (self.d == 0 or not factorize(abs(self.d)).is_squarefree()):
            raise DomainError(f"Q(sqrt {self.d}) needs a squarefree d other than 0, 1")

    @property
    def is_rational(self):
        return self.d == 1

    @property
    def is_quadratic(self):
        return self.d != 1

    @property
    def degree(self):
        return 1 if self.d == 1 else 2

    @property
    def is_imaginary(self):
        return self.d < 0

    @property
    def is_real(self):
        return self.d > 0

    @property
    def discriminant(self):
        if self.d == 1:
            return 1
        return self.d if self.d % 4 == 1 else 4 * self.d

    def __str__(self):
        return "Q" if self.d == 1 else f"Q(sqrt({self.d}))"


RATIONALS = FieldDesc(1)


def quadratic(d: int) -> FieldDesc:
    if d == 1:
        raise DomainError("d = 1 gives Q, not a quadratic field")
    return FieldDesc(d)


class TooLarge:
    """Marker for a field of degree > 2 that is never constructed."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "TOO_LARGE"

    __str__ = __repr__


TOO_LARGE = TooLarge()


class SplittingType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"

    def __str__(self):
        return self.value


def _as_place(ell):
    if isinstance(ell, RationalPlace):
        return ell
    if ell is None or ell == 0:
        return INFINITE
    if not is_prime(ell):
        raise DomainError(f"{ell} is not a prime")
    return RationalPlace(ell)


def splitting(K: FieldDesc, ell) -> SplittingType:
    """Decomposition of the place ell (a prime, or 0 / INFINITE) in K.

    The real place of an imaginary field reports INERT: one complex place
    with local degree 2.
    """
    if K.is_rational:
        raise DomainError("splitting is only defined for quadratic fields")
    v = _as_place(ell)
    if v.is_infinite:
        return SplittingType.SPLIT if K.d > 0 else SplittingType.INERT
    disc = K.discriminant
    if disc % v.prime == 0:
        return SplittingType.RAMIFIED
    return SplittingType.SPLIT if kronecker(disc, v.prime) == 1 else SplittingType.INERT


def local_degrees(K: FieldDesc, ell) -> tuple:
    """Local degrees [K_w : Q_ell] over the places w of K above ell."""
    if K.is_rational:
        return (1,)
    return (1, 1) if splitting(K, ell) is SplittingType.SPLIT else (2,)


def cyclotomic_quadratic(n: int) -> FieldDesc:
    """Q(zeta_n) for the three n giving a quadratic field."""
    if n == 4:
        return FieldDesc(-1)
    if n in (3, 6):
        return FieldDesc(-3)
    raise DomainError(f"Q(zeta_{n}) is not quadratic; expected n in (3, 4, 6)")


_ODD_A_ORDERS = (1, 2, 3, 4, 6, 8, 12)


def minimal_field_of_sqrtp_zeta(p: int, a: int, n: int):
    """Q(sqrt(p^a) * zeta_n) for odd a, or TOO_LARGE when it has degree 4.

    With a odd the field is Q(sqrt(p) * zeta_n); its square generates
    Q(zeta_n^2), which is at most quadratic exactly for the orders below.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not a prime")
    if a < 1 or a % 2 == 0:
        raise DomainError(f"exponent {a} must be odd and positive; even exponents give Q(zeta_n)")
    if n not in _ODD_A_ORDERS:
        raise DomainError(f"n = {n} gives a field of degree > 2; expected one of {_ODD_A_ORDERS}")
    if n in (1, 2):
        return FieldDesc(p)
    if n == 4:
        return FieldDesc(-p)
    if n == 8 and p == 2:
        return FieldDesc(-1)  # sqrt2 * zeta_8 = 1 + i
    if n == 12 and p == 3:
        return FieldDesc(-3)  # sqrt3 * zeta_12 = (3 + sqrt-3) / 2
    return TOO_LARGE
