"""Central simple algebra classes over Q and quadratic fields.

A class is stored as (center, degree, local invariants). Over the fields in
scope the Albert-Brauer-Hasse-Noether theorem makes this data a complete
isomorphism invariant, and the index is the lcm of the invariant
denominators; equality of normalized data is therefore algebra isomorphism.
"""
import enum
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .arith import INFINITE, RationalPlace, factorize, hilbert_symbol, relevant_places
from .errors import DomainError, ReciprocityError, UnsupportedConfiguration
from .quadfields import RATIONALS, FieldDesc, SplittingType, splitting

__all__ = [
    "Slot", "AlgebraPlace", "CentralSimpleClass", "QuaternionKind",
    "trivial_class", "quaternion_from_symbol", "quaternion_from_discriminant",
    "definite_quaternion", "tensor", "opposite", "base_change", "splits",
    "embeds", "embedding_capacity", "to_json", "from_json",
]


class Slot(enum.Enum):
    ONLY = 0
    FIRST = 1
    SECOND = 2


@dataclass(frozen=True)
class AlgebraPlace:
    """A place of ``base`` lying over the rational place ``under``."""
    base: FieldDesc
    under: RationalPlace
    slot: Slot = Slot.ONLY

    def __post_init__(self):
        if self.base.is_rational or splitting(self.base, self.under) is not SplittingType.SPLIT:
            if self.slot is not Slot.ONLY:
                raise DomainError(f"{self.under} has a single place in {self.base}")
        elif self.slot is Slot.ONLY:
            raise DomainError(f"{self.under} splits in {self.base}; use slot FIRST or SECOND")

    @property
    def is_archimedean(self):
        return self.under.is_infinite

    @property
    def is_complex(self):
        return self.under.is_infinite and self.base.is_imaginary

    @property
    def local_degree(self):
        return 1 if self.slot is not Slot.ONLY or self.base.is_rational else 2

    def sort_key(self):
        return (self.under.prime, self.slot.value)

    @property
    def label(self):
        head = str(self.under)
        return head if self.slot is Slot.ONLY else f"{head}.{self.slot.value}"

    @classmethod
    def parse(cls, base, label):
        head, _, tail = str(label).partition(".")
        slot = Slot.ONLY if not tail else {"1": Slot.FIRST, "2": Slot.SECOND}.get(tail)
        if slot is None:
            raise DomainError(f"bad place label {label!r}")
        return cls(base, RationalPlace.parse(head), slot)

    def conjugate(self):
        """Image under the nontrivial automorphism of a quadratic base."""
        if self.slot is Slot.ONLY:
            return self
        other = Slot.SECOND if self.slot is Slot.FIRST else Slot.FIRST
        return AlgebraPlace(self.base, self.under, other)

    def __str__(self):
        return self.label


def places_over(K: FieldDesc, v: RationalPlace):
    if K.is_quadratic and splitting(K, v) is SplittingType.SPLIT:
        return (AlgebraPlace(K, v, Slot.FIRST), AlgebraPlace(K, v, Slot.SECOND))
    return (AlgebraPlace(K, v, Slot.ONLY),)


def _to_place(center, key):
    if isinstance(key, AlgebraPlace):
        return key
    if isinstance(key, RationalPlace):
        return AlgebraPlace(center, key)
    if isinstance(key, int):
        return AlgebraPlace(center, RationalPlace(key))
    return AlgebraPlace.parse(center, key)


@dataclass(frozen=True)
class CentralSimpleClass:
    """Isomorphism class of a central simple algebra: Mat_c(Delta) over ``center``.

    ``invariants`` accepts any mapping or pair sequence from places (AlgebraPlace,
    RationalPlace, prime int, or label such as ``"13.1"``) to values in Q/Z;
    it is normalized to a sorted tuple with zero entries dropped.
    """
    center: FieldDesc
    degree: int
    invariants: tuple = ()

    def __post_init__(self):
        if isinstance(self.degree, bool) or not isinstance(self.degree, int) or self.degree < 1:
            raise DomainError(f"degree must be a positive int, got {self.degree!r}")
        raw = self.invariants.items() if isinstance(self.invariants, Mapping) else self.invariants
        acc = {}
        for key, value in raw:
            place = _to_place(self.center, key)
            if place.base != self.center:
                raise DomainError(f"place {place} is not a place of {self.center}")
            acc[place] = (acc.get(place, Fraction(0)) + Fraction(value)) % 1
        total = Fraction(0)
        norm = []
        for place in sorted(acc, key=AlgebraPlace.sort_key):
            x = acc[place]
            if x == 0:
                continue
            if self.degree % x.denominator:
                raise DomainError(
                    f"invariant {x} at {place} has denominator not dividing degree {self.degree}")
            if place.is_complex:
                raise DomainError(f"invariant at the complex place must be 0, got {x}")
            if place.is_archimedean and x != Fraction(1, 2):
                raise DomainError(f"invariant at real place {place} must be 0 or 1/2, got {x}")
            total += x
            norm.append((place, x))
        if total % 1 != 0:
            raise ReciprocityError(f"invariants sum to {total % 1} mod 1, not 0")
        object.__setattr__(self, "invariants", tuple(norm))

    def inv(self, place) -> Fraction:
        place = _to_place(self.center, place)
        for p, x in self.invariants:
            if p == place:
                return x
        return Fraction(0)

    def as_dict(self):
        return dict(self.invariants)

    @property
    def index(self):
        return math.lcm(1, *(x.denominator for _, x in self.invariants))

    @property
    def capacity(self):
        return self.degree // self.index

    @property
    def is_division(self):
        return self.index == self.degree

    @property
    def is_split(self):
        return not self.invariants

    def ramified(self):
        return tuple(p for p, _ in self.invariants)

    @property
    def discriminant(self):
        """Product of finite ramified primes (rational center only)."""
        if self.center.is_quadratic:
            raise DomainError("discriminant is defined here only over Q")
        return math.prod(p.under.prime for p, _ in self.invariants if not p.is_archimedean)

    def __str__(self):
        body = ", ".join(f"{p.label}: {x}" for p, x in self.invariants) or "split"
        return f"CSA[{self.center}, deg {self.degree}; {body}]"


def trivial_class(center: FieldDesc = RATIONALS, degree: int = 1) -> CentralSimpleClass:
    """Mat_degree(center)."""
    return CentralSimpleClass(center, degree)


class QuaternionKind(enum.Enum):
    INDEFINITE = "indefinite"
    DEFINITE = "definite"


def quaternion_from_symbol(a: int, b: int) -> CentralSimpleClass:
    """The class of the quaternion algebra (a, b)_Q."""
    inv = {v: Fraction(1, 2) for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1}
    return CentralSimpleClass(RATIONALS, 2, inv)


def quaternion_from_discriminant(S: int, kind: QuaternionKind = QuaternionKind.INDEFINITE):
    """Rational quaternion algebra ramified at the primes of S (and at infinity if definite)."""
    if isinstance(kind, str):
        kind = QuaternionKind(kind)
    if S < 1:
        raise DomainError(f"discriminant must be positive, got {S}")
    f = factorize(S)
    if not f.is_squarefree():
        raise DomainError(f"discriminant {S} is not squarefree")
    parity = len(f) % 2
    if kind is QuaternionKind.INDEFINITE and parity:
        raise DomainError(
            f"{S} has an odd number of prime factors; an algebra unramified at infinity "
            "must ramify at an even number of places")
    if kind is QuaternionKind.DEFINITE and not parity:
        raise DomainError(
            f"{S} has an even number of prime factors; with infinity ramified the total "
            "number of ramified places would be odd")
    inv = {RationalPlace(p): Fraction(1, 2) for p in f.primes}
    if kind is QuaternionKind.DEFINITE:
        inv[INFINITE] = Fraction(1, 2)
    return CentralSimpleClass(RATIONALS, 2, inv)


def definite_quaternion(p: int) -> CentralSimpleClass:
    """D_{p,inf}."""
    return quaternion_from_discriminant(p, QuaternionKind.DEFINITE)


def tensor(A: CentralSimpleClass, B: CentralSimpleClass) -> CentralSimpleClass:
    if A.center != B.center:
        raise DomainError(f"tensor needs a common center, got {A.center} and {B.center}")
    inv = A.as_dict()
    for place, x in B.invariants:
        inv[place] = inv.get(place, 0) + x
    return CentralSimpleClass(A.center, A.degree * B.degree, inv)


def opposite(A: CentralSimpleClass) -> CentralSimpleClass:
    return CentralSimpleClass(A.center, A.degree, {p: -x for p, x in A.invariants})


def base_change(A: CentralSimpleClass, K: FieldDesc) -> CentralSimpleClass:
    """A tensored up to the quadratic field K; inv_w = [K_w : Q_v] * inv_v."""
    if not A.center.is_rational:
        raise DomainError("base_change expects a class over Q")
    if not K.is_quadratic:
        raise DomainError(f"base_change target must be quadratic, got {K}")
    inv = {}
    for place, x in A.invariants:
        for w in places_over(K, place.under):
            inv[w] = x * w.local_degree
    return CentralSimpleClass(K, A.degree, inv)


def splits(K: FieldDesc, D: CentralSimpleClass) -> bool:
    """True iff the quadratic field K splits the rational quaternion class D."""
    if D.degree != 2 or not D.center.is_rational:
        raise DomainError("splits expects a quaternion class over Q")
    if not K.is_quadratic:
        raise DomainError(f"expected a quadratic field, got {K}")
    return base_change(D, K).is_split


Divisionish = Union[CentralSimpleClass, FieldDesc]


def _as_class(x):
    return trivial_class(x) if isinstance(x, FieldDesc) else x


def embedding_capacity(B: CentralSimpleClass, delta: Divisionish) -> int:
    """Capacity of Delta (x) B^op over the compositum of the two centers."""
    B, delta = _as_class(B), _as_class(delta)
    Z, K = delta.center, B.center
    Bop = opposite(B)
    if Z.is_rational and K.is_rational:
        return tensor(delta, Bop).capacity
    if Z.is_rational:
        return tensor(base_change(delta, K), Bop).capacity
    if K.is_rational:
        return tensor(delta, base_change(Bop, Z)).capacity
    raise UnsupportedConfiguration(
        f"both centers quadratic ({Z}, {K}); linear disjointness is not handled")


def embeds(B: CentralSimpleClass, delta: Divisionish, n: int) -> bool:
    """Whether B embeds over Q into Mat_n(Delta): [B:Q] divides n * c."""
    B, delta = _as_class(B), _as_class(delta)
    if n < 1:
        raise DomainError(f"matrix size must be positive, got {n}")
    if not delta.is_division:
        raise DomainError(f"{delta} is not a division class")
    dim_B = B.degree ** 2 * B.center.degree
    return (n * embedding_capacity(B, delta)) % dim_B == 0


# -- canonical JSON ------------------------------------------------------------

def to_dict(A: CentralSimpleClass) -> dict:
    return {
        "center": "Q" if A.center.is_rational else A.center.d,
        "degree": A.degree,
        "inv": [[p.label, x.numerator, x.denominator] for p, x in A.invariants],
    }


def from_dict(obj) -> CentralSimpleClass:
    if not isinstance(obj, dict) or set(obj) != {"center", "degree", "inv"}:
        raise DomainError("expected an object with keys center, degree, inv")
    c = obj["center"]
    if c == "Q":
        center = RATIONALS
    elif isinstance(c, int) and not isinstance(c, bool) and c != 1:
        center = FieldDesc(c)
    else:
        raise DomainError(f"bad center {c!r}")
    inv = []
    for item in obj["inv"]:
        if not (isinstance(item, list) and len(item) == 3):
            raise DomainError(f"bad invariant entry {item!r}")
        label, num, den = item
        if not (isinstance(num, int) and isinstance(den, int)) or den <= 0:
            raise DomainError(f"bad invariant entry {item!r}")
        value = Fraction(num, den)
        if value.numerator != num or value.denominator != den or not 0 < value < 1:
            raise DomainError(f"invariant {num}/{den} is not reduced into (0, 1)")
        inv.append((AlgebraPlace.parse(center, label), value))
    A = CentralSimpleClass(center, obj["degree"], inv)
    if [p for p, _ in A.invariants] != [p for p, _ in inv]:
        raise DomainError("invariants are not in canonical order")
    return A


def to_json(A: CentralSimpleClass) -> str:
    return json.dumps(to_dict(A), sort_keys=True, separators=(",", ":"))


def from_json(text: str) -> CentralSimpleClass:
    return from_dict(json.loads(text))
