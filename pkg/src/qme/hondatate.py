"""Supersingular Weil numbers and the endomorphism algebras of their isogeny classes.

Used as an independent check on ``qm.supersingular_menu``: rather than the
congruence conditions, it enumerates Weil numbers sqrt(p^a) * zeta_n, computes
their centers and Honda-Tate invariants, and keeps those whose isogeny class
is a simple surface whose endomorphism algebra contains D.

The invariant formula inv_v = (v(pi) / v(q)) * [K_v : Q_p] at places over p,
and 0 elsewhere, is the standard one from Tate's theorem on abelian varieties
over finite fields; it is taken as an axiom here.
"""
import csv
import io
import os
from dataclasses import dataclass
from fractions import Fraction

from . import brauer, qm
from .arith import RationalPlace, is_prime
from .brauer import CentralSimpleClass, places_over
from .errors import DomainError
from .quadfields import (
    RATIONALS, TOO_LARGE, cyclotomic_quadratic, minimal_field_of_sqrtp_zeta,
)

__all__ = [
    "SupersingularWeilNumber", "IsogenyClassData", "center_of", "endo_invariants",
    "isogeny_class", "enumerate_classes", "oracle_menu", "dump_csv",
    "DEFAULT_A_MAX", "DEFAULT_N_MAX", "default_n_max",
]

DEFAULT_A_MAX = 2
DEFAULT_N_MAX = 60


def default_n_max():
    raw = os.environ.get("QME_ORACLE_NMAX")
    if not raw:
        return DEFAULT_N_MAX
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"QME_ORACLE_NMAX must be an integer, got {raw!r}") from None
    if value < 6:
        raise DomainError(f"QME_ORACLE_NMAX must be at least 6, got {value}")
    return value


@dataclass(frozen=True, order=True)
class SupersingularWeilNumber:
    """pi = sqrt(p^a) * zeta_n, one representative per Galois orbit of zeta_n."""
    p: int
    a: int
    n: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not a prime")
        if self.a < 1 or self.n < 1:
            raise DomainError("a and n must be positive")

    @property
    def q(self):
        return self.p ** self.a

    def __str__(self):
        return f"sqrt({self.p}^{self.a})*zeta_{self.n}"


def center_of(pi: SupersingularWeilNumber):
    """Q(pi) as a FieldDesc (Q or quadratic), or TOO_LARGE."""
    if pi.a % 2 == 0:
        # sqrt(q) is rational, so Q(pi) = Q(zeta_n).
        if pi.n in (1, 2):
            return RATIONALS
        if pi.n in qm.CYCLOTOMIC_ORDERS:
            return cyclotomic_quadratic(pi.n)
        return TOO_LARGE
    if pi.n not in (1, 2, 3, 4, 6, 8, 12):
        return TOO_LARGE  # Q(pi^2) = Q(zeta_n^2) already has degree > 2
    return minimal_field_of_sqrtp_zeta(pi.p, pi.a, pi.n)


def _slope(pi, place):
    # v(pi)/v(q) with v normalized on K_place; pi^2 = q * zeta_n^2 and zeta is a unit.
    e = 2 if place.local_degree == 2 and place.base.discriminant % pi.p == 0 else 1
    v_q = pi.a * e
    v_pi = Fraction(v_q, 2)
    return v_pi / v_q


def endo_invariants(pi: SupersingularWeilNumber) -> CentralSimpleClass:
    """End^0 of the simple isogeny class of pi, for imaginary quadratic Q(pi).

    End^0 is a division algebra, so the returned degree equals the index.
    """
    K = center_of(pi)
    if K is TOO_LARGE or not K.is_imaginary:
        raise DomainError(f"center of {pi} is {K}, not imaginary quadratic")
    inv = {}
    for w in places_over(K, RationalPlace(pi.p)):
        inv[w] = (_slope(pi, w) * w.local_degree) % 1
    index = max((x.denominator for x in inv.values() if x), default=1)
    return CentralSimpleClass(K, index, inv)


@dataclass(frozen=True)
class IsogenyClassData:
    pi: SupersingularWeilNumber
    center: object  # FieldDesc or TOO_LARGE
    endo: CentralSimpleClass = None
    dim: int = None

    @property
    def is_surface_candidate(self):
        return self.endo is not None and self.endo.index == 2 and self.dim == 2


def isogeny_class(pi: SupersingularWeilNumber) -> IsogenyClassData:
    K = center_of(pi)
    if K is TOO_LARGE or not K.is_imaginary:
        return IsogenyClassData(pi, K)
    E = endo_invariants(pi)
    # 2 dim A = [E:K]^(1/2) [K:Q]
    dim = E.index * K.degree // 2
    return IsogenyClassData(pi, K, E, dim)


def enumerate_classes(primes, a_max: int, n_max: int):
    out = []
    for p in sorted(set(primes)):
        for a in range(1, a_max + 1):
            for n in range(1, n_max + 1):
                out.append(isogeny_class(SupersingularWeilNumber(p, a, n)))
    return out


def _admitted(datum, cls):
    if not cls.is_surface_candidate:
        return False
    p, K = cls.pi.p, cls.center
    if not qm.condition_star(datum, p, K):
        return False
    return cls.endo == brauer.base_change(datum.D, K)


def oracle_menu(datum: qm.QmDatum, a_max: int = DEFAULT_A_MAX, n_max: int = None):
    """Supersingular part of the QM menu rebuilt from Weil numbers.

    Returns ``qm.SupersingularEntry`` values in the same order as
    ``qm.supersingular_menu``.
    """
    if n_max is None:
        n_max = default_n_max()
    if a_max < 2 or n_max < 6:
        raise DomainError("oracle needs a_max >= 2 and n_max >= 6")
    raw = [(c.pi.n, c.center, c.pi.p, c.endo)
           for c in enumerate_classes(datum.primes, a_max, n_max) if _admitted(datum, c)]
    return qm._merge(raw)


def dump_csv(datum: qm.QmDatum, a_max: int = DEFAULT_A_MAX, n_max: int = None, fh=None):
    """Write the full enumeration as CSV; returns the text when ``fh`` is None."""
    if n_max is None:
        n_max = default_n_max()
    own = fh is None
    if own:
        fh = io.StringIO()
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["p", "a", "n", "center", "invariants", "dim", "admitted"])
    for c in enumerate_classes(datum.primes, a_max, n_max):
        center = "too-large" if c.center is TOO_LARGE else ("Q" if c.center.is_rational else c.center.d)
        inv = "" if c.endo is None else " ".join(f"{p.label}:{x}" for p, x in c.endo.invariants)
        w.writerow([c.pi.p, c.pi.a, c.pi.n, center, inv,
                    "" if c.dim is None else c.dim, int(_admitted(datum, c))])
    if own:
        return fh.getvalue()
