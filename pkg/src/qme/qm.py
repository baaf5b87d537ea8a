"""Possible End^0 of an abelian surface A with an embedding D -> End^0(A),
D an indefinite rational quaternion division algebra.

The menu has three parts: non-simple surfaces (Mat_2 of a splitting field,
Mat_2(D_{p,inf})), D itself, and the supersingular algebras D (x) Q(zeta_n).
"""
import json
from dataclasses import dataclass, field

from . import brauer
from .arith import PrimeFactorization, factorize, is_prime
from .brauer import CentralSimpleClass
from .errors import DomainError
from .quadfields import FieldDesc, SplittingType, cyclotomic_quadratic, splitting

__all__ = [
    "QmDatum", "SupersingularEntry", "NonsimpleMenu", "ClassificationReport",
    "nonsimple_menu", "condition_star", "supersingular_menu", "classify",
    "star_admissible_fields", "imaginary_quadratic_fields",
    "exactly_one_criterion", "congruence_criterion", "splitting_criterion",
    "DEFAULT_FIELD_BOUND", "CYCLOTOMIC_ORDERS",
]

DEFAULT_FIELD_BOUND = 1000
CYCLOTOMIC_ORDERS = (3, 4, 6)

UNCONDITIONAL = "unconditional"
FINITE_FIELD = "finite-field-unconditional"
UNDER_H = "arbitrary-field-under-H"

H_NOTE = (
    "Simple supersingular entries are complete for surfaces over finite fields. "
    "Completeness over an arbitrary base field assumes hypothesis (H): every "
    "endomorphism algebra of a supersingular abelian surface is one realized over "
    "a finite field.")


@dataclass(frozen=True)
class QmDatum:
    D: CentralSimpleClass
    S: PrimeFactorization

    def __post_init__(self):
        D = self.D
        if D.degree != 2 or not D.center.is_rational:
            raise DomainError("QM datum needs a quaternion class over Q")
        if any(p.is_archimedean for p in D.ramified()):
            raise DomainError("D is ramified at infinity, so it is definite, not indefinite")
        if D.is_split:
            raise DomainError("D is Mat_2(Q), not a division algebra")
        if D.discriminant != self.S.value:
            raise DomainError(f"factorization {self.S.value} does not match D")

    @classmethod
    def from_discriminant(cls, S: int) -> "QmDatum":
        if isinstance(S, bool) or not isinstance(S, int) or S < 2:
            raise DomainError(f"discriminant must be an integer >= 2, got {S!r}")
        D = brauer.quaternion_from_discriminant(S, brauer.QuaternionKind.INDEFINITE)
        return cls(D, factorize(S))

    @classmethod
    def from_class(cls, D: CentralSimpleClass) -> "QmDatum":
        return cls(D, factorize(D.discriminant))

    @property
    def primes(self):
        return self.S.primes

    @property
    def discriminant(self):
        return self.S.value


def imaginary_quadratic_fields(bound: int):
    """Imaginary quadratic fields with |discriminant| <= bound, by increasing |disc|."""
    out = []
    for m in range(1, bound + 1):
        d = -m
        disc = d if d % 4 == 1 else 4 * d
        if -disc > bound:
            continue
        if factorize(m).is_squarefree():
            out.append(FieldDesc(d))
    out.sort(key=lambda K: (-K.discriminant, -K.d))
    return out


@dataclass(frozen=True)
class NonsimpleMenu:
    field_bound: int
    fields: tuple  # FieldDesc splitting D, |disc| <= field_bound
    criterion: str = "Mat_2(K) for every imaginary quadratic K that splits D"
    dpinf_primes: str = "all"
    dpinf_condition: str = (
        "Mat_2(D_{p,inf}): char p > 0, A ~ E x E for a supersingular E, "
        "and F_{p^2} inside the base field")


def nonsimple_menu(datum: QmDatum, field_bound: int = DEFAULT_FIELD_BOUND) -> NonsimpleMenu:
    """Non-simple part of the menu. Mat_2(Q) never appears since D is division."""
    if field_bound < 1:
        raise DomainError("field_bound must be positive")
    fields = tuple(K for K in imaginary_quadratic_fields(field_bound) if brauer.splits(K, datum.D))
    return NonsimpleMenu(field_bound, fields)


def condition_star(datum: QmDatum, p: int, K: FieldDesc) -> bool:
    """p splits in K and every other prime of S has a single place in K."""
    if p not in datum.primes:
        raise DomainError(f"{p} does not divide the discriminant {datum.discriminant}")
    if not K.is_imaginary:
        raise DomainError(f"{K} is not imaginary quadratic")
    if splitting(K, p) is not SplittingType.SPLIT:
        return False
    return all(splitting(K, ell) is not SplittingType.SPLIT for ell in datum.primes if ell != p)


def exactly_one_criterion(primes, n):
    """Exactly one prime in ``primes`` is 1 mod n; returns it, or None."""
    hits = [p for p in primes if p % n == 1]
    return hits[0] if len(hits) == 1 else None


def congruence_criterion(primes, n):
    """One prime p = 1 mod n, every other l with l | n or l = -1 mod n; returns p or None."""
    p = exactly_one_criterion(primes, n)
    if p is None:
        return None
    if all(ell == p or n % ell == 0 or ell % n == n - 1 for ell in primes):
        return p
    return None


def splitting_criterion(primes, n):
    """Same shape as ``congruence_criterion`` but phrased through splitting in Q(zeta_n)."""
    K = cyclotomic_quadratic(n)
    split = [p for p in primes if splitting(K, p) is SplittingType.SPLIT]
    if len(split) != 1:
        return None
    return split[0]


@dataclass(frozen=True)
class SupersingularEntry:
    ns: tuple
    field: FieldDesc
    p: int
    algebra: CentralSimpleClass

    def key(self):
        return (self.ns, self.field, self.p, self.algebra)


def _merge(raw):
    """Collapse entries sharing (field, p, algebra); keep every n label."""
    groups = {}
    for n, K, p, E in raw:
        groups.setdefault((K, p, E), set()).add(n)
    out = [SupersingularEntry(tuple(sorted(ns)), K, p, E) for (K, p, E), ns in groups.items()]
    out.sort(key=lambda e: (e.ns, e.p))
    return out


def supersingular_menu(datum: QmDatum):
    """Simple supersingular algebras D (x) Q(zeta_n), deduplicated by algebra."""
    raw = []
    for n in CYCLOTOMIC_ORDERS:
        p = congruence_criterion(datum.primes, n)
        if p is None:
            continue
        K = cyclotomic_quadratic(n)
        raw.append((n, K, p, brauer.base_change(datum.D, K)))
    return _merge(raw)


def star_admissible_fields(datum: QmDatum, field_bound: int = DEFAULT_FIELD_BOUND):
    """Imaginary quadratic K (|disc| <= bound) with some p | S satisfying the
    necessary condition; beyond Q(zeta_n) these are open without (H)."""
    out = []
    for K in imaginary_quadratic_fields(field_bound):
        for p in datum.primes:
            if condition_star(datum, p, K):
                out.append((K, p))
    return out


@dataclass
class ClassificationReport:
    discriminant: int
    D: CentralSimpleClass
    nonsimple: NonsimpleMenu
    simple_supersingular: list
    star_fields: list = None  # [(K, p)] when requested
    notes: tuple = field(default=(H_NOTE,))

    @property
    def simple_D_itself(self):
        return self.D

    def simple_algebras(self):
        return [self.D] + [e.algebra for e in self.simple_supersingular]

    def provenance(self):
        prov = {
            "nonsimple_matrix_over_field": UNCONDITIONAL,
            "nonsimple_matrix_over_Dpinf": UNCONDITIONAL,
            "simple_D_itself": UNCONDITIONAL,
            "simple_supersingular": FINITE_FIELD,
        }
        if self.star_fields is not None:
            prov["star_admissible_fields"] = UNDER_H
        return prov

    def to_dict(self):
        out = {
            "discriminant": self.discriminant,
            "nonsimple_matrix_over_field": {
                "criterion": self.nonsimple.criterion,
                "field_bound": self.nonsimple.field_bound,
                "fields": [K.d for K in self.nonsimple.fields],
            },
            "nonsimple_matrix_over_Dpinf": {
                "primes": self.nonsimple.dpinf_primes,
                "condition": self.nonsimple.dpinf_condition,
            },
            "simple_D_itself": brauer.to_dict(self.D),
            "simple_supersingular": [
                {"n": list(e.ns), "field": e.field.d, "p": e.p,
                 "algebra": brauer.to_dict(e.algebra), "provenance": FINITE_FIELD}
                for e in self.simple_supersingular
            ],
            "provenance": self.provenance(),
            "notes": list(self.notes),
        }
        if self.star_fields is not None:
            out["star_admissible_fields"] = [
                {"field": K.d, "p": p, "provenance": UNDER_H} for K, p in self.star_fields]
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=True)

    @classmethod
    def from_dict(cls, obj):
        try:
            ns_part = obj["nonsimple_matrix_over_field"]
            dp = obj["nonsimple_matrix_over_Dpinf"]
            nonsimple = NonsimpleMenu(
                ns_part["field_bound"], tuple(FieldDesc(d) for d in ns_part["fields"]),
                ns_part["criterion"], dp["primes"], dp["condition"])
            entries = [
                SupersingularEntry(tuple(e["n"]), FieldDesc(e["field"]), e["p"],
                                   brauer.from_dict(e["algebra"]))
                for e in obj["simple_supersingular"]]
            star = obj.get("star_admissible_fields")
            if star is not None:
                star = [(FieldDesc(s["field"]), s["p"]) for s in star]
            return cls(obj["discriminant"], brauer.from_dict(obj["simple_D_itself"]),
                       nonsimple, entries, star, tuple(obj["notes"]))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed report: {exc}") from None

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_text(self):
        lines = [f"End^0 menu for QM by D of discriminant {self.discriminant}",
                 f"  D = {self.D}", "", "Non-simple (A ~ C^2):"]
        ks = ", ".join(str(K.d) for K in self.nonsimple.fields) or "(none in window)"
        lines.append(f"  (i)  Mat_2(K), K imaginary quadratic splitting D; "
                     f"d with |disc| <= {self.nonsimple.field_bound}: {ks}")
        lines.append("  (ii) Mat_2(D_{p,inf}) for every prime p; " + self.nonsimple.dpinf_condition)
        lines += ["", "Simple:", f"  (i)  D itself  [{UNCONDITIONAL}]"]
        if not self.simple_supersingular:
            lines.append("  (ii) no supersingular algebra D (x) Q(zeta_n)")
        for e in self.simple_supersingular:
            ns = ",".join(str(n) for n in e.ns)
            lines.append(f"  (ii) D (x) {e.field}  n={ns}  p={e.p}  {e.algebra}  [{FINITE_FIELD}]")
        if self.star_fields is not None:
            lines += ["", f"Fields satisfying the necessary condition [{UNDER_H}]:"]
            for K, p in self.star_fields:
                lines.append(f"  d={K.d}  p={p}")
        lines += ["", "Note: " + " ".join(self.notes)]
        return "\n".join(lines) + "\n"


def classify(datum: QmDatum, field_bound: int = DEFAULT_FIELD_BOUND,
             include_star_fields: bool = False) -> ClassificationReport:
    star = star_admissible_fields(datum, field_bound) if include_star_fields else None
    return ClassificationReport(
        datum.discriminant, datum.D, nonsimple_menu(datum, field_bound),
        supersingular_menu(datum), star)


def listed_embeddings(report: ClassificationReport, sample_primes=(2, 3, 5, 7)):
    """(description, embeds?) for every algebra the report lists.

    The Mat_2(D_{p,inf}) family is checked at ``sample_primes`` plus the primes of S.
    """
    D = report.D
    out = [(f"Mat_2({K})", brauer.embeds(D, K, 2)) for K in report.nonsimple.fields]
    primes = sorted(set(sample_primes) | set(factorize(report.discriminant).primes))
    out += [(f"Mat_2(D_{{{p},inf}})", brauer.embeds(D, brauer.definite_quaternion(p), 2))
            for p in primes if is_prime(p)]
    out.append(("D", brauer.embeds(D, D, 1)))
    out += [(f"D (x) {e.field}", brauer.embeds(D, e.algebra, 1)) for e in report.simple_supersingular]
    return out
