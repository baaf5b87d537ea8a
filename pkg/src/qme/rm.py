"""Endomorphism algebras Mat_n(Delta) of abelian varieties with real
multiplication by a totally real field F of degree g, by Albert type.

Q and real quadratic fields are handled natively. Larger F are described by
an ``ExplicitField``: its degree, the local degrees [F_w : Q_l] at the primes
that matter, and a declared list of subfields. Those local degrees are the
only arithmetic of F the criteria below consume.
"""
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import jsonschema

from . import brauer
from .arith import RationalPlace, is_prime
from .brauer import CentralSimpleClass, Slot
from .errors import DomainError, NoPositiveInvolution, UnsupportedConfiguration
from .quadfields import RATIONALS, FieldDesc, local_degrees

__all__ = [
    "ExplicitField", "ExplicitQuaternion", "RmShape", "field_degree",
    "field_local_degrees", "subfields_of", "contains_subfield",
    "type1_shapes", "type2_check", "type3_shapes", "type4_check", "type4_shape",
    "definite_at_both_infinities", "parse_field_spec", "load_field_spec",
]

SUPERSINGULAR_NOTE = "characteristic p > 0, A supersingular"


@dataclass(frozen=True)
class ExplicitField:
    """A totally real field known only through local degree data.

    ``local`` maps a rational prime to the local degrees [F_w : Q_l] of the
    places above it; ``subfields`` lists declared subfields (Q, real quadratic
    FieldDesc, or nested ExplicitField).
    """
    degree: int
    local: tuple = ()  # ((prime, (deg, ...)), ...)
    subfields: tuple = ()
    name: str = "F"

    def __post_init__(self):
        if self.degree < 1:
            raise DomainError("field degree must be positive")
        local = dict(self.local) if not isinstance(self.local, dict) else self.local
        norm = []
        for ell, degs in sorted(local.items()):
            if not is_prime(ell):
                raise DomainError(f"{self.name}: local table key {ell} is not a prime")
            degs = tuple(sorted(degs))
            if not degs or any(d < 1 for d in degs):
                raise DomainError(f"{self.name}: local degrees at {ell} must be positive")
            if sum(degs) != self.degree:
                raise DomainError(
                    f"{self.name}: local degrees at {ell} sum to {sum(degs)}, expected {self.degree}")
            norm.append((ell, degs))
        object.__setattr__(self, "local", tuple(norm))
        subs = tuple(self.subfields)
        for K in subs:
            _check_totally_real(K)
            k = field_degree(K)
            if self.degree % k:
                raise DomainError(f"{self.name}: subfield {K} of degree {k} does not divide {self.degree}")
            if isinstance(K, FieldDesc) and K.is_quadratic:
                for ell, degs in norm:
                    if len(local_degrees(K, ell)) == 1 and any(d % 2 for d in degs):
                        raise DomainError(
                            f"{self.name}: {ell} has one place in subfield {K}, so every local "
                            f"degree of {self.name} above it must be even, got {list(degs)}")
        object.__setattr__(self, "subfields", subs)

    def __str__(self):
        return self.name


TotallyRealDesc = Union[FieldDesc, ExplicitField]


def _check_totally_real(F):
    if isinstance(F, FieldDesc):
        if F.is_imaginary:
            raise DomainError(f"{F} is not totally real")
    elif not isinstance(F, ExplicitField):
        raise DomainError(f"not a field description: {F!r}")


def field_degree(F: TotallyRealDesc) -> int:
    return F.degree


def field_local_degrees(F: TotallyRealDesc, ell: int) -> tuple:
    """[F_w : Q_ell] over the places w | ell."""
    if isinstance(F, FieldDesc):
        return local_degrees(F, ell)
    table = dict(F.local)
    if ell not in table:
        raise UnsupportedConfiguration(f"{F.name}: no local degree data at {ell}")
    return table[ell]


def subfields_of(F: TotallyRealDesc) -> tuple:
    if isinstance(F, FieldDesc):
        return (RATIONALS,) if F.is_rational else (RATIONALS, F)
    return F.subfields


def contains_subfield(F: TotallyRealDesc, K0: TotallyRealDesc) -> bool:
    if K0 == RATIONALS or K0 == F:
        return True
    return K0 in subfields_of(F)


@dataclass(frozen=True)
class ExplicitQuaternion:
    """A quaternion algebra over a non-rational K0 given by its ramification:
    for each finite ramified place of K0, the relative local degrees
    [F_w : K0_v] of the places of F above it."""
    ramified: tuple  # ((label, (deg, ...)), ...)
    real_ramified: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ramified", tuple((str(l), tuple(d)) for l, d in self.ramified))
        if len(self.ramified) + self.real_ramified == 0:
            return
        if (len(self.ramified) + self.real_ramified) % 2:
            raise DomainError("a quaternion algebra ramifies at an even number of places")


@dataclass(frozen=True)
class RmShape:
    type_tag: str
    K0: object
    n: int
    delta: object  # CentralSimpleClass or a family name
    conditional_on_H: bool = False
    notes: tuple = ()
    m: int = 1

    def degree_equation(self):
        k = field_degree(self.K0)
        if self.type_tag == "II":
            return 2 * self.n * k
        if self.type_tag == "IV":
            return self.n * self.m * k
        return self.n * k

    def to_dict(self):
        K0 = self.K0
        k0 = "Q" if K0 == RATIONALS else (K0.d if isinstance(K0, FieldDesc) else K0.name)
        delta = brauer.to_dict(self.delta) if isinstance(self.delta, CentralSimpleClass) else self.delta
        return {"type": self.type_tag, "K0": k0, "n": self.n, "m": self.m, "delta": delta,
                "conditional_on_H": self.conditional_on_H, "notes": list(self.notes)}

    def __str__(self):
        flag = "  [conditional on (H)]" if self.conditional_on_H else ""
        notes = f"  ({'; '.join(self.notes)})" if self.notes else ""
        return f"Type {self.type_tag}: K0={self.K0} n={self.n} Delta={self.delta}{flag}{notes}"


# -- Type I ---------------------------------------------------------------------

def type1_shapes(F: TotallyRealDesc):
    """Mat_n(K0) for every known subfield K0, with n[K0:Q] = g."""
    _check_totally_real(F)
    g = field_degree(F)
    out = []
    for K0 in subfields_of(F):
        delta = brauer.trivial_class(K0) if isinstance(K0, FieldDesc) else str(K0)
        out.append(RmShape("I", K0, g // field_degree(K0), delta))
    return out


# -- Type II --------------------------------------------------------------------

def type2_check(F: TotallyRealDesc, K0: TotallyRealDesc, delta, n: int) -> bool:
    """Whether Mat_n(Delta) is an RM endomorphism algebra of Type II.

    Needs 2n[K0:Q] = g and F splitting Delta: every local degree
    [F_w : K0_v] over a finite ramified place v of Delta is even.
    """
    _check_totally_real(F)
    if n < 1:
        raise DomainError("n must be positive")
    g = field_degree(F)
    if isinstance(delta, CentralSimpleClass):
        if delta.center != K0:
            raise DomainError(f"Delta has center {delta.center}, expected {K0}")
        if K0 != RATIONALS:
            raise UnsupportedConfiguration(
                "quaternion algebras over a real quadratic K0 need explicit ramification data")
        if delta.degree != 2 or not delta.is_division:
            raise DomainError("Delta must be a quaternion division algebra")
        if any(p.is_archimedean for p in delta.ramified()):
            raise DomainError("Delta is ramified at infinity; Type II needs it totally indefinite")
        rel = [field_local_degrees(F, p.under.prime) for p in delta.ramified()]
    elif isinstance(delta, ExplicitQuaternion):
        if K0 == RATIONALS:
            raise DomainError("over Q pass Delta as a CentralSimpleClass")
        if delta.real_ramified:
            raise DomainError("Delta is ramified at a real place; Type II needs it totally indefinite")
        rel = [degs for _, degs in delta.ramified]
    else:
        raise DomainError(f"unsupported Delta {delta!r}")
    if not contains_subfield(F, K0):
        return False
    if 2 * n * field_degree(K0) != g:
        return False
    return all(d % 2 == 0 for degs in rel for d in degs)


# -- Type III -------------------------------------------------------------------

def definite_at_both_infinities(p: int) -> CentralSimpleClass:
    """D_{inf1,inf2}: the quaternion algebra over Q(sqrt p) ramified at its two real places."""
    K = FieldDesc(p)
    inf = RationalPlace(0)
    return CentralSimpleClass(K, 2, {
        brauer.AlgebraPlace(K, inf, Slot.FIRST): Fraction(1, 2),
        brauer.AlgebraPlace(K, inf, Slot.SECOND): Fraction(1, 2),
    })


def type3_shapes(F: TotallyRealDesc, p: int, assume_H: bool = False):
    """Type III shapes in characteristic p; only n[K0:Q] = g occurs.

    With ``assume_H`` the list is D_{p,inf} over Q and, when Q(sqrt p) is a
    subfield of F, D_{inf1,inf2} over Q(sqrt p). Otherwise every subfield K0
    gets the family D_{p,inf} (x) K0, flagged as conditional.
    """
    _check_totally_real(F)
    if not is_prime(p):
        raise DomainError(f"{p} is not a prime")
    g = field_degree(F)
    notes = (SUPERSINGULAR_NOTE.replace("p > 0", f"p = {p}"),)
    Dp = brauer.definite_quaternion(p)
    if assume_H:
        out = [RmShape("III", RATIONALS, g, Dp, False, notes)]
        Kp = FieldDesc(p)
        if contains_subfield(F, Kp):
            out.append(RmShape("III", Kp, g // 2, definite_at_both_infinities(p), False, notes))
        return out
    out = []
    for K0 in subfields_of(F):
        if K0 == RATIONALS:
            delta = Dp
        elif isinstance(K0, FieldDesc):
            delta = brauer.base_change(Dp, K0)
        else:
            delta = f"D_{{{p},inf}} (x) {K0}"
        out.append(RmShape("III", K0, g // field_degree(K0), delta, True, notes))
    return out


# -- Type IV --------------------------------------------------------------------

def _check_involution(delta):
    for place, x in delta.invariants:
        if place.slot is Slot.ONLY:
            raise NoPositiveInvolution(
                f"invariant {x} at {place}, a place fixed by complex conjugation; must be 0")
        if (x + delta.inv(place.conjugate())) % 1:
            raise NoPositiveInvolution(
                f"invariants at {place} and its conjugate do not cancel")


def type4_check(F: TotallyRealDesc, K0: TotallyRealDesc, K: FieldDesc,
                delta: CentralSimpleClass, m: int, n: int) -> bool:
    """Whether Mat_n(Delta), Delta central division over the CM field K, is a
    Type IV RM endomorphism algebra.

    Raises NoPositiveInvolution when Delta cannot carry a positive involution;
    a False return means the degree or local embedding condition fails.
    """
    _check_totally_real(F)
    if K0 != RATIONALS:
        raise UnsupportedConfiguration("Type IV is handled natively only for K0 = Q")
    if not (isinstance(K, FieldDesc) and K.is_imaginary):
        raise DomainError(f"{K} is not an imaginary quadratic field")
    if delta.center != K:
        raise DomainError(f"Delta has center {delta.center}, expected {K}")
    if delta.degree != m:
        raise DomainError(f"Delta has degree {delta.degree}, expected m = {m}")
    if not delta.is_division:
        raise DomainError("Delta must be a division algebra")
    _check_involution(delta)
    if field_degree(F) != n * m * field_degree(K0):
        return False
    for place, x in delta.invariants:
        for d in field_local_degrees(F, place.under.prime):
            if (d * x) % 1:
                return False
    return True


def type4_shape(F, K, delta, n):
    if not type4_check(F, RATIONALS, K, delta, delta.degree, n):
        return None
    return RmShape("IV", RATIONALS, n, delta, False, (f"CM field {K}",), m=delta.degree)


# -- field specs ------------------------------------------------------------------

_LOCAL = {
    "type": "object",
    "patternProperties": {"^[0-9]+$": {
        "type": "array", "minItems": 1, "items": {"type": "integer", "minimum": 1}}},
    "additionalProperties": False,
}

FIELD_SCHEMA = {
    "$defs": {
        "field": {"oneOf": [
            {"type": "string", "pattern": "^([Qq]|sqrt[0-9]+)$"},
            {"type": "object", "properties": {"d": {"type": "integer", "minimum": 1}},
             "required": ["d"], "additionalProperties": False},
            {"$ref": "#/$defs/explicit"},
        ]},
        "explicit": {
            "type": "object",
            "properties": {
                "degree": {"type": "integer", "minimum": 1},
                "name": {"type": "string"},
                "local": _LOCAL,
                "subfields": {"type": "array", "items": {"$ref": "#/$defs/field"}},
            },
            "required": ["degree"],
            "additionalProperties": False,
        },
    },
    "$ref": "#/$defs/field",
}


def _short_field(text):
    text = text.strip()
    if text in ("q", "Q"):
        return RATIONALS
    m = re.fullmatch(r"sqrt(\d+)", text)
    if not m:
        raise DomainError(f"field must be 'q', 'sqrtD' or a JSON spec, got {text!r}")
    d = int(m.group(1))
    if d < 2:
        raise DomainError(f"sqrt{d} is not a real quadratic field")
    return FieldDesc(d)


def _build(obj, default_name="F"):
    if isinstance(obj, str):
        return _short_field(obj)
    if "d" in obj:
        return RATIONALS if obj["d"] == 1 else FieldDesc(obj["d"])
    local = {int(k): v for k, v in obj.get("local", {}).items()}
    subs = tuple(_build(s, f"{default_name}.sub{i}") for i, s in enumerate(obj.get("subfields", [])))
    return ExplicitField(obj["degree"], local, subs, obj.get("name", default_name))


def parse_field_spec(obj) -> TotallyRealDesc:
    """Validate and build a field from its JSON form.

    Accepted forms: ``"q"``, ``"sqrt5"``, ``{"d": 5}``, or
    ``{"degree": 4, "local": {"13": [2, 2]}, "subfields": ["q", "sqrt5"]}``.
    """
    validator = jsonschema.Draft202012Validator(FIELD_SCHEMA)
    errors = sorted(validator.iter_errors(obj), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        where = "/".join(str(x) for x in err.absolute_path) or "<root>"
        raise DomainError(f"field spec invalid at {where}: {err.message}")
    F = _build(obj)
    _check_totally_real(F)
    return F


def load_field_spec(text_or_path: str) -> TotallyRealDesc:
    """Parse a short name, an inline JSON document, or a path to a JSON file."""
    s = text_or_path.strip()
    if s.startswith("{") or s.startswith("\""):
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as exc:
            raise DomainError(f"field spec is not valid JSON: {exc}") from None
        return parse_field_spec(obj)
    if re.fullmatch(r"[qQ]|sqrt\d+", s):
        return _short_field(s)
    try:
        with open(s) as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise DomainError(f"cannot read field spec {s!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"field spec {s!r} is not valid JSON: {exc}") from None
    return parse_field_spec(obj)
