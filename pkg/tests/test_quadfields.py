import pytest
from sympy import I, Symbol, cos, degree, discriminant, minimal_polynomial, pi, sin, sqrt

from qme.arith import INFINITE
from qme.errors import DomainError
from qme.quadfields import (
    RATIONALS, TOO_LARGE, FieldDesc, SplittingType, cyclotomic_quadratic,
    local_degrees, minimal_field_of_sqrtp_zeta, quadratic, splitting,
)
from qme import _kernels

from oracles import primes_below, splits_by_factoring, squarefree_part

SPLIT, INERT, RAMIFIED = SplittingType.SPLIT, SplittingType.INERT, SplittingType.RAMIFIED


def test_field_desc_basics():
    K = FieldDesc(-3)
    assert K.discriminant == -3 and K.is_imaginary and K.degree == 2
    assert FieldDesc(-1).discriminant == -4
    assert FieldDesc(5).discriminant == 5 and FieldDesc(2).discriminant == 8
    assert RATIONALS.is_rational and RATIONALS.degree == 1
    for bad in (0, 4, -12, 18):
        with pytest.raises(DomainError):
            FieldDesc(bad)
    with pytest.raises(DomainError):
        quadratic(1)


@pytest.mark.parametrize("d, ell, expected", [
    (-3, 13, SPLIT),
    (-3, 3, RAMIFIED),
    (-3, 2, INERT),
    (-1, 2, RAMIFIED),
    (-7, 2, SPLIT),
    (5, 2, INERT),
    (5, INFINITE, SPLIT),
    (-5, INFINITE, INERT),
])
def test_splitting_examples(d, ell, expected):
    assert splitting(FieldDesc(d), ell) is expected


def test_splitting_rejects_rationals():
    with pytest.raises(DomainError):
        splitting(RATIONALS, 5)
    with pytest.raises(DomainError):
        splitting(FieldDesc(-1), 9)


def test_splitting_by_polynomial_factoring():
    """Odd ell not dividing d: split iff x^2 - d has two roots mod ell."""
    for d in range(-50, 51):
        if d in (0, 1) or squarefree_part(d) != d:
            continue
        K = FieldDesc(d)
        for ell in primes_below(101)[1:]:
            if d % ell == 0:
                assert splitting(K, ell) is RAMIFIED
                continue
            by_poly = splits_by_factoring(d, ell)
            assert (splitting(K, ell) is SPLIT) == by_poly, (d, ell)
            assert int(_kernels.split_mask(d, ell).sum()) == (2 if by_poly else 0)


def test_splitting_at_two_by_factoring():
    """At 2: ramified iff 2 | disc; otherwise split iff x^2 + x + (1-d)/4 has a root mod 2."""
    for d in range(-50, 51):
        if d in (0, 1) or squarefree_part(d) != d:
            continue
        K = FieldDesc(d)
        if d % 4 != 1:
            assert splitting(K, 2) is RAMIFIED
        else:
            c = (1 - d) // 4
            roots = [x for x in range(2) if (x * x + x + c) % 2 == 0]
            assert (splitting(K, 2) is SPLIT) == (len(roots) == 2)


def test_ramified_only_at_disc():
    for d in (-3, -1, 5, -15, 33):
        K = FieldDesc(d)
        ram = [ell for ell in primes_below(500) if splitting(K, ell) is RAMIFIED]
        assert ram == [ell for ell in primes_below(500) if K.discriminant % ell == 0]


def test_local_degrees():
    assert local_degrees(RATIONALS, 7) == (1,)
    assert local_degrees(FieldDesc(-3), 13) == (1, 1)
    assert local_degrees(FieldDesc(-3), 2) == (2,)


def test_cyclotomic_quadratic():
    assert cyclotomic_quadratic(4) == FieldDesc(-1)
    assert cyclotomic_quadratic(3) == FieldDesc(-3) == cyclotomic_quadratic(6)
    for n in (1, 2, 5, 8, 12):
        with pytest.raises(DomainError):
            cyclotomic_quadratic(n)


@pytest.mark.parametrize("p, a, n, d", [(2, 1, 8, -1), (3, 1, 12, -3), (5, 1, 4, -5), (7, 3, 4, -7), (11, 1, 2, 11)])
def test_minimal_field_examples(p, a, n, d):
    assert minimal_field_of_sqrtp_zeta(p, a, n) == FieldDesc(d)


def test_minimal_field_too_large_and_errors():
    assert minimal_field_of_sqrtp_zeta(3, 1, 3) is TOO_LARGE
    assert minimal_field_of_sqrtp_zeta(2, 1, 12) is TOO_LARGE
    assert minimal_field_of_sqrtp_zeta(5, 1, 8) is TOO_LARGE
    with pytest.raises(DomainError):
        minimal_field_of_sqrtp_zeta(5, 2, 4)
    with pytest.raises(DomainError):
        minimal_field_of_sqrtp_zeta(5, 1, 5)
    with pytest.raises(DomainError):
        minimal_field_of_sqrtp_zeta(6, 1, 4)


x = Symbol("x")


def _sympy_field(p, n):
    """Q(sqrt(p) * zeta_n) via its minimal polynomial: FieldDesc if degree <= 2, else None."""
    z = cos(2 * pi / n) + I * sin(2 * pi / n)
    mp = minimal_polynomial(sqrt(p) * z, x)
    if degree(mp, x) > 2:
        return None
    if degree(mp, x) == 1:
        return RATIONALS
    return FieldDesc(squarefree_part(int(discriminant(mp, x))))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_minimal_field_against_sympy(p):
    for n in (1, 2, 3, 4, 6, 8, 12):
        got = minimal_field_of_sqrtp_zeta(p, 1, n)
        want = _sympy_field(p, n)
        assert (got is TOO_LARGE and want is None) or got == want, (p, n)
