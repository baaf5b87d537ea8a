import math

import pytest
from hypothesis import given, strategies as st

from qme import arith
from qme.arith import INFINITE, RationalPlace, factorize, hilbert_symbol, kronecker
from qme.errors import DomainError

from oracles import (
    kronecker_two_by_squares, legendre_by_squares, naive_solubility, primes_below,
)

SMALL_PRIMES = primes_below(200)


@pytest.mark.parametrize("n, expected", [
    (1, ()),
    (26, ((2, 1), (13, 1))),
    (360, ((2, 3), (3, 2), (5, 1))),
])
def test_factorize_examples(n, expected):
    assert factorize(n).factors == expected


@pytest.mark.parametrize("n", [
    2 ** 61 - 1,                       # prime
    (2 ** 31 - 1) * (10 ** 9 + 7),     # two large primes
    999983 ** 2,                       # square of the largest prime below 10^6
    1000003 * 1000033,                 # both factors just past the trial bound
    2 ** 63,
    3 ** 39,
])
def test_factorize_large(n):
    f = factorize(n)
    assert math.prod(p ** e for p, e in f) == n
    assert all(arith.is_prime(p) for p in f.primes)


@pytest.mark.parametrize("bad", [0, -5, 2 ** 63 + 1])
def test_factorize_rejects(bad):
    with pytest.raises(DomainError):
        factorize(bad)


@given(st.integers(min_value=1, max_value=10 ** 12))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert math.prod(p ** e for p, e in f) == n
    assert list(f.primes) == sorted(set(f.primes))


def test_is_prime_matches_sieve():
    sieve = set(primes_below(20000))
    assert all(arith.is_prime(n) == (n in sieve) for n in range(20000))


def test_is_prime_strong_pseudoprimes():
    # strong pseudoprimes to several of the small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383,
              341550071728321, 3825123056546413051):
        assert not arith.is_prime(n)


def test_kronecker_examples():
    assert kronecker(2, 7) == 1 == legendre_by_squares(2, 7)
    assert kronecker(-3, 2) == -1 == kronecker_two_by_squares(-3)
    assert all(kronecker(a, 1) == 1 for a in range(-30, 31))


@pytest.mark.parametrize("p", [q for q in SMALL_PRIMES if q > 2][:30])
def test_kronecker_matches_legendre(p):
    for a in range(-60, 61):
        assert kronecker(a, p) == legendre_by_squares(a, p)


def test_kronecker_at_two():
    for a in range(-100, 101):
        assert kronecker(a, 2) == kronecker_two_by_squares(a)


@given(st.integers(-500, 500), st.integers(-500, 500), st.integers(-300, 300))
def test_kronecker_multiplicative(a, b, n):
    if n == 0:
        return
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-500, 500), st.integers(-300, 300).filter(bool), st.integers(-300, 300).filter(bool))
def test_kronecker_multiplicative_bottom(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, INFINITE) == -1
    assert hilbert_symbol(-1, -1, 2) == -1
    assert hilbert_symbol(-1, -1, 3) == 1
    assert naive_solubility(-1, -1, 2, 5) == -1
    assert naive_solubility(-1, -1, 3, 3) == 1


def test_hilbert_rejects_zero():
    with pytest.raises(DomainError):
        hilbert_symbol(0, 3, 2)
    with pytest.raises(DomainError):
        arith.hilbert_symbol_oracle(3, 0, 5)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_search_oracle_against_triple_search(p):
    """The one-free-coordinate search agrees with a search over all triples."""
    rng = range(-12, 13) if p == 2 else range(-8, 9)
    for a in rng:
        for b in rng:
            if a == 0 or b == 0 or (p == 5 and abs(a) > 5):
                continue
            a0, _ = arith._strip_even_power(a, p)
            b0, _ = arith._strip_even_power(b, p)
            k = arith.oracle_precision(a0, b0, p)
            assert arith.hilbert_symbol_oracle(a, b, p) == naive_solubility(a0, b0, p, k), (a, b)


nonzero = st.integers(-300, 300).filter(bool)


@given(nonzero, nonzero, st.sampled_from([0, 2, 3, 5, 7, 11, 13]))
def test_hilbert_symmetry(a, b, p):
    assert hilbert_symbol(a, b, p) == hilbert_symbol(b, a, p)


@given(nonzero, nonzero, nonzero, st.sampled_from([0, 2, 3, 5, 7, 11, 13]))
def test_hilbert_bilinear(a, a2, b, p):
    assert hilbert_symbol(a * a2, b, p) == hilbert_symbol(a, b, p) * hilbert_symbol(a2, b, p)


@given(nonzero, nonzero)
def test_hilbert_product_formula_random(a, b):
    assert math.prod(hilbert_symbol(a, b, v) for v in arith.relevant_places(a, b)) == 1


@given(nonzero, st.sampled_from([2, 3, 5, 7, 11]))
def test_hilbert_standard_identities(a, p):
    assert hilbert_symbol(a, -a, p) == 1
    if a != 1:
        assert hilbert_symbol(a, 1 - a, p) == 1


def test_shadow_check_runs(monkeypatch):
    monkeypatch.setenv("QME_SHADOW_CHECK", "1")
    for a in range(-40, 41):
        for b in range(-40, 41):
            if a and b:
                hilbert_symbol(a, b, 2)


def test_shadow_check_catches_mismatch(monkeypatch):
    monkeypatch.setenv("QME_SHADOW_CHECK", "1")
    monkeypatch.setattr(arith, "_hilbert_formula", lambda a, b, p: 1)
    with pytest.raises(AssertionError):
        hilbert_symbol(-1, -1, 2)


def test_rational_place():
    assert str(INFINITE) == "inf"
    assert RationalPlace.parse("13") == RationalPlace(13)
    assert RationalPlace.parse("inf") is INFINITE or RationalPlace.parse("inf") == INFINITE
    assert sorted([RationalPlace(5), INFINITE, RationalPlace(2)]) == [INFINITE, RationalPlace(2), RationalPlace(5)]
    with pytest.raises(DomainError):
        RationalPlace(4)
    with pytest.raises(DomainError):
        RationalPlace.parse("x")


def test_ramified_places():
    assert arith.ramified_places(-1, -1) == [INFINITE, RationalPlace(2)]
    assert arith.ramified_places(-1, 3) == [RationalPlace(2), RationalPlace(3)]
    assert arith.ramified_places(1, 7) == []


@pytest.mark.parametrize("p", [0, 2, 3, 5, 7, 11, 13, 43])
def test_grid_matches_scalar(p):
    vals = [x for x in range(-45, 46) if x]
    grid = arith.hilbert_symbol_grid(vals, vals, p)
    assert grid.shape == (90, 90)
    for i, a in enumerate(vals):
        for j, b in enumerate(vals):
            assert grid[i, j] == hilbert_symbol(a, b, p)


@given(st.lists(st.integers(-10**6, 10**6).filter(bool), min_size=1, max_size=8),
       st.lists(st.integers(-10**6, 10**6).filter(bool), min_size=1, max_size=8),
       st.sampled_from([0, 2, 3, 5, 997]))
def test_grid_matches_scalar_large_values(xs, ys, p):
    grid = arith.hilbert_symbol_grid(xs, ys, p)
    assert [[int(g) for g in row] for row in grid] == [[hilbert_symbol(a, b, p) for b in ys] for a in xs]


def test_grid_rejects_bad_input():
    with pytest.raises(DomainError):
        arith.hilbert_symbol_grid([1, 0], [3], 5)
    with pytest.raises(DomainError):
        arith.hilbert_symbol_grid([[1]], [3], 5)
