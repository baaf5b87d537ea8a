"""Brute-force references used only by the tests.

Nothing here calls into the closed-form code paths under test.
"""
import itertools
import math


def primes_below(n):
    sieve = bytearray([1]) * n
    sieve[:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(n) if sieve[i]]


def squares_mod(m):
    return {x * x % m for x in range(m)}


def legendre_by_squares(a, p):
    """(a|p) for an odd prime p by listing the squares mod p."""
    a %= p
    if a == 0:
        return 0
    return 1 if a in squares_mod(p) else -1


def kronecker_two_by_squares(a):
    """(a|2): 0 for even a, else +1 iff a or -a is a square mod 8."""
    if a % 2 == 0:
        return 0
    sq8 = squares_mod(8)
    return 1 if (a % 8 in sq8 or (-a) % 8 in sq8) else -1


def splits_by_factoring(d, ell):
    """x^2 - d has two distinct roots mod the odd prime ell."""
    roots = [x for x in range(ell) if (x * x - d) % ell == 0]
    return len(roots) == 2


def naive_solubility(a, b, p, k):
    """Primitive solution of z^2 = a x^2 + b y^2 mod p^k, by full triple search."""
    m = p ** k
    sq_of = {}
    for z in range(m):
        sq_of.setdefault(z * z % m, []).append(z)
    for x, y in itertools.product(range(m), repeat=2):
        r = (a * x * x + b * y * y) % m
        for z in sq_of.get(r, ()):
            if x % p or y % p or z % p:
                return 1
    return -1


def squarefree_part(n):
    sign = -1 if n < 0 else 1
    n = abs(n)
    out = 1
    f = 2
    while f * f <= n:
        while n % (f * f) == 0:
            n //= f * f
        if n % f == 0:
            out *= f
            n //= f
        f += 1
    return sign * out * n
