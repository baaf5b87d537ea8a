"""Integer arithmetic: factorization, residue symbols and Hilbert symbols over Q."""
import math
import os
from dataclasses import dataclass
from functools import lru_cache, total_ordering

import numpy as np

from . import _kernels
from .errors import DomainError

__all__ = [
    "PrimeFactorization", "RationalPlace", "INFINITE",
    "is_prime", "factorize", "valuation", "is_squarefree",
    "kronecker", "hilbert_symbol", "hilbert_symbol_grid", "hilbert_symbol_oracle",
    "relevant_places", "ramified_places",
]

MAX_INPUT = 2 ** 63
_TRIAL_BOUND = 10 ** 6
# Deterministic for n < 3.3e24, which covers every input we accept.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 0 <= n < 2^64."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n):
    # n is odd, composite and free of small factors.
    for c in range(1, 200):
        y, r, q, g = 2, 1, 1, 1
        x = ys = 2
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise RuntimeError(f"Pollard rho failed on {n}")  # pragma: no cover


def _split_large(n, out):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    f = _pollard_brent(n)
    _split_large(f, out)
    _split_large(n // f, out)


@dataclass(frozen=True)
class PrimeFactorization:
    value: int
    factors: tuple  # ((prime, exponent), ...) ascending

    def __post_init__(self):
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                raise DomainError(f"malformed factorization {self.factors}")
            last = p
            prod *= p ** e
        if prod != self.value:
            raise DomainError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self):
        return tuple(p for p, _ in self.factors)

    def is_squarefree(self):
        return all(e == 1 for _, e in self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def factorize(n: int) -> PrimeFactorization:
    """Complete factorization of 1 <= n <= 2^63.

    Trial division up to 10^6, Brent's variant of Pollard rho for the cofactor.
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"factorize expects an int, got {n!r}")
    if n < 1:
        raise DomainError(f"factorize expects n >= 1, got {n}")
    if n > MAX_INPUT:
        raise DomainError(f"factorize is bounded at 2^63, got {n}")
    return _factorize(n)


@lru_cache(maxsize=1 << 14)
def _factorize(n):
    out = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    p = 5
    while p <= _TRIAL_BOUND and p * p <= m:
        for q in (p, p + 2):
            while m % q == 0:
                out[q] = out.get(q, 0) + 1
                m //= q
        p += 6
    if m > 1:
        if p * p > m:
            out[m] = out.get(m, 0) + 1
        else:
            _split_large(m, out)
    return PrimeFactorization(n, tuple(sorted(out.items())))


def valuation(n: int, p: int) -> int:
    """Exponent of the prime p in the nonzero integer n."""
    if n == 0:
        raise DomainError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return factorize(abs(n)).is_squarefree()


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 == 1 and a % 8 in (3, 5):
        result = -result
    # Jacobi symbol (a|n) for odd n > 0.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


@total_ordering
@dataclass(frozen=True)
class RationalPlace:
    """A place of Q: ``prime == 0`` encodes the real place."""
    prime: int

    def __post_init__(self):
        if self.prime != 0 and not is_prime(self.prime):
            raise DomainError(f"{self.prime} is not a prime")

    @classmethod
    def finite(cls, p):
        return cls(p)

    @property
    def is_infinite(self):
        return self.prime == 0

    def __lt__(self, other):
        return self.prime < other.prime

    def __str__(self):
        return "inf" if self.is_infinite else str(self.prime)

    @classmethod
    def parse(cls, text):
        text = str(text).strip().lower()
        if text in ("inf", "infinity", "oo", "∞"):
            return INFINITE
        try:
            p = int(text)
        except ValueError:
            raise DomainError(f"cannot parse place {text!r}") from None
        if p <= 0:
            raise DomainError(f"cannot parse place {text!r}")
        return cls(p)


INFINITE = RationalPlace(0)


@lru_cache(maxsize=4096)
def _place(p):
    return RationalPlace(p)


def _as_place(v):
    if isinstance(v, RationalPlace):
        return v
    return _place(int(v))


def _split_unit(a, p):
    if a % p:
        return 0, a
    v = valuation(a, p)
    return v, a // p ** v


def _legendre(u, p):
    # Euler's criterion; u is a p-adic unit and p an odd prime.
    return 1 if pow(u % p, (p - 1) // 2, p) == 1 else -1


def _hilbert_formula(a, b, p):
    alpha, u = _split_unit(a, p)
    beta, w = _split_unit(b, p)
    if p == 2:
        eps_u = ((u - 1) // 2) % 2
        eps_w = ((w - 1) // 2) % 2
        om_u = ((u * u - 1) // 8) % 2
        om_w = ((w * w - 1) // 8) % 2
        e = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if e % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    lu = _legendre(u, p) if beta % 2 else 1
    lw = _legendre(w, p) if alpha % 2 else 1
    return sign * lu * lw


def _shadow_check_enabled():
    return os.environ.get("QME_SHADOW_CHECK", "").lower() not in ("", "0", "false", "no")


def hilbert_symbol(a: int, b: int, v) -> int:
    """Hilbert symbol (a, b)_v for nonzero integers a, b and a place v of Q.

    ``v`` is a RationalPlace or an int (0 for the real place). With the
    environment variable ``QME_SHADOW_CHECK`` set, every evaluation at 2 is
    cross-checked against the exhaustive solubility search.
    """
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    v = _as_place(v)
    if v.is_infinite:
        return -1 if a < 0 and b < 0 else 1
    value = _hilbert_formula(a, b, v.prime)
    if v.prime == 2 and _shadow_check_enabled():
        expected = hilbert_symbol_oracle(a, b, 2)
        if expected != value:
            raise AssertionError(f"Hilbert symbol ({a},{b})_2: formula {value}, search {expected}")
    return value


def _grid_bits(values, p):
    """Per-value parity bits (v mod 2, eps, t) feeding the grid kernel."""
    alpha, eps, t = [], [], []
    for a in values:
        v, u = _split_unit(int(a), p)
        alpha.append(v & 1)
        if p == 2:
            eps.append(((u - 1) // 2) & 1)
            t.append(((u * u - 1) // 8) & 1)
        else:
            eps.append(0)
            t.append(0 if _legendre(u, p) == 1 else 1)
    return tuple(np.array(x, dtype=np.uint8) for x in (alpha, eps, t))


def hilbert_symbol_grid(a_values, b_values, v) -> np.ndarray:
    """Matrix of (a, b)_v over a_values x b_values, as int8 entries +-1.

    Same formula as ``hilbert_symbol``, split into per-value parity bits
    that a compiled kernel combines pairwise.
    """
    a_values = np.asarray(a_values, dtype=np.int64)
    b_values = np.asarray(b_values, dtype=np.int64)
    if a_values.ndim != 1 or b_values.ndim != 1:
        raise DomainError("hilbert_symbol_grid expects one-dimensional inputs")
    if not (a_values.all() and b_values.all()):
        raise DomainError("Hilbert symbol needs nonzero arguments")
    v = _as_place(v)
    if v.is_infinite:
        neg_a = (a_values < 0).astype(np.uint8)
        neg_b = (b_values < 0).astype(np.uint8)
        zero_a, zero_b = np.zeros_like(neg_a), np.zeros_like(neg_b)
        return _kernels.hilbert_grid(zero_a, neg_a, zero_a, zero_b, neg_b, zero_b, 0)
    p = v.prime
    alpha, eps_a, t_a = _grid_bits(a_values, p)
    beta, eps_b, t_b = _grid_bits(b_values, p)
    c = 0 if p == 2 else (p - 1) // 2
    return _kernels.hilbert_grid(alpha, eps_a, t_a, beta, eps_b, t_b, c)


def _strip_even_power(a, p):
    v = valuation(a, p)
    return a // p ** (v - v % 2), v % 2


def oracle_precision(a: int, b: int, p: int) -> int:
    """Exponent k such that primitive solubility mod p^k decides solubility in Q_p.

    Applied after removing even powers of p from a and b. At 2 this is
    3 + 2*max(v(a), v(b)); at odd p, precision 3 already decides every case.
    """
    if p == 2:
        return 3 + 2 * max(valuation(a, 2) % 2, valuation(b, 2) % 2)
    return 3


def hilbert_symbol_oracle(a: int, b: int, p: int) -> int:
    """Hilbert symbol at a prime p by exhaustive search.

    Looks for a primitive solution of z^2 = a x^2 + b y^2 modulo p^k. A
    primitive solution has x or y a unit (if both are divisible by p so is z),
    and scaling by its inverse sets that coordinate to 1, so the search is
    over the single remaining free coordinate.
    """
    if a == 0 or b == 0:
        raise DomainError("Hilbert symbol needs nonzero arguments")
    a, _ = _strip_even_power(a, p)
    b, _ = _strip_even_power(b, p)
    m = p ** oracle_precision(a, b, p)
    squares = _kernels.square_table(m)
    am, bm = a % m, b % m
    if _kernels.affine_square_hit(am, bm, m, squares):
        return 1
    if _kernels.affine_square_hit(bm, am, m, squares):
        return 1
    return -1


def relevant_places(a: int, b: int):
    """The real place and every prime dividing 2ab."""
    primes = {2}
    primes.update(factorize(abs(a)).primes)
    primes.update(factorize(abs(b)).primes)
    return [INFINITE] + [_place(p) for p in sorted(primes)]


def ramified_places(a: int, b: int):
    return [v for v in relevant_places(a, b) if hilbert_symbol(a, b, v) == -1]
