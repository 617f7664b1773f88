"""Exact integer primitives: Kronecker symbol, primality, factoring, square roots mod p."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import DomainError

PRIMALITY_LIMIT = 1 << 64
TRIAL_DIVISION_LIMIT = 10**6

# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class PrimeFactorization:
    value: int
    factors: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for q, e in self.factors:
            if q <= last or e < 1:
                raise DomainError(f"malformed factorization of {self.value}")
            last = q
            prod *= q**e
        if prod != self.value:
            raise DomainError(f"factors do not multiply to {self.value}")

    @property
    def primes(self) -> List[int]:
        return [q for q, _ in self.factors]

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n).

    For n = -1 the convention (a/-1) = -1 if a < 0 else 1 is used. Only
    |n| prime or 1 is consumed by the rest of the package.
    """
    if n == 0:
        raise DomainError("kronecker(a, 0) is undefined")
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        v = (n & -n).bit_length() - 1
        n >>= v
        if v & 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd positive n
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


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n >= PRIMALITY_LIMIT:
        raise DomainError(f"primality test supports n < 2^64, got {n}")
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, c: int) -> Optional[int]:
    # Brent's cycle variant of Pollard rho with f(x) = x^2 + c.
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
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
    return g if g != n else None


def _split(n: int, out: List[int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out.append(n)
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, out)
        _split(r, out)
        return
    c = 1
    while True:
        d = _brent(n, c)
        if d is not None:
            break
        c += 1
    _split(d, out)
    _split(n // d, out)


def factorize(n: int) -> PrimeFactorization:
    """Trial division up to 10^6, then Pollard-Brent rho on the cofactor."""
    if n < 1:
        raise DomainError(f"factorize expects n >= 1, got {n}")
    value = n
    counts = {}
    for q in (2, 3):
        while n % q == 0:
            counts[q] = counts.get(q, 0) + 1
            n //= q
    q, step = 5, 2
    while q <= TRIAL_DIVISION_LIMIT and q * q <= n:
        while n % q == 0:
            counts[q] = counts.get(q, 0) + 1
            n //= q
        q += step
        step = 6 - step
    if n > 1:
        if q * q > n:
            counts[n] = counts.get(n, 0) + 1
        else:
            rest: List[int] = []
            _split(n, rest)
            for r in rest:
                counts[r] = counts.get(r, 0) + 1
    return PrimeFactorization(value, tuple(sorted(counts.items())))


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Smaller square root of a modulo the odd prime p, or None if a is a non-residue."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"sqrt_mod needs an odd prime modulus, got {p}")
    a %= p
    if a == 0:
        return 0
    if kronecker(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while kronecker(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def primes_in_range(lo: int, hi: int) -> List[int]:
    if lo > hi:
        raise DomainError(f"empty range [{lo}, {hi}]")
    lo = max(lo, 2)
    if hi < lo:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(hi) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, hi + 1, i)))
    return [i for i in range(lo, hi + 1) if sieve[i]]


def odd_primes_upto(hi: int) -> List[int]:
    return primes_in_range(3, hi) if hi >= 3 else []


def is_squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(abs(n)))
