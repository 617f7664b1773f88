import math

import pytest
from hypothesis import given, strategies as st

from classlaw.errors import DomainError
from classlaw.numtheory import (
    PrimeFactorization,
    factorize,
    is_prime,
    kronecker,
    primes_in_range,
    sqrt_mod,
)

from oracles import is_prime_trial, jacobi_via_factoring, legendre_bruteforce, squares_mod

SMALL_ODD_PRIMES = [p for p in range(3, 200) if is_prime_trial(p)]


@pytest.mark.parametrize(
    "a, n, expected",
    [(-15, 11, -1), (7, 1, 1), (-123, 1, 1), (-4, 2, 0), (-11, 3, 1), (0, 1, 1), (2, 7, 1), (2, 3, -1)],
)
def test_kronecker_examples(a, n, expected):
    assert kronecker(a, n) == expected


def test_kronecker_zero_modulus():
    with pytest.raises(DomainError):
        kronecker(3, 0)


def test_kronecker_matches_square_search():
    for p in SMALL_ODD_PRIMES:
        for a in range(p):
            assert kronecker(a, p) == legendre_bruteforce(a, p)


def test_kronecker_jacobi_oracle():
    for n in range(1, 400, 2):
        for a in range(-30, 31):
            assert kronecker(a, n) == jacobi_via_factoring(a, n)


def test_kronecker_at_two():
    # (a/2) depends on a mod 8: +1 for 1,7 and -1 for 3,5
    for a in range(-40, 40):
        expected = 0 if a % 2 == 0 else (1 if a % 8 in (1, 7) else -1)
        assert kronecker(a, 2) == expected


def test_kronecker_negative_modulus_convention():
    assert kronecker(-5, -1) == -1
    assert kronecker(5, -1) == 1
    assert kronecker(-5, -7) == -kronecker(-5, 7)


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6), st.integers(1, 10**5))
def test_kronecker_multiplicative_in_numerator(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-10**6, 10**6), st.integers(1, 3000), st.integers(1, 3000))
def test_kronecker_multiplicative_in_denominator(a, m, n):
    assert kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n)


@given(st.integers(-10**9, 10**9), st.sampled_from(SMALL_ODD_PRIMES))
def test_kronecker_periodic(a, p):
    assert kronecker(a, p) == kronecker(a % p, p)


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_kronecker_zero_iff_common_factor(a, n):
    assert (kronecker(a, n) == 0) == (math.gcd(a, n) != 1)


def test_is_prime_examples():
    assert is_prime(1) is False
    assert is_prime(2) is True
    assert is_prime(191025) is False
    assert is_prime(2**61 - 1) is True
    assert is_prime((2**32 + 15) * (2**31 - 1)) is False


def test_is_prime_against_trial_division():
    for n in range(1, 20000):
        assert is_prime(n) == is_prime_trial(n), n


def test_is_prime_strong_pseudoprimes():
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321,
              3825123056546413051):
        assert not is_prime(n)


def test_is_prime_rejects_beyond_64_bits():
    with pytest.raises(DomainError):
        is_prime(2**64 + 13)


@pytest.mark.parametrize("n, factors", [(15, ((3, 1), (5, 1))), (1, ()), (20, ((2, 2), (5, 1)))])
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors


def test_factorize_roundtrip_range():
    for n in range(1, 10**6 + 1):
        fac = factorize(n)
        prod = 1
        for q, e in fac:
            prod *= q**e
        assert prod == n


def test_factorize_beyond_trial_division():
    p, q = 1000003, 998244353
    assert factorize(p * q).factors == ((p, 1), (q, 1))
    assert factorize(4294967291 * 4294967279).factors == ((4294967279, 1), (4294967291, 1))
    assert factorize(1000003**2 * 7).factors == ((7, 1), (1000003, 2))


def test_factorization_validation():
    with pytest.raises(DomainError):
        PrimeFactorization(12, ((2, 1), (3, 1)))


@pytest.mark.parametrize("a, p, expected", [(2, 7, 3), (0, 7, 0), (3, 7, None), (14, 7, 0)])
def test_sqrt_mod_examples(a, p, expected):
    assert sqrt_mod(a, p) == expected


def test_sqrt_mod_rejects_bad_modulus():
    for p in (2, 9, 15, 1):
        with pytest.raises(DomainError):
            sqrt_mod(1, p)


def test_sqrt_mod_exhaustive_small():
    for p in SMALL_ODD_PRIMES:
        sq = squares_mod(p)
        for a in range(p):
            r = sqrt_mod(a, p)
            assert (r is not None) == (a in sq)
            if r is not None:
                assert r * r % p == a and r <= p - r


@given(st.integers(0, 10**12), st.sampled_from([10009, 65537, 998244353, 2**61 - 1, 1000000007]))
def test_sqrt_mod_property(a, p):
    r = sqrt_mod(a, p)
    assert (r is not None) == (kronecker(a, p) >= 0)
    if r is not None:
        assert r * r % p == a % p


def test_primes_in_range():
    assert primes_in_range(3, 11) == [3, 5, 7, 11]
    assert primes_in_range(14, 16) == []
    assert primes_in_range(2, 2) == [2]
    assert primes_in_range(-5, 1) == []
    assert len(primes_in_range(1, 10**5)) == 9592
    with pytest.raises(DomainError):
        primes_in_range(5, 4)
