"""Negative fundamental discriminants and their signed prime-discriminant factors."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from .errors import ValidationError
from .numtheory import factorize


@dataclass(frozen=True)
class PrimeStarFactor:
    q: int
    qstar: int


@dataclass(frozen=True)
class FundamentalDiscriminant:
    """A validated D < 0 with kernel N (-N is the squarefree part of D).

    ``stars`` lists the prime discriminants q* whose product is D, sorted by q;
    ``t`` is the number of distinct primes dividing D.
    """

    D: int
    N: int
    t: int
    stars: Tuple[PrimeStarFactor, ...]

    def __int__(self):
        return self.D

    def __index__(self):
        return self.D

    @property
    def odd_primes(self) -> Tuple[int, ...]:
        return tuple(s.q for s in self.stars if s.q != 2)

    @property
    def genus_count(self) -> int:
        """2^(t-1): the number of genera, and the size of the 2-torsion of the class group."""
        return 1 << (self.t - 1)

    def __str__(self):
        return str(self.D)


DiscLike = Union[int, FundamentalDiscriminant]


def _squarefree(n: int) -> bool:
    return all(e == 1 for _, e in factorize(n))


def make_fundamental(D: DiscLike) -> FundamentalDiscriminant:
    if isinstance(D, FundamentalDiscriminant):
        return D
    D = int(D)
    if D >= 0:
        raise ValidationError(f"D={D}: discriminant must be negative")
    if D % 4 == 1:
        if not _squarefree(-D):
            raise ValidationError(f"D={D}: D = 1 (mod 4) but not squarefree")
        N = -D
    elif D % 4 == 0:
        m = D // 4
        if m % 4 not in (2, 3):
            raise ValidationError(f"D={D}: D/4 = {m} is not 2 or 3 (mod 4)")
        if not _squarefree(-m):
            raise ValidationError(f"D={D}: D/4 = {m} is not squarefree")
        N = -m
    else:
        raise ValidationError(f"D={D}: D = {D % 4} (mod 4) is never a discriminant")

    stars = []
    odd_product = 1
    for q, _ in factorize(N):
        if q == 2:
            continue
        qstar = q if q % 4 == 1 else -q
        stars.append(PrimeStarFactor(q, qstar))
        odd_product *= qstar
    if D % 2 == 0:
        two_star = D // odd_product
        if two_star not in (-4, 8, -8):
            raise ValidationError(f"D={D}: 2-part {two_star} is not a prime discriminant")
        stars.insert(0, PrimeStarFactor(2, two_star))
    elif odd_product != D:
        raise ValidationError(f"D={D}: prime discriminants multiply to {odd_product}")
    return FundamentalDiscriminant(D, N, len(stars), tuple(stars))


def is_fundamental(D: int) -> bool:
    try:
        make_fundamental(D)
    except ValidationError:
        return False
    return True


def fundamental_discriminants(lo: int, hi: int):
    """All fundamental discriminants in [lo, hi] (both negative), ordered by increasing |D|."""
    return [make_fundamental(D) for D in range(hi, lo - 1, -1) if is_fundamental(D)]
