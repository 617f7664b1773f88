"""Genus-theoretic predictions for the factorization of H_D(X) modulo an odd prime.

Case tags map onto the three branches of the decomposition law for the real
subfield of the Hilbert class field:

* ``split``          -- (D/p) = 1: h/f factors of degree f, f the order of the prime form.
* ``inert_genus``    -- (D/p) = -1 and (-p/q) = 1 for every odd q | D:
  2^(t-1) linear factors, the rest quadratic.
* ``inert_nongenus`` -- (D/p) = -1 and (-p/q) = -1 for some odd q | D: h/2 quadratics.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .discriminant import (  # noqa: F401  (re-exported)
    DiscLike,
    FundamentalDiscriminant,
    PrimeStarFactor,
    is_fundamental,
    make_fundamental,
)
from .errors import DomainError
from .numtheory import kronecker
from .quadforms import ClassGroup, class_group, element_order, prime_form

SPLIT = "split"
INERT_GENUS = "inert_genus"
INERT_NONGENUS = "inert_nongenus"
CASE_TAGS = (SPLIT, INERT_GENUS, INERT_NONGENUS)


@dataclass(frozen=True)
class SplittingPattern:
    """Multiset of irreducible-factor degrees, stored as sorted (degree, count) pairs."""

    entries: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        merged = {}
        for d, k in self.entries:
            if d < 1 or k < 0:
                raise DomainError(f"bad pattern entry ({d}, {k})")
            if k:
                merged[d] = merged.get(d, 0) + k
        object.__setattr__(self, "entries", tuple(sorted(merged.items())))

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "SplittingPattern":
        return cls(tuple((d, 1) for d in degrees))

    @property
    def total_degree(self) -> int:
        return sum(d * k for d, k in self.entries)

    def count(self, degree: int) -> int:
        return dict(self.entries).get(degree, 0)

    @property
    def linear_count(self) -> int:
        return self.count(1)

    def __str__(self):
        return "·".join(f"{d}^{k}" for d, k in self.entries)

    @classmethod
    def parse(cls, text: str) -> "SplittingPattern":
        entries = []
        for term in text.split("·"):
            m = re.fullmatch(r"\s*(\d+)\^(\d+)\s*", term)
            if not m:
                raise DomainError(f"cannot parse pattern term {term!r}")
            entries.append((int(m.group(1)), int(m.group(2))))
        return cls(tuple(entries))

    def to_json(self):
        return [[d, k] for d, k in self.entries]


@dataclass(frozen=True)
class Prediction:
    case_tag: str
    pattern: SplittingPattern
    f_used: Optional[int] = None

    def to_json(self):
        return {"case": self.case_tag, "pattern": str(self.pattern), "f": self.f_used}


def _check_prime(fd: FundamentalDiscriminant, p: int) -> None:
    if p == 2 or p < 2:
        raise DomainError(f"p={p}: the law concerns odd primes only")
    if fd.D % p == 0:
        raise DomainError(f"p={p} is ramified in discriminant {fd.D}")


def stankewicz_criterion(D: DiscLike, p: int) -> bool:
    """True iff (-p/q) = 1 for every odd prime q dividing D (vacuous when N is 1 or 2)."""
    fd = make_fundamental(D)
    _check_prime(fd, p)
    return all(kronecker(-p, q) == 1 for q in fd.odd_primes)


def predict(D: DiscLike, p: int, cg: Optional[ClassGroup] = None) -> Prediction:
    fd = make_fundamental(D)
    _check_prime(fd, p)
    if cg is None:
        cg = class_group(fd)
    h = cg.h
    if kronecker(fd.D, p) == 1:
        f = element_order(prime_form(fd.D, p))
        return Prediction(SPLIT, SplittingPattern(((f, h // f),)), f)
    if stankewicz_criterion(fd, p):
        r1 = fd.genus_count
        return Prediction(INERT_GENUS, SplittingPattern(((1, r1), (2, (h - r1) // 2))))
    return Prediction(INERT_NONGENUS, SplittingPattern(((2, h // 2),)))


def theoretical_density(D: DiscLike, h: int) -> Fraction:
    """Density of primes p for which H_D(X) has a root mod p: 1/(2h) + 1/2^t."""
    fd = make_fundamental(D)
    return Fraction(1, 2 * h) + Fraction(1, 1 << fd.t)


def symbol_product_identity(D: DiscLike, p: int) -> bool:
    """Check that the product of (q*/p) over the prime discriminants equals (D/p)."""
    fd = make_fundamental(D)
    _check_prime(fd, p)
    prod = 1
    for s in fd.stars:
        prod *= kronecker(s.qstar, p)
    return prod == kronecker(fd.D, p)
