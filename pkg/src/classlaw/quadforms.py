"""Positive-definite binary quadratic forms and the class group of a fundamental discriminant."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Tuple

from .discriminant import DiscLike, FundamentalDiscriminant, make_fundamental
from .errors import DomainError
from .numtheory import is_prime, kronecker, sqrt_mod


@dataclass(frozen=True, order=True)
class QuadForm:
    """The form a*x^2 + b*x*y + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_positive_definite(self) -> bool:
        return self.a > 0 and self.disc < 0

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def inverse(self) -> "QuadForm":
        return reduce(QuadForm(self.a, -self.b, self.c))

    def is_ambiguous(self) -> bool:
        """True for reduced forms equal to their own inverse (classes of order <= 2)."""
        return self.b == 0 or self.b == self.a or self.a == self.c

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def principal_form(D: DiscLike) -> QuadForm:
    D = int(D)
    if D % 4 == 0:
        return QuadForm(1, 0, -D // 4)
    return QuadForm(1, 1, (1 - D) // 4)


def reduce(f: QuadForm) -> QuadForm:
    """Gauss reduction to the unique reduced form in the proper equivalence class of f."""
    if not f.is_positive_definite():
        raise DomainError(f"{f} is not positive definite")
    a, b, c = f.a, f.b, f.c
    while True:
        # translate b into (-a, a]
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            c = a * k * k + b * k + c
            b = b + 2 * a * k
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (u, v, d) with u*a + v*b = d = gcd(a, b) >= 0."""
    u0, u1, v0, v1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        return -u0, -v0, -a
    return u0, v0, a


def compose(f1: QuadForm, f2: QuadForm) -> QuadForm:
    """Dirichlet composition of two forms of equal discriminant, returned reduced."""
    D = f1.disc
    if f2.disc != D:
        raise DomainError(f"cannot compose {f1} (D={D}) with {f2} (D={f2.disc})")
    if f1.a > f2.a:
        f1, f2 = f2, f1
    a1, b1, _ = f1
    a2, b2, c2 = f2
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        y1, _, d = _xgcd(a2, a1)
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        x2, v, d1 = _xgcd(s, d)
        y2 = -v
    v1 = a1 // d1
    v2 = a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (b3 * b3 - D) // (4 * a3)
    return reduce(QuadForm(a3, b3, c3))


def power(f: QuadForm, k: int) -> QuadForm:
    result = principal_form(f.disc)
    base = reduce(f)
    if k < 0:
        base, k = base.inverse(), -k
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def reduced_forms(D: int) -> List[QuadForm]:
    """Every reduced primitive form of discriminant D < 0, sorted by (a, b)."""
    forms = []
    a_max = math.isqrt(-D // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) != 1:
                continue
            forms.append(QuadForm(a, b, c))
    forms.sort(key=lambda f: (f.a, abs(f.b), -f.b))
    return forms


@dataclass(frozen=True)
class ClassGroup:
    disc: FundamentalDiscriminant
    forms: Tuple[QuadForm, ...]
    _index: Dict[QuadForm, int] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {f: i for i, f in enumerate(self.forms)})

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def identity(self) -> QuadForm:
        return principal_form(self.disc.D)

    def __len__(self):
        return len(self.forms)

    def __iter__(self) -> Iterator[QuadForm]:
        return iter(self.forms)

    def __contains__(self, f) -> bool:
        return f in self._index

    def index(self, f: QuadForm) -> int:
        return self._index[f]


def class_group(D: DiscLike) -> ClassGroup:
    fd = make_fundamental(D)
    return ClassGroup(fd, tuple(reduced_forms(fd.D)))


def class_number(D: DiscLike) -> int:
    return class_group(D).h


def prime_form(D: DiscLike, p: int) -> QuadForm:
    """Reduced form of the prime ideal above a split odd prime p.

    Uses the smallest b in (0, 2p) with b = D (mod 2) and b^2 = D (mod 4p).
    """
    D = int(D)
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"prime_form needs an odd prime, got {p}")
    if kronecker(D, p) != 1:
        raise DomainError(f"p={p} does not split in discriminant {D}")
    r = sqrt_mod(D, p)
    candidates = []
    for s in (r, p - r):
        candidates.append(s if (s - D) % 2 == 0 else s + p)
    b = min(candidates)
    return reduce(QuadForm(p, b, (b * b - D) // (4 * p)))


def element_order(f: QuadForm) -> int:
    """Least k >= 1 with f^k principal."""
    one = principal_form(f.disc)
    g = reduce(f)
    k = 1
    while g != one:
        g = compose(g, f)
        k += 1
    return k
