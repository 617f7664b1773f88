"""Dense univariate polynomials over F_p (p odd): gcd, powering, DDF and root finding.

Coefficient lists are ascending in degree with no trailing zeros; [] is the
zero polynomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError
from .genus import SplittingPattern
from .numtheory import is_prime

DEFAULT_SEED = 0x5EED


@dataclass(frozen=True)
class FpPoly:
    p: int
    coeffs: Tuple[int, ...]

    @classmethod
    def make(cls, coeffs: Sequence[int], p: int) -> "FpPoly":
        return cls(p, tuple(_trim([c % p for c in coeffs])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        _same_field(self, other)
        return FpPoly(self.p, tuple(_mul(list(self.coeffs), list(other.coeffs), self.p)))

    def __str__(self):
        from .classpoly import format_poly

        return format_poly(self.coeffs)


def _same_field(f: FpPoly, g: FpPoly) -> None:
    if f.p != g.p:
        raise DomainError(f"modulus mismatch: {f.p} vs {g.p}")


def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _sub(a: List[int], b: List[int], p: int) -> List[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _mul(a: List[int], b: List[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _divmod(a: List[int], b: List[int], p: int) -> Tuple[List[int], List[int]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(a) <= db:
        return [], a
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] * inv % p
        if c:
            q[k - db] = c
            for j in range(db + 1):
                a[k - db + j] = (a[k - db + j] - c * b[j]) % p
    return _trim(q), _trim(a[:db])


def _monic(a: List[int], p: int) -> List[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a: List[int], b: List[int], p: int) -> List[int]:
    while b:
        a, b = b, _divmod(a, b, p)[1]
    return _monic(a, p)


def _powmod(base: List[int], e: int, mod: List[int], p: int) -> List[int]:
    result = [1]
    base = _divmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _divmod(_mul(result, base, p), mod, p)[1]
        e >>= 1
        if e:
            base = _divmod(_mul(base, base, p), mod, p)[1]
    return _divmod(result, mod, p)[1]


def _derivative(a: List[int], p: int) -> List[int]:
    return _trim([i * a[i] % p for i in range(1, len(a))])


def _check_modulus(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError(f"modulus must be an odd prime, got {p}")


def reduce_mod(P, p: int) -> FpPoly:
    """Reduce an integer polynomial (ClassPolynomial or coefficient list) modulo p."""
    _check_modulus(p)
    coeffs = getattr(P, "coeffs", P)
    return FpPoly.make(coeffs, p)


def poly_gcd(f: FpPoly, g: FpPoly) -> FpPoly:
    _same_field(f, g)
    return FpPoly(f.p, tuple(_gcd(list(f.coeffs), list(g.coeffs), f.p)))


def poly_divmod(f: FpPoly, g: FpPoly) -> Tuple[FpPoly, FpPoly]:
    _same_field(f, g)
    q, r = _divmod(list(f.coeffs), list(g.coeffs), f.p)
    return FpPoly(f.p, tuple(q)), FpPoly(f.p, tuple(r))


def powmod_x(e: int, f: FpPoly) -> FpPoly:
    """X^e mod f by square-and-multiply."""
    if f.degree < 1:
        raise DomainError("powmod_x needs a modulus of degree >= 1")
    return FpPoly(f.p, tuple(_powmod([0, 1], e, list(f.coeffs), f.p)))


def derivative(f: FpPoly) -> FpPoly:
    return FpPoly(f.p, tuple(_derivative(list(f.coeffs), f.p)))


def is_squarefree(f: FpPoly) -> bool:
    if f.degree < 1:
        raise DomainError("is_squarefree needs degree >= 1")
    return len(_gcd(list(f.coeffs), _derivative(list(f.coeffs), f.p), f.p)) == 1


def _ddf_parts(f: FpPoly) -> List[Tuple[int, List[int]]]:
    """Distinct-degree stages: (d, product of all degree-d irreducible factors)."""
    if f.degree < 1:
        raise DomainError("ddf needs degree >= 1")
    if not is_squarefree(f):
        raise DomainError("ddf needs a squarefree polynomial")
    p = f.p
    rest = _monic(list(f.coeffs), p)
    parts = []
    xq = [0, 1]  # X^(p^d) mod rest
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        xq = _powmod(xq, p, rest, p)
        g = _gcd(rest, _sub(xq, [0, 1], p), p)
        if len(g) > 1:
            parts.append((d, g))
            rest = _divmod(rest, g, p)[0]
            xq = _divmod(xq, rest, p)[1]
    if len(rest) > 1:
        parts.append((len(rest) - 1, rest))
    return parts


def ddf(f: FpPoly) -> SplittingPattern:
    """Splitting pattern of a squarefree polynomial via distinct-degree factorization."""
    return SplittingPattern(tuple((d, (len(g) - 1) // d) for d, g in _ddf_parts(f)))


def edf(g: FpPoly, d: int, rng: Optional[random.Random] = None) -> List[FpPoly]:
    """Cantor-Zassenhaus equal-degree splitting of g, a product of distinct degree-d irreducibles."""
    p = g.p
    rng = rng if rng is not None else random.Random(DEFAULT_SEED)
    n = g.degree
    if n % d:
        raise DomainError(f"degree {n} is not a multiple of {d}")
    exp = (p**d - 1) // 2
    pending = [_monic(list(g.coeffs), p)]
    done = []
    while pending:
        h = pending.pop()
        if len(h) - 1 == d:
            done.append(h)
            continue
        while True:
            a = [rng.randrange(p) for _ in range(len(h) - 1)]
            a = _trim(a)
            if len(a) < 2:
                continue
            b = _sub(_powmod(a, exp, h, p), [1], p)
            u = _gcd(h, b, p)
            if 1 < len(u) < len(h):
                pending.append(u)
                pending.append(_divmod(h, u, p)[0])
                break
    done.sort()
    return [FpPoly(p, tuple(h)) for h in done]


def factor_squarefree(f: FpPoly, seed: int = DEFAULT_SEED) -> List[FpPoly]:
    """Monic irreducible factors of a squarefree f, sorted by (degree, coefficients)."""
    rng = random.Random(seed)
    out = []
    for d, g in _ddf_parts(f):
        out.extend(edf(FpPoly(f.p, tuple(g)), d, rng))
    out.sort(key=lambda h: (h.degree, h.coeffs))
    return out


def roots(f: FpPoly, seed: int = DEFAULT_SEED) -> List[int]:
    """Sorted roots in F_p of a squarefree f: gcd with X^p - X, then equal-degree splitting."""
    p = f.p
    fc = _monic(list(f.coeffs), p)
    if len(fc) < 2:
        return []
    xp = _powmod([0, 1], p, fc, p)
    g = _gcd(fc, _sub(xp, [0, 1], p), p)
    if len(g) < 2:
        return []
    linears = edf(FpPoly(p, tuple(g)), 1, random.Random(seed))
    return sorted((-h.coeffs[0]) % p for h in linears)
