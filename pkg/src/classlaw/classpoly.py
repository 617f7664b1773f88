"""Hilbert class polynomials from high-precision values of the j-function at CM points."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import mpmath
from mpmath import mpc, mpf

from .discriminant import DiscLike, FundamentalDiscriminant, make_fundamental
from .errors import PrecisionError, ResourceError
from .quadforms import ClassGroup, QuadForm, class_group

MAX_ABS_DISC = 10**6
DEFAULT_MAX_BITS = 1 << 18
MAX_RETRIES = 3
ROUNDING_TOLERANCE = 0.25
_GUARD_BITS = 32


@dataclass(frozen=True)
class ClassPolynomial:
    """Monic integer polynomial, coefficients in ascending degree."""

    disc: FundamentalDiscriminant
    coeffs: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        return format_poly(self.coeffs)


def format_poly(coeffs: Sequence[int], var: str = "x") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        if not terms:
            terms.append(body if sign == "+" else f"-{body}")
        else:
            terms.append(f"{sign} {body}")
    return " ".join(terms) if terms else "0"


@dataclass(frozen=True)
class CMPoint:
    form: QuadForm
    tau: mpc


def cm_point(form: QuadForm) -> CMPoint:
    """tau = (-b + i*sqrt|D|) / (2a) in the upper half plane, at the current mpmath precision."""
    D = form.disc
    return CMPoint(form, mpc(-form.b, mpmath.sqrt(-D)) / (2 * form.a))


def precision_bound(D: DiscLike, forms: Optional[ClassGroup] = None) -> int:
    """Working precision in bits: log2 of the product of root sizes plus a safety margin."""
    fd = make_fundamental(D)
    if forms is None:
        forms = class_group(fd)
    inv_sum = sum(1.0 / f.a for f in forms)
    height = math.pi * math.sqrt(-fd.D) * inv_sum / math.log(2)
    return int(math.ceil(height)) + 10 * len(forms) + 64


def j_invariant(tau, bits: int, max_bits: int = DEFAULT_MAX_BITS) -> mpc:
    """j(tau) = E4(q)^3 / Delta(q), q = exp(2*pi*i*tau), to relative error below 2^-bits.

    Delta = q * prod(1 - q^n)^24 with the product taken from the pentagonal-number
    series; E4 = 1 + 240 * sum n^3 q^n / (1 - q^n).
    """
    if bits > max_bits:
        raise ResourceError(f"requested {bits} bits exceeds the configured maximum {max_bits}")
    with mpmath.workprec(bits + _GUARD_BITS):
        tau = mpc(tau)
        q = mpmath.exp(2j * mpmath.pi * tau)
        eps = mpf(2) ** (-bits - 8)

        # Euler product via pentagonal numbers: sum_k (-1)^k q^{k(3k-1)/2}, k in Z.
        eta = mpc(1)
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            t = q**g1 * (1 + q**k)
            if k & 1:
                eta -= t
            else:
                eta += t
            if abs(t) < eps * abs(eta):
                break
            k += 1

        lam = mpc(0)
        qn = q
        n = 1
        while True:
            term = n**3 * qn / (1 - qn)
            lam += term
            if abs(term) < eps * (1 + 240 * abs(lam)):
                break
            n += 1
            qn *= q
        e4 = 1 + 240 * lam
        delta = q * eta**24
        return e4**3 / delta


def _poly_mul(a: List, b: List) -> List:
    out = [mpf(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def cm_values(cg: ClassGroup, bits: int, max_bits: int = DEFAULT_MAX_BITS):
    """j values for each reduced form, paired: list of (form, j, paired_with_inverse)."""
    out = []
    with mpmath.workprec(bits + _GUARD_BITS):
        for f in cg:
            if f.b < 0:
                continue
            j = j_invariant(cm_point(f).tau, bits, max_bits)
            out.append((f, j, not f.is_ambiguous()))
    return out


def _expand(cg: ClassGroup, bits: int, max_bits: int) -> List[mpf]:
    with mpmath.workprec(bits + _GUARD_BITS):
        poly = [mpf(1)]
        tol = mpf(2) ** (-(bits // 2))
        for f, j, paired in cm_values(cg, bits, max_bits):
            if paired:
                poly = _poly_mul(poly, [abs(j) ** 2, -2 * j.real, mpf(1)])
            else:
                # ambiguous classes are fixed by complex conjugation: j must be real
                if abs(j.imag) > tol * max(1, abs(j)):
                    raise PrecisionError(f"j at ambiguous form {f} has imaginary part {j.imag}")
                poly = _poly_mul(poly, [-j.real, mpf(1)])
        return poly


def expand_naive(cg: ClassGroup, bits: int, max_bits: int = DEFAULT_MAX_BITS) -> List[mpc]:
    """Product of (X - j) over every form with complex arithmetic, one j per form."""
    with mpmath.workprec(bits + _GUARD_BITS):
        poly = [mpc(1)]
        for f in cg:
            j = j_invariant(cm_point(f).tau, bits, max_bits)
            new = [mpc(0)] * (len(poly) + 1)
            for i, c in enumerate(poly):
                new[i + 1] += c
                new[i] -= j * c
            poly = new
        return poly


def _round_all(poly: Sequence[mpf], bits: int) -> Optional[Tuple[int, ...]]:
    out = []
    with mpmath.workprec(bits + _GUARD_BITS):
        for c in poly:
            n = int(mpmath.nint(c))
            if abs(c - n) >= ROUNDING_TOLERANCE:
                return None
            out.append(n)
    return tuple(out)


def hilbert_class_poly(
    D: DiscLike,
    bits: Optional[int] = None,
    max_bits: int = DEFAULT_MAX_BITS,
) -> ClassPolynomial:
    fd = make_fundamental(D)
    if -fd.D > MAX_ABS_DISC:
        raise ResourceError(f"|D| = {-fd.D} exceeds the supported maximum {MAX_ABS_DISC}")
    cg = class_group(fd)
    if bits is None:
        bits = precision_bound(fd, cg)
    for _ in range(MAX_RETRIES + 1):
        coeffs = _round_all(_expand(cg, bits, max_bits), bits)
        if coeffs is not None:
            if coeffs[-1] != 1 or len(coeffs) != cg.h + 1:
                raise PrecisionError(f"D={fd.D}: expansion is not monic of degree {cg.h}")
            return ClassPolynomial(fd, coeffs)
        bits *= 2
    raise PrecisionError(f"D={fd.D}: coefficients failed to round after {MAX_RETRIES} retries")
