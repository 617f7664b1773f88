"""Predict-versus-factor verification of the decomposition law, sweeps, and density runs."""

from __future__ import annotations

import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

from . import classpoly
from .classpoly import ClassPolynomial, hilbert_class_poly
from .discriminant import DiscLike, FundamentalDiscriminant, make_fundamental
from .errors import DomainError, IntegrityError
from .ffpoly import ddf, is_squarefree, reduce_mod
from .genus import Prediction, SplittingPattern, predict, theoretical_density
from .numtheory import odd_primes_upto
from .quadforms import class_group

log = logging.getLogger(__name__)

MATCH = "match"
MISMATCH = "mismatch"
SKIPPED_NONSQUAREFREE = "skipped_nonsquarefree"
SKIPPED_RAMIFIED = "skipped_ramified"

CHECKSUM_MODULUS = (1 << 61) - 1


# -- cache -----------------------------------------------------------------


class ClassPolyCache:
    """One text record per discriminant, ``hd_<|D|>.txt``, replaced atomically."""

    def __init__(self, directory):
        self.directory = Path(directory)

    def path(self, D: int) -> Path:
        return self.directory / f"hd_{abs(int(D))}.txt"

    def store(self, P: ClassPolynomial) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        D = P.disc.D
        text = (
            f"D {D}\n"
            f"h {P.degree}\n"
            f"coeffs {' '.join(str(c) for c in P.coeffs)}\n"
            f"check {sum(P.coeffs) % CHECKSUM_MODULUS}\n"
        )
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".hd_", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, self.path(D))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return self.path(D)

    def load(self, D: DiscLike) -> Optional[ClassPolynomial]:
        fd = make_fundamental(D)
        path = self.path(fd.D)
        if not path.exists():
            return None
        lines = path.read_text().splitlines()
        try:
            fields = dict(line.split(" ", 1) for line in lines)
            rec_D = int(fields["D"])
            h = int(fields["h"])
            coeffs = tuple(int(c) for c in fields["coeffs"].split())
            check = int(fields["check"])
        except (ValueError, KeyError) as exc:
            raise IntegrityError(f"D={fd.D}: unreadable cache record {path}") from exc
        if len(lines) != 4 or rec_D != fd.D:
            raise IntegrityError(f"D={fd.D}: cache record {path} is malformed")
        if sum(coeffs) % CHECKSUM_MODULUS != check:
            raise IntegrityError(f"D={fd.D}: checksum mismatch in {path}")
        expected_h = class_group(fd).h
        if h != expected_h or len(coeffs) != expected_h + 1:
            raise IntegrityError(f"D={fd.D}: cached degree {len(coeffs) - 1} but h(D) = {expected_h}")
        if coeffs[-1] != 1:
            raise IntegrityError(f"D={fd.D}: cached polynomial is not monic")
        return ClassPolynomial(fd, coeffs)


def get_class_poly(
    D: DiscLike, cache: Optional[ClassPolyCache] = None, max_bits: int = classpoly.DEFAULT_MAX_BITS
) -> ClassPolynomial:
    fd = make_fundamental(D)
    if cache is not None:
        P = cache.load(fd)
        if P is not None:
            return P
    P = hilbert_class_poly(fd, max_bits=max_bits)
    if cache is not None:
        cache.store(P)
    return P


# -- single checks ---------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    D: int
    p: int
    status: str
    prediction: Optional[Prediction] = None
    actual: Optional[SplittingPattern] = None

    def to_json(self):
        return {
            "D": self.D,
            "p": self.p,
            "status": self.status,
            "prediction": self.prediction.to_json() if self.prediction else None,
            "actual": str(self.actual) if self.actual else None,
        }


def _verify(fd: FundamentalDiscriminant, p: int, P: ClassPolynomial, cg) -> VerificationReport:
    if fd.D % p == 0:
        return VerificationReport(fd.D, p, SKIPPED_RAMIFIED)
    f = reduce_mod(P, p)
    if not is_squarefree(f):
        return VerificationReport(fd.D, p, SKIPPED_NONSQUAREFREE)
    pred = predict(fd, p, cg)
    actual = ddf(f)
    status = MATCH if pred.pattern == actual else MISMATCH
    return VerificationReport(fd.D, p, status, pred, actual)


def verify_one(
    D: DiscLike, p: int, cache: Optional[ClassPolyCache] = None, P: Optional[ClassPolynomial] = None
) -> VerificationReport:
    fd = make_fundamental(D)
    if p % 2 == 0:
        raise DomainError(f"p={p}: the law concerns odd primes only")
    if P is None:
        P = get_class_poly(fd, cache)
    return _verify(fd, p, P, class_group(fd))


# -- sweeps ----------------------------------------------------------------


@dataclass
class SweepResult:
    total: int = 0
    matches: int = 0
    mismatches: int = 0
    skipped_ramified: int = 0
    skipped_nonsquarefree: int = 0
    mismatch_reports: List[VerificationReport] = field(default_factory=list)

    @property
    def skips(self) -> int:
        return self.skipped_ramified + self.skipped_nonsquarefree

    def to_json(self):
        return {
            "total": self.total,
            "matches": self.matches,
            "mismatches": self.mismatches,
            "skipped_ramified": self.skipped_ramified,
            "skipped_nonsquarefree": self.skipped_nonsquarefree,
            "mismatch_reports": [r.to_json() for r in self.mismatch_reports],
        }


def _verify_chunk(args) -> List[VerificationReport]:
    D, coeffs, primes = args
    fd = make_fundamental(D)
    P = ClassPolynomial(fd, tuple(coeffs))
    cg = class_group(fd)
    return [_verify(fd, p, P, cg) for p in primes]


def _fan_out(func, tasks: Sequence, workers: int) -> List:
    if workers <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, tasks))


def _chunks(seq: Sequence[int], size: int):
    for i in range(0, len(seq), size):
        yield seq[i : i + size]


def sweep_reports(
    D_set: Iterable[DiscLike],
    p_max: int,
    cache: Optional[ClassPolyCache] = None,
    workers: int = 1,
) -> List[VerificationReport]:
    """Every report for (D, odd p <= p_max), sorted by (|D|, p)."""
    fds = sorted({make_fundamental(D) for D in D_set}, key=lambda fd: -fd.D)
    primes = odd_primes_upto(p_max)
    tasks = []
    for fd in fds:
        P = get_class_poly(fd, cache)
        for chunk in _chunks(primes, 64):
            tasks.append((fd.D, P.coeffs, chunk))
    reports = [r for part in _fan_out(_verify_chunk, tasks, workers) for r in part]
    reports.sort(key=lambda r: (-r.D, r.p))
    return reports


def aggregate(reports: Iterable[VerificationReport]) -> SweepResult:
    res = SweepResult()
    for r in reports:
        res.total += 1
        if r.status == MATCH:
            res.matches += 1
        elif r.status == MISMATCH:
            res.mismatches += 1
            res.mismatch_reports.append(r)
        elif r.status == SKIPPED_RAMIFIED:
            res.skipped_ramified += 1
        else:
            res.skipped_nonsquarefree += 1
    return res


def sweep(
    D_set: Iterable[DiscLike],
    p_max: int,
    cache: Optional[ClassPolyCache] = None,
    workers: int = 1,
) -> SweepResult:
    if p_max < 3:
        raise DomainError(f"p_max={p_max}: sweep needs p_max >= 3")
    return aggregate(sweep_reports(D_set, p_max, cache, workers))


# -- density ---------------------------------------------------------------


@dataclass(frozen=True)
class DensityReport:
    D: int
    x_max: int
    primes_tested: int
    primes_with_root: int
    skipped: int
    disagreements: int
    theoretical: Fraction

    @property
    def empirical(self) -> Fraction:
        if not self.primes_tested:
            return Fraction(0)
        return Fraction(self.primes_with_root, self.primes_tested)

    @property
    def abs_deviation(self) -> float:
        return float(abs(self.empirical - self.theoretical))

    def to_json(self):
        return {
            "D": self.D,
            "x_max": self.x_max,
            "primes_tested": self.primes_tested,
            "primes_with_root": self.primes_with_root,
            "skipped": self.skipped,
            "disagreements": self.disagreements,
            "empirical": str(self.empirical),
            "theoretical": str(self.theoretical),
            "abs_deviation": round(self.abs_deviation, 12),
        }


def _density_chunk(args) -> Tuple[int, int, int, int]:
    D, coeffs, primes = args
    fd = make_fundamental(D)
    cg = class_group(fd)
    tested = with_root = skipped = disagree = 0
    for p in primes:
        if fd.D % p == 0:
            skipped += 1
            continue
        f = reduce_mod(coeffs, p)
        if not is_squarefree(f):
            skipped += 1
            continue
        tested += 1
        predicted = predict(fd, p, cg).pattern.linear_count > 0
        actual = ddf(f).linear_count > 0
        if predicted != actual:
            disagree += 1
        if actual:
            with_root += 1
    return tested, with_root, skipped, disagree


def density_experiment(
    D: DiscLike, x_max: int, cache: Optional[ClassPolyCache] = None, workers: int = 1
) -> DensityReport:
    """Fraction of odd primes p <= x_max (skips excluded) at which H_D has a root mod p."""
    fd = make_fundamental(D)
    if x_max < 100:
        raise DomainError(f"x_max={x_max}: density experiment needs x_max >= 100")
    P = get_class_poly(fd, cache)
    tasks = [(fd.D, P.coeffs, c) for c in _chunks(odd_primes_upto(x_max), 2048)]
    totals = [0, 0, 0, 0]
    for part in _fan_out(_density_chunk, tasks, workers):
        for i, v in enumerate(part):
            totals[i] += v
    tested, with_root, skipped, disagree = totals
    theo = theoretical_density(fd, class_group(fd).h)
    return DensityReport(fd.D, x_max, tested, with_root, skipped, disagree, theo)

