"""Exit criteria. Each test records one PASS/FAIL line in the terminal summary."""

import io
import json
from contextlib import redirect_stdout
from fractions import Fraction

import pytest

from classlaw.classpoly import hilbert_class_poly, precision_bound
from classlaw.cli import main
from classlaw.discriminant import fundamental_discriminants
from classlaw.ffpoly import ddf, is_squarefree, reduce_mod, roots
from classlaw.genus import INERT_GENUS, SplittingPattern, stankewicz_criterion, symbol_product_identity
from classlaw.lawcheck import MATCH, MISMATCH, SKIPPED_NONSQUAREFREE, density_experiment, sweep_reports
from classlaw.numtheory import kronecker, primes_in_range
from classlaw.quadforms import class_group

SWEEP_DISCS = fundamental_discriminants(-200, -3)
SWEEP_PMAX = 1000
DENSITY_XMAX = 10**5
DENSITY_TOL = 0.02


@pytest.fixture(scope="module")
def reports():
    return sweep_reports(SWEEP_DISCS, SWEEP_PMAX)


@pytest.fixture(scope="module")
def polys():
    return {fd.D: hilbert_class_poly(fd) for fd in SWEEP_DISCS}


def _inert_verified(reports):
    return [r for r in reports if r.status in (MATCH, MISMATCH) and kronecker(r.D, r.p) == -1]


def test_1_exhaustive_law_verification(criterion, reports):
    with criterion("1 exhaustive law verification: 0 mismatches over D in [-200,-3], p <= 1000"):
        assert len(SWEEP_DISCS) == 62
        expected_pairs = sum(len(primes_in_range(3, SWEEP_PMAX)) for _ in SWEEP_DISCS)
        assert len(reports) == expected_pairs
        mismatches = [r for r in reports if r.status == MISMATCH]
        assert mismatches == []
        assert sum(r.status == MATCH for r in reports) > 9000


def test_2_stankewicz_biconditional(criterion, reports, polys):
    with criterion("2 root criterion: roots nonempty <=> (-p/q) = 1 for all odd q | D, 0 exceptions"):
        inert = _inert_verified(reports)
        assert len(inert) > 4000
        exceptions = []
        for r in inert:
            has_root = bool(roots(reduce_mod(polys[r.D], r.p)))
            if has_root != stankewicz_criterion(r.D, r.p):
                exceptions.append((r.D, r.p))
        assert exceptions == []


def test_3_exact_linear_count(criterion, reports, polys):
    with criterion("3 exact count: 2^(t-1) linear factors in every inert criterion-true case"):
        checked = 0
        for r in _inert_verified(reports):
            if not stankewicz_criterion(r.D, r.p):
                continue
            assert r.prediction.case_tag == INERT_GENUS
            fd = class_group(r.D).disc
            assert r.actual.linear_count == fd.genus_count
            assert len(roots(reduce_mod(polys[r.D], r.p))) == fd.genus_count
            checked += 1
        assert checked > 1000


@pytest.mark.parametrize("D, expected", [(-15, Fraction(1, 2)), (-23, Fraction(2, 3)), (-4, Fraction(1)),
                                         (-20, Fraction(1, 2))])
def test_4_density(criterion, D, expected):
    with criterion(f"4 density D={D}: |empirical - {expected}| <= {0 if D == -4 else DENSITY_TOL}, primes <= 10^5"):
        rep = density_experiment(D, DENSITY_XMAX)
        assert rep.theoretical == expected
        assert rep.disagreements == 0
        if D == -4:
            assert rep.abs_deviation == 0
        else:
            assert rep.abs_deviation <= DENSITY_TOL


def test_5_class_polynomial_fixtures(criterion):
    with criterion("5 class polynomials: fixtures exact, bit-identical at 2x precision for |D| <= 200"):
        assert hilbert_class_poly(-3).coeffs == (0, 1)
        assert hilbert_class_poly(-4).coeffs == (-1728, 1)
        assert hilbert_class_poly(-7).coeffs == (3375, 1)
        assert hilbert_class_poly(-15).coeffs == (-121287375, 191025, 1)
        for fd in SWEEP_DISCS:
            a = hilbert_class_poly(fd)
            b = hilbert_class_poly(fd, bits=2 * precision_bound(fd))
            assert a.coeffs == b.coeffs


def test_6_spot_checks(criterion):
    with criterion("6 spot checks for H_-15 mod 11, 29, 43, 17, 7"):
        P = hilbert_class_poly(-15)
        assert roots(reduce_mod(P, 11)) == [0, 1]
        assert roots(reduce_mod(P, 29)) == [2, 25]
        for p in (43, 17):
            f = reduce_mod(P, p)
            assert is_squarefree(f) and ddf(f) == SplittingPattern(((2, 1),)) and roots(f) == []
        assert not is_squarefree(reduce_mod(P, 7))
        assert sweep_reports([-15], 7)[-1].status == SKIPPED_NONSQUAREFREE


def test_7_genus_invariants(criterion):
    with criterion("7 genus invariants over |D| <= 500, odd p <= 1000"):
        discs = fundamental_discriminants(-500, -3)
        primes = primes_in_range(3, 1000)
        for fd in discs:
            prod = 1
            for s in fd.stars:
                prod *= s.qstar
            assert prod == fd.D
            assert class_group(fd).h % fd.genus_count == 0
            for p in primes:
                if fd.D % p == 0:
                    continue
                assert symbol_product_identity(fd, p)
                if fd.t == 1 and kronecker(fd.D, p) == -1:
                    assert stankewicz_criterion(fd, p)


def _cli(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(argv)
    return code, buf.getvalue().encode()


def test_8_determinism(criterion, tmp_path):
    with criterion("8 determinism: byte-identical machine output across worker counts"):
        outputs = []
        for workers in ("1", "2", "3"):
            base = ["--json", "--workers", workers, "--cache-dir", str(tmp_path / f"c{workers}")]
            code_s, sweep_out = _cli([*base, "verify", "--sweep", "-200", "-3", "1000"])
            code_d, dens_out = _cli([*base, "density", "-23", "20000"])
            assert code_s == 0 and code_d == 0
            outputs.append((sweep_out, dens_out))
        assert outputs[0] == outputs[1] == outputs[2]
        assert json.loads(outputs[0][0])["result"]["mismatches"] == 0
