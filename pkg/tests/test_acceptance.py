"""Acceptance suite: one group of tests per criterion, each at its stated
tolerance. Run directly or through pytest; the terminal summary prints one
PASS/FAIL line per criterion (see conftest.py)."""

import io
import json
import math
import random
import time

import pytest

from cyclocert import certifier, cyclotomic
from cyclocert.arith import divisors, euler_phi, factorize
from cyclocert.certifier import (
    CertificationFailure,
    IrreducibilityCertificate,
    NumberFieldSpec,
    certificate_from_json,
    certificate_to_json,
    certify,
    verify_certificate,
)
from cyclocert.cli import run
from cyclocert.cyclotomic import cyclotomic_poly
from cyclocert.poly import IntPoly, count_roots_mod_p
from cyclocert.quadratic import (
    QuadFieldSpec,
    Verdict,
    chi_value,
    conductor_oracle,
    jacobi,
    legendre,
    quad_character,
    quad_semi_split,
)
from cyclocert.solvability import obstruction_report

from oracles import count_roots_exhaustive, legendre_euler, legendre_squares, sieve

BOUND = 10**6
SQUAREFREE_30 = [m for m in range(-30, 31) if m not in (0, 1) and all(e == 1 for _, e in factorize(abs(m)))]


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def quad_field(m):
    return NumberFieldSpec.parse(QuadFieldSpec(m).poly_text)


# ---- 1


@criterion(1, "product of Phi_d over d | n is X^n - 1 for n <= 300; deg Phi_n = phi(n) for n <= 10^4; < 10 s")
def test_cyclotomic_identity_and_degrees():
    cyclotomic.clear_cache()
    start = time.perf_counter()
    for n in range(1, 301):
        product = IntPoly((1,))
        for d in divisors(n):
            product = product * cyclotomic_poly(d)
        assert product == IntPoly.binomial(n, -1), n
    for n in range(1, 10_001):
        assert cyclotomic_poly(n).degree == euler_phi(n), n
    elapsed = time.perf_counter() - start
    assert elapsed < 10, f"{elapsed:.1f} s"


# ---- 2


@criterion(2, "X^4 + 1 certified irreducible over Q(zeta_m) for odd m <= 15 at bound 10^6; < 30 s")
def test_x4_plus_1_over_odd_cyclotomic_fields():
    certifier.clear_caches()
    start = time.perf_counter()
    assert cyclotomic_poly(8) == IntPoly.parse("x^4 + 1")
    for m in range(1, 16, 2):
        cert = certify(NumberFieldSpec(cyclotomic_poly(m)), 8, BOUND)
        assert isinstance(cert, IrreducibilityCertificate), m
        assert verify_certificate(cert), m
    elapsed = time.perf_counter() - start
    assert elapsed < 30, f"{elapsed:.1f} s"


# ---- 3


@criterion(3, "certifier and conductor oracle agree: irreducible for odd n <= 45, gcd(n, m) = 1; < 2 min")
def test_quadratic_sweep_irreducible_side():
    certifier.clear_caches()
    start = time.perf_counter()
    disagreements = []
    cases = 0
    for m in SQUAREFREE_30:
        field = quad_field(m)
        for n in range(1, 46, 2):
            if math.gcd(n, m) != 1:
                continue
            cases += 1
            result = certify(field, n, BOUND)
            verdict = conductor_oracle(QuadFieldSpec(m), n)
            if not isinstance(result, IrreducibilityCertificate) or verdict is not Verdict.IRREDUCIBLE:
                disagreements.append((m, n))
            elif not verify_certificate(result):
                disagreements.append((m, n, "verify"))
    elapsed = time.perf_counter() - start
    assert cases > 400
    assert disagreements == []
    assert elapsed < 120, f"{elapsed:.1f} s"


# ---- 4


@criterion(4, "conductor divides n: certify fails with missing classes exactly chi = -1, phi(n)/2 of them")
def test_quadratic_sweep_reducible_side():
    disagreements = []
    cases = 0
    for m in SQUAREFREE_30:
        spec = QuadFieldSpec(m)
        char = quad_character(spec)
        field = quad_field(m)
        for n in range(1, 46):
            if n % char.conductor:
                continue
            cases += 1
            result = certify(field, n, BOUND)
            if conductor_oracle(spec, n) is not Verdict.REDUCIBLE or not isinstance(result, CertificationFailure):
                disagreements.append((m, n))
                continue
            units = [a for a in range(n) if math.gcd(a, n) == 1]
            expected = [a for a in units if chi_value(char, a) == -1]
            missing = [c.a for c in result.missing_classes]
            if missing != expected or len(missing) != euler_phi(n) // 2:
                disagreements.append((m, n, missing))
    assert cases >= 20
    assert disagreements == []


@criterion(4, "conductor divides n: certify fails with missing classes exactly chi = -1, phi(n)/2 of them")
def test_character_values_match_squares():
    # pins chi(a) = -1 to "m is a non-square mod some prime q = a mod n"
    for m in SQUAREFREE_30:
        char = quad_character(QuadFieldSpec(m))
        d = char.conductor
        for a in range(d):
            if math.gcd(a, d) != 1:
                continue
            q = next(p for p in sieve(20_000) if p % d == a and p > 2)
            assert chi_value(char, a) == legendre_squares(m, q)


# ---- 5


@criterion(5, "reciprocity fields: X^2 - p (p = 3 mod 4, p <= 31) and X^2 + p (p = 1 mod 4, p <= 29) certified at n = p")
def test_reciprocity_fields():
    for p in sieve(31)[1:]:
        if p % 4 == 3:
            m = p
        elif p <= 29:
            m = -p
        else:
            continue
        spec = QuadFieldSpec(m)
        cert = certify(quad_field(m), p, BOUND)
        assert isinstance(cert, IrreducibilityCertificate), p
        assert verify_certificate(cert), p
        for w in cert.witnesses:
            assert quad_semi_split(spec, w.p), (p, w.p)
            assert legendre_squares(m, w.p) == 1


# ---- 6


@criterion(6, "scans: X^2 + 1 empty exactly at 3 mod 4 and its lifts mod 8; X^5 - X - 1 no empty class")
def test_obstruction_scans():
    gaussian = obstruction_report(NumberFieldSpec.parse("x^2 + 1"), 10, 10**4)
    assert gaussian.findings == ((4, (3,)), (8, (3, 7)))
    assert all(a % 4 == 3 for _, empty in gaussian.findings for a in empty)
    quintic = obstruction_report(NumberFieldSpec.parse("x^5 - x - 1"), 30, 10**5)
    assert quintic.findings == ()


# ---- 7


def root_corpus():
    rng = random.Random(20240607)
    corpus = []
    while len(corpus) < 200:
        deg = rng.randint(1, 8)
        coeffs = [rng.randint(-50, 50) for _ in range(deg)] + [rng.choice([1, -1, rng.randint(2, 40)])]
        coeffs[rng.randrange(deg + 1)] = 1  # never identically zero mod p
        corpus.append(coeffs)
    return corpus


@criterion(7, "oracle equivalences: root counts, Euler criterion, Jacobi products")
def test_root_counts_against_exhaustive_evaluation():
    mismatches = []
    for coeffs in root_corpus():
        f = IntPoly(tuple(coeffs))
        for p in sieve(500):
            if count_roots_mod_p(f, p) != count_roots_exhaustive(coeffs, p):
                mismatches.append((coeffs, p))
    assert mismatches == []


@criterion(7, "oracle equivalences: root counts, Euler criterion, Jacobi products")
def test_legendre_against_euler_criterion():
    for p in sieve(200)[1:]:
        for a in range(p):
            assert legendre(a, p) == legendre_euler(a, p)


@criterion(7, "oracle equivalences: root counts, Euler criterion, Jacobi products")
def test_jacobi_against_legendre_products():
    for n in range(1, 1001, 2):
        fac = factorize(n)
        for a in range(n):
            assert jacobi(a, n) == math.prod(legendre_euler(a, p) ** e for p, e in fac), (a, n)


# ---- 8


@criterion(8, "quadratic reciprocity for odd prime pairs <= 100")
def test_reciprocity_law():
    primes = sieve(100)[1:]
    for p in primes:
        for q in primes:
            if p != q:
                assert legendre(p, q) * legendre(q, p) == (-1) ** ((p - 1) * (q - 1) // 4)


# ---- 9


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out, stderr=io.StringIO())
    return code, out.getvalue()


@criterion(9, "determinism, bit-exact round trip, mutations rejected, --threads 1 and 4 identical")
def test_determinism_and_round_trip():
    for text, n in [("x^2-5", 3), ("x^3-x-1", 35), ("x^4+1", 15), ("x^5-x-1", 24)]:
        field = NumberFieldSpec.parse(text)
        runs = {certificate_to_json(certify(field, n, BOUND)) for _ in range(3)}
        assert len(runs) == 1
        (doc,) = runs
        back = certificate_from_json(doc)
        assert certificate_to_json(back) == doc
        assert verify_certificate(back)


@criterion(9, "determinism, bit-exact round trip, mutations rejected, --threads 1 and 4 identical")
def test_mutations_rejected(tmp_path):
    path = tmp_path / "c.json"
    assert cli("certify", "--field-poly", "x^2-5", "--n", "12", "--bound", "10000", "--out", str(path))[0] == 0
    assert cli("verify", str(path))[0] == 0
    doc = json.loads(path.read_text())
    mutants = []
    for i, w in enumerate(doc["witnesses"]):
        for key, delta in (("p", 2), ("root", 1), ("class_a", 1)):
            bad = json.loads(json.dumps(doc))
            bad["witnesses"][i][key] += delta
            mutants.append(bad)
    for i in range(len(doc["generators"])):
        bad = json.loads(json.dumps(doc))
        bad["generators"][i]["a"] = 1
        mutants.append(bad)
    for key, value in (("n", doc["n"] + 1), ("version", 2), ("search_bound", 1)):
        bad = dict(doc, **{key: value})
        mutants.append(bad)
    for bad in mutants:
        path.write_text(json.dumps(bad, indent=2) + "\n")
        assert cli("verify", str(path))[0] == 1, bad


@criterion(9, "determinism, bit-exact round trip, mutations rejected, --threads 1 and 4 identical")
@pytest.mark.parametrize(
    "argv",
    [
        ["certify", "--field-poly", "x^3-x-1", "--n", "35", "--json"],
        ["certify", "--field-poly", "x^2+3", "--n", "21"],
        ["certify", "--field-poly", "x^2-5", "--n", "10", "--bound", "10000", "--json"],
        ["quad", "--m", "-7", "--n", "45", "--certify", "--json"],
    ],
)
def test_threads_identical(argv):
    assert cli(*argv, "--threads", "1") == cli(*argv, "--threads", "4")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
