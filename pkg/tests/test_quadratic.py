import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclocert.arith import ResidueClass, factorize, primes_in_class
from cyclocert.errors import ContractError
from cyclocert.quadratic import (
    QuadFieldSpec,
    Verdict,
    chi_value,
    conductor_oracle,
    jacobi,
    legendre,
    prop3_field,
    prop3_search_classes,
    quad_character,
    quad_semi_split,
)

from oracles import legendre_euler, legendre_squares, sieve

ODD_PRIMES_200 = sieve(200)[1:]
SQUAREFREE_30 = [m for m in range(-30, 31) if m not in (0, 1) and all(e == 1 for _, e in factorize(abs(m)))]


class TestQuadFieldSpec:
    @pytest.mark.parametrize("m", [0, 1, 4, -8, 12])
    def test_rejects(self, m):
        with pytest.raises(ContractError):
            QuadFieldSpec(m)

    def test_poly_text(self):
        assert QuadFieldSpec(5).poly_text == "x^2 - 5"
        assert QuadFieldSpec(-1).poly_text == "x^2 + 1"


class TestLegendre:
    def test_examples(self):
        assert legendre(2, 7) == 1
        assert legendre(3, 7) == -1
        assert legendre(14, 7) == 0

    @pytest.mark.parametrize("p", [2, 9, 15, 1])
    def test_bad_modulus(self, p):
        with pytest.raises(ContractError):
            legendre(3, p)

    @pytest.mark.parametrize("p", ODD_PRIMES_200)
    def test_euler_criterion(self, p):
        for a in range(-p, 2 * p):
            assert legendre(a, p) == legendre_euler(a, p)

    def test_squares_oracle(self):
        for p in sieve(60)[1:]:
            for a in range(p):
                assert legendre(a, p) == legendre_squares(a, p)


class TestJacobi:
    def test_examples(self):
        assert jacobi(1, 9) == 1
        assert jacobi(2, 15) == 1
        assert jacobi(5, 21) == 1

    def test_even_modulus(self):
        with pytest.raises(ContractError):
            jacobi(3, 10)

    def test_matches_legendre_product(self):
        for n in range(1, 1001, 2):
            fac = factorize(n)
            for a in range(0, n + 3):
                expected = math.prod(legendre_euler(a, p) ** e for p, e in fac)
                assert jacobi(a, n) == expected, (a, n)

    @given(st.integers(-10**6, 10**6), st.integers(0, 10**5))
    def test_negative_arguments(self, a, k):
        n = 2 * k + 1
        assert jacobi(a, n) == jacobi(a % n, n)


def test_reciprocity_law():
    for p in ODD_PRIMES_200:
        for q in ODD_PRIMES_200:
            if p < q <= 100:
                sign = (-1) ** ((p - 1) * (q - 1) // 4)
                assert legendre(p, q) * legendre(q, p) == sign


class TestCharacter:
    @pytest.mark.parametrize("m, d", [(5, 5), (3, 12), (-1, 4), (2, 8), (-3, 3), (-5, 20), (13, 13), (-6, 24)])
    def test_conductor(self, m, d):
        assert quad_character(QuadFieldSpec(m)).conductor == d

    def test_chi_examples(self):
        assert chi_value(quad_character(QuadFieldSpec(5)), 11) == 1
        assert chi_value(quad_character(QuadFieldSpec(5)), 10) == 0
        assert chi_value(quad_character(QuadFieldSpec(3)), 11) == 1

    @pytest.mark.parametrize("m", SQUAREFREE_30)
    def test_periodic(self, m):
        char = quad_character(QuadFieldSpec(m))
        rng = random.Random(m)
        for _ in range(10_000):
            a = rng.randrange(-10**9, 10**9)
            assert chi_value(char, a) == chi_value(char, a + char.conductor)

    @pytest.mark.parametrize("m", SQUAREFREE_30)
    def test_matches_residuosity_at_odd_primes(self, m):
        char = quad_character(QuadFieldSpec(m))
        for p in sieve(10**4)[1:]:
            if m % p:
                assert chi_value(char, p) == legendre_euler(m, p), p

    @pytest.mark.parametrize("m", SQUAREFREE_30)
    def test_is_a_character(self, m):
        # multiplicative, real, and not trivial on the units mod d
        char = quad_character(QuadFieldSpec(m))
        d = char.conductor
        values = {a: chi_value(char, a) for a in range(d)}
        for a in range(d):
            for b in range(d):
                assert values[a * b % d] == values[a] * values[b]
        units = [a for a in range(d) if math.gcd(a, d) == 1]
        assert sum(values[a] for a in units) == 0

    @pytest.mark.parametrize("m", SQUAREFREE_30)
    def test_conductor_is_minimal_period(self, m):
        char = quad_character(QuadFieldSpec(m))
        d = char.conductor
        for e in range(1, d):
            if d % e == 0:
                # chi is not induced from a character mod e
                assert any(
                    chi_value(char, a) != chi_value(char, b)
                    for a in range(d)
                    for b in range(d)
                    if math.gcd(a * b, d) == 1 and (a - b) % e == 0
                )


class TestSemiSplit:
    def test_examples(self):
        five = QuadFieldSpec(5)
        assert quad_semi_split(five, 11)
        assert quad_semi_split(five, 5)
        assert not quad_semi_split(five, 3)

    @pytest.mark.parametrize("m", SQUAREFREE_30)
    def test_prime_two(self, m):
        expected = m % 4 != 1 or m % 8 == 1
        assert quad_semi_split(QuadFieldSpec(m), 2) == expected

    @pytest.mark.parametrize("m", SQUAREFREE_30)
    def test_odd_primes_match_squares(self, m):
        spec = QuadFieldSpec(m)
        for p in sieve(400)[1:]:
            assert quad_semi_split(spec, p) == (legendre_squares(m, p) >= 0)


class TestConductorOracle:
    def test_examples(self):
        assert conductor_oracle(QuadFieldSpec(5), 3) is Verdict.IRREDUCIBLE
        assert conductor_oracle(QuadFieldSpec(5), 10) is Verdict.REDUCIBLE
        assert conductor_oracle(QuadFieldSpec(-1), 4) is Verdict.REDUCIBLE

    def test_rejects_nonpositive(self):
        with pytest.raises(ContractError):
            conductor_oracle(QuadFieldSpec(5), 0)

    @pytest.mark.parametrize("m", SQUAREFREE_30)
    def test_coprime_odd_always_irreducible(self, m):
        for n in range(1, 46, 2):
            if math.gcd(n, m) == 1:
                assert conductor_oracle(QuadFieldSpec(m), n) is Verdict.IRREDUCIBLE


class TestProp3:
    def test_fields(self):
        assert prop3_field(7).m == 7
        assert prop3_field(5).m == -5
        with pytest.raises(ContractError):
            prop3_field(2)
        with pytest.raises(ContractError):
            prop3_search_classes(9)

    def test_examples(self):
        classes = dict((t.a, s) for t, s in prop3_search_classes(7))
        assert classes[1] == ResidueClass(1, 28)
        assert classes[3] == ResidueClass(3, 28)
        assert dict((t.a, s) for t, s in prop3_search_classes(5))[1] == ResidueClass(1, 20)
        assert legendre_squares(7, 29) == 1
        assert legendre_squares(-5, 41) == 1

    @pytest.mark.parametrize("p", ODD_PRIMES_200[:20])
    def test_class_shape(self, p):
        rows = prop3_search_classes(p)
        assert [t.a for t, _ in rows] == list(range(1, p))
        for target, search in rows:
            assert search.n == 4 * p
            assert search.a % p == target.a
            assert search.a % 4 == (1 if legendre_euler(target.a, p) == 1 else 3)

    @pytest.mark.parametrize("p", ODD_PRIMES_200[:20])
    def test_every_emitted_prime_is_semi_split(self, p):
        spec = prop3_field(p)
        for _, search in prop3_search_classes(p):
            found = list(primes_in_class(search, 20_000))
            assert found, search
            for q in found:
                assert quad_semi_split(spec, q)
                assert legendre_squares(spec.m, q) == 1
