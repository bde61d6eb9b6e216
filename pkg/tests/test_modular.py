import math
import random

import pytest

from demushkin.errors import (
    DomainError,
    NotAUnitError,
    NotPrimeError,
    ParseError,
    PrecisionError,
)
from demushkin.modular import (
    PrimePower,
    U2Descriptor,
    classify_z2_subgroup,
    inv_mod,
    is_prime,
    p_valuation,
)


class TestPValuation:
    def test_examples(self):
        assert p_valuation(9, 3) == 2
        assert p_valuation(0, 5) == math.inf
        assert p_valuation(12, 2) == 2

    def test_negative_argument(self):
        assert p_valuation(-12, 2) == 2

    def test_nonprime_rejected(self):
        with pytest.raises(NotPrimeError):
            p_valuation(8, 6)

    def test_additive_on_products(self):
        rng = random.Random(1)
        for p in (2, 3, 5):
            for _ in range(200):
                a = rng.randint(1, 10**6)
                b = rng.randint(1, 10**6)
                assert p_valuation(a * b, p) == p_valuation(a, p) + p_valuation(b, p)


class TestPrimePower:
    def test_value_and_str(self):
        m = PrimePower(3, 3)
        assert m.value == 27
        assert str(m) == "3^3"

    def test_from_value(self):
        assert PrimePower.from_value(27) == PrimePower(3, 3)
        assert PrimePower.from_value(32) == PrimePower(2, 5)
        with pytest.raises(DomainError):
            PrimePower.from_value(6)
        with pytest.raises(DomainError):
            PrimePower.from_value(1)

    def test_parse(self):
        assert PrimePower.parse("3^3") == PrimePower(3, 3)
        assert PrimePower.parse("27") == PrimePower(3, 3)
        assert PrimePower.parse(" 2^5 ") == PrimePower(2, 5)
        with pytest.raises(DomainError):
            PrimePower.parse("6")
        with pytest.raises(ParseError):
            PrimePower.parse("abc")
        with pytest.raises(ParseError):
            PrimePower.parse("3^x")

    def test_validation(self):
        with pytest.raises(NotPrimeError):
            PrimePower(4, 2)
        with pytest.raises(DomainError):
            PrimePower(3, 0)


class TestInvMod:
    def test_examples(self):
        assert inv_mod(-2, PrimePower(3, 2)) == 4
        assert inv_mod(1, PrimePower(5, 3)) == 1
        # The unique unit b with -5 b = 1 mod 8 is 3 (extended-Euclid oracle).
        assert inv_mod(-(1 + 4), 8) == 3
        assert (-5 * 3) % 8 == 1

    def test_not_a_unit(self):
        with pytest.raises(NotAUnitError):
            inv_mod(3, PrimePower(3, 2))
        with pytest.raises(NotAUnitError):
            inv_mod(0, 8)

    def test_exhaustive_small_prime_powers(self):
        for p in (2, 3, 5):
            for k in range(1, 7):
                m = p**k
                for a in range(1, m):
                    if a % p == 0:
                        continue
                    assert (a * inv_mod(a, m)) % m == 1


class TestIsPrime:
    def test_small_values(self):
        primes = {2, 3, 5, 7, 11, 13, 17, 19, 23}
        for n in range(-3, 25):
            assert is_prime(n) == (n in primes)


class TestU2Descriptor:
    def test_str(self):
        assert str(U2Descriptor("trivial")) == "1"
        assert str(U2Descriptor("U_paren", 2)) == "U2^(2)"
        assert str(U2Descriptor("U_bracket", 3)) == "U2^[3]"
        assert str(U2Descriptor("pm1_times_U_paren", 2)) == "{+-1} x U2^(2)"
        assert str(U2Descriptor("pm1_times_U_paren", None)) == "{+-1}"

    def test_validation(self):
        with pytest.raises(DomainError):
            U2Descriptor("bogus", 2)
        with pytest.raises(DomainError):
            U2Descriptor("trivial", 2)
        with pytest.raises(DomainError):
            U2Descriptor("U_paren", None)
        with pytest.raises(DomainError):
            U2Descriptor("U_paren", 1)


class TestClassifyZ2:
    def test_paper_generators(self):
        assert classify_z2_subgroup([5], 6) == U2Descriptor("U_paren", 2)
        assert classify_z2_subgroup([3], 6) == U2Descriptor("U_bracket", 2)
        assert classify_z2_subgroup([-1, 5], 6) == U2Descriptor("pm1_times_U_paren", 2)

    def test_degenerate_generating_sets(self):
        assert classify_z2_subgroup([], 6) == U2Descriptor("trivial")
        assert classify_z2_subgroup([1], 6) == U2Descriptor("trivial")
        assert classify_z2_subgroup([-1], 6) == U2Descriptor("pm1_times_U_paren", None)

    def test_higher_exponents(self):
        assert classify_z2_subgroup([1 + 2**4], 6) == U2Descriptor("U_paren", 4)
        assert classify_z2_subgroup([-1 + 2**3], 6) == U2Descriptor("U_bracket", 3)
        assert classify_z2_subgroup([-1, 1 + 2**4], 6) == U2Descriptor(
            "pm1_times_U_paren", 4
        )

    def test_redundant_generator_invariance(self):
        base = classify_z2_subgroup([5], 6)
        assert classify_z2_subgroup([5, 25], 6) == base
        assert classify_z2_subgroup([5, 5**3], 8) == base
        # replacing a generator by its inverse (an exact integer representing
        # 5^-1 to high precision) keeps the classification
        inverse = pow(5, -1, 2**12)
        assert classify_z2_subgroup([inverse], 6) == base
        # a sign--1 subgroup is unchanged by adding the square of its generator
        assert classify_z2_subgroup([3, 9], 6) == classify_z2_subgroup([3], 6)
        # -5 = -1 * 5 and 5 together generate {+-1} x U^(2)
        assert classify_z2_subgroup([-5, 5], 8) == U2Descriptor(
            "pm1_times_U_paren", 2
        )

    def test_two_minus_generators(self):
        # 3 = -1+4 and -5 = -(1+4): product 3*-5 = -15 = 1-16, valuation 4;
        # the pair (3, -15) pins the projection to U^(4)? no: generators 3 and -5.
        got = classify_z2_subgroup([3, -5], 8)
        # both have sign -1 with exponents 2; their product has valuation 4,
        # so the projection is U^(4) and 3 is not inside it: U2^[2].
        assert got == U2Descriptor("U_bracket", 2)

    def test_precision_errors(self):
        with pytest.raises(PrecisionError):
            classify_z2_subgroup([1 + 2**6], 6)
        with pytest.raises(PrecisionError):
            classify_z2_subgroup([2**6 - 1], 6)  # = -1 + 2^6, not exactly -1
        # raising k resolves it
        assert classify_z2_subgroup([1 + 2**6], 8) == U2Descriptor("U_paren", 6)

    def test_input_validation(self):
        with pytest.raises(NotAUnitError):
            classify_z2_subgroup([4], 6)
        with pytest.raises(DomainError):
            classify_z2_subgroup([5], 3)
