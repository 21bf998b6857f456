from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superchar.cyclotomic import (
    CycNumber,
    cyc_arith,
    cyc_as_rational,
    cyc_conjugate,
    is_prime,
    root_of_unity,
)

PRIMES = [3, 5, 7, 11]


def z(p, k=1):
    return root_of_unity(p, k)


def test_root_of_unity_examples():
    assert root_of_unity(3, 0) == CycNumber.one(3)
    assert root_of_unity(3, 3) == CycNumber.one(3)
    assert root_of_unity(3, 2) == CycNumber(3, [-1, -1])
    assert root_of_unity(3, -1) == root_of_unity(3, 2)


@pytest.mark.parametrize("p", [2, 1, 9, 0, -3])
def test_root_of_unity_rejects_bad_prime(p):
    with pytest.raises(ValueError):
        root_of_unity(p, 1)


def test_arith_examples():
    assert cyc_arith(z(3), z(3, 2), "mul") == CycNumber.one(3)
    assert cyc_arith(z(3), z(3, 2), "add") == CycNumber.rational(3, -1)
    a = CycNumber(5, [1, Fraction(2, 3), 0, -4])
    assert cyc_arith(a, CycNumber.zero(5), "add") == a
    assert cyc_arith(a, a, "sub").is_zero()


def test_arith_errors():
    with pytest.raises(ValueError):
        cyc_arith(z(3), z(5), "add")
    with pytest.raises(ValueError):
        cyc_arith(z(3), z(3), "pow")


def test_conjugate_examples():
    assert cyc_conjugate(CycNumber.one(3)) == CycNumber.one(3)
    assert cyc_conjugate(z(7)) == z(7, 6)
    assert cyc_conjugate(z(3) - z(3, 2)) == z(3, 2) - z(3)


def test_as_rational_examples():
    assert cyc_as_rational(CycNumber.one(3)) == 1
    assert cyc_as_rational(z(3)) is None
    assert cyc_as_rational(z(3) + z(3, 2) + 1) == 0


def test_canonical_length_and_equality():
    a = CycNumber.from_exponent_counts(5, [1, 1, 1, 1, 1])
    assert a.is_zero()
    assert len(a.coeffs) == 4
    assert CycNumber.from_exponent_counts(5, [3, 2, 2, 2, 2]) == CycNumber.one(5)


def test_json_round_trip():
    a = CycNumber(7, [Fraction(1, 2), -3, 0, 0, Fraction(5, 9), 1])
    data = a.to_json()
    assert data[0] == "1/2" and data[1] == "-3/1"
    assert CycNumber.from_json(7, data) == a


def test_division_and_power():
    a = z(5) + 2
    assert (a * 3) / 3 == a
    assert a / Fraction(1, 2) == a + a
    with pytest.raises(ZeroDivisionError):
        a / 0
    assert z(5) ** 5 == CycNumber.one(5)
    assert z(5) ** 0 == CycNumber.one(5)
    with pytest.raises(ValueError):
        z(5) ** -1


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_complex_embedding_is_display_only():
    import cmath

    val = (z(5) + z(5, 4)).to_complex()
    assert abs(val - 2 * cmath.cos(2 * cmath.pi / 5)) < 1e-12


@st.composite
def cyc(draw, p):
    coeffs = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6), min_size=p - 1, max_size=p - 1))
    return CycNumber(p, coeffs)


@st.composite
def triple(draw):
    p = draw(st.sampled_from(PRIMES))
    return p, draw(cyc(p)), draw(cyc(p)), draw(cyc(p))


@settings(max_examples=60, deadline=None)
@given(triple())
def test_ring_axioms(t):
    p, a, b, c = t
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == CycNumber.zero(p)
    assert a * CycNumber.one(p) == a


@settings(max_examples=60, deadline=None)
@given(triple())
def test_conjugation_laws(t):
    p, a, b, _ = t
    assert cyc_conjugate(cyc_conjugate(a)) == a
    assert cyc_conjugate(a * b) == cyc_conjugate(a) * cyc_conjugate(b)
    n = a * cyc_conjugate(a)
    assert cyc_conjugate(n) == n
    r = CycNumber.rational(p, Fraction(3, 7))
    assert cyc_conjugate(r) == r


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(-50, 50), st.integers(-50, 50))
def test_roots_multiply_exponents(p, i, j):
    assert root_of_unity(p, i) * root_of_unity(p, j) == root_of_unity(p, i + j)
