from __future__ import annotations

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from knotcover.laurent import A, LOOP_VALUE, LaurentPolynomial

polys = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=6).map(LaurentPolynomial)


def test_zero_coefficients_are_dropped():
    p = LaurentPolynomial({3: 0, -1: 2})
    assert p.terms == {-1: 2}
    assert (A - A).is_zero()


def test_loop_value():
    assert LOOP_VALUE.terms == {2: -1, -2: -1}


def test_negative_powers():
    assert (A**-3) * (A**3) == LaurentPolynomial.constant(1)


def test_in_t_uses_quarter_powers():
    assert (A**-4 + A**-12).in_t() == {Fraction(1): 1, Fraction(3): 1}
    assert (A**-2).in_t() == {Fraction(1, 2): 1}


def test_exact_division():
    assert (LOOP_VALUE * (A**5 - 1)).exact_div(LOOP_VALUE) == A**5 - 1


def test_json_round_trip():
    p = -(A**5) - A**-3 + A**-7
    assert LaurentPolynomial.from_json(p.to_json()) == p


def test_string_forms():
    assert (-(A**5) - A**-3 + A**-7).to_string() == "-A^5 - A^-3 + A^-7"
    assert (A**-4 + A**-12 - A**-16).to_t_string() == "t + t^3 - t^4"


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(polys)
def test_divide_back_out(p):
    assert (p * LOOP_VALUE).exact_div(LOOP_VALUE) == p
