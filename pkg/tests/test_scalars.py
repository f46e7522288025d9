from fractions import Fraction
from math import comb, inf

import pytest
from hypothesis import given, settings, strategies as st

from hopfore.errors import DivisionByZero, FieldMismatch, IndexOutOfRange, ParseError
from hopfore.scalars import (
    cyclotomic_field,
    cyclotomic_poly,
    format_scalar,
    order_of_unit,
    parse_scalar,
    q_binom,
    q_binom_by_factorials,
    q_binomial_row,
    q_factorial,
    q_int,
)

Q4 = cyclotomic_field(4)
Q9 = cyclotomic_field(9)
FIELDS = [cyclotomic_field(m) for m in (1, 2, 3, 4, 6, 8, 9)]


def scalars(fld, bound=5):
    coeff = st.fractions(min_value=-bound, max_value=bound, max_denominator=4)
    return st.lists(coeff, min_size=fld.degree, max_size=fld.degree).map(fld.from_coeffs)


@pytest.mark.parametrize("m, poly", [(1, [-1, 1]), (4, [1, 0, 1]), (6, [1, -1, 1])])
def test_cyclotomic_poly(m, poly):
    # coefficients from the constant term up
    assert cyclotomic_poly(m) == poly


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@pytest.mark.parametrize("m", range(1, 31))
def test_cyclotomic_product_is_x_m_minus_1(m):
    product = [1]
    for d in range(1, m + 1):
        if m % d == 0:
            product = _poly_mul(product, cyclotomic_poly(d))
    assert product == [-1] + [0] * (m - 1) + [1]


def test_field_arithmetic_examples():
    z = Q4.gen()
    assert (1 + z) * (1 - z) == Q4(2)
    assert (1 + z).inverse() == (1 - z) / 2
    assert z + 0 == z
    assert z ** 4 == Q4.one()
    assert z ** -1 == -z


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        Q4.zero().inverse()


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        Q4.gen() + Q9.gen()


@pytest.mark.parametrize("fld", FIELDS, ids=lambda f: f"m={f.conductor}")
def test_field_axioms(fld):
    @settings(max_examples=500 if fld.conductor in (3, 4, 8, 9) else 60)
    @given(scalars(fld), scalars(fld), scalars(fld))
    def check(a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        if not a.is_zero():
            assert a * a.inverse() == fld.one()

    check()


@pytest.mark.parametrize("value, order", [("z", 4), ("-1", 2), ("2", inf), ("1", 1), ("-z", 4)])
def test_order_of_unit(value, order):
    assert order_of_unit(parse_scalar(value, Q4)) == order


def test_order_in_ninth_roots():
    z = Q9.gen()
    assert order_of_unit(z) == 9
    assert order_of_unit(z ** 3) == 3
    assert order_of_unit(z ** 3 + 1) == 6


def test_q_binom_examples():
    q = Q4.gen()
    assert q_binom(2, 1, q) == 1 + q
    assert q_binom(4, 2, q) == 1 + q + 2 * q ** 2 + q ** 3 + q ** 4
    assert q_binom(2, 1, cyclotomic_field(2)(-1)).is_zero()


def test_q_int_and_factorial():
    q = Fraction(3)
    fld = cyclotomic_field(1)
    assert q_int(4, fld(q)) == fld(1 + 3 + 9 + 27)
    assert q_factorial(3, fld(q)) == fld(1 * 4 * 13)
    assert q_int(0, fld(q)).is_zero()


@pytest.mark.parametrize("s", range(2, 9))
def test_q_binom_vanishes_at_primitive_roots(s):
    fld = cyclotomic_field(s)
    for k in range(1, s):
        if order_of_unit(fld.gen() ** k) != s:
            continue
        q = fld.gen() ** k
        row = q_binomial_row(s, q)
        assert row[0].is_one() and row[s].is_one()
        assert all(row[i].is_zero() for i in range(1, s))


@given(st.integers(0, 9), st.integers(-3, 3).filter(lambda k: k not in (0, 1, -1)))
def test_recurrence_matches_factorials_at_generic_q(n, k):
    fld = cyclotomic_field(1)
    q = fld(k)
    for i in range(n + 1):
        assert q_binom(n, i, q) == q_binom_by_factorials(n, i, q)


def test_q_binom_rejects_i_above_n():
    with pytest.raises(IndexOutOfRange):
        q_binom(2, 3, Q4.gen())


@pytest.mark.parametrize("n", range(13))
def test_q_binom_at_one_is_ordinary_binomial(n):
    one = cyclotomic_field(1).one()
    assert [q_binom(n, i, one) for i in range(n + 1)] == [one * comb(n, i) for i in range(n + 1)]


def test_lemma_scalar_identity():
    """q^(-j-1)(l-i-1)_q - q^(1-m)(m-j-1)_q = q^(-j)(l-i-2)_q - q^(1-m)(m-j-2)_q."""

    fld = cyclotomic_field(1)

    @settings(max_examples=200)
    @given(st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool),
           st.integers(2, 9), st.integers(2, 9), st.data())
    def check(q, l, m, data):
        i = data.draw(st.integers(0, l - 2))
        j = data.draw(st.integers(0, m - 2))
        q = fld(q)
        lhs = q ** (-j - 1) * q_int(l - i - 1, q) - q ** (1 - m) * q_int(m - j - 1, q)
        rhs = q ** (-j) * q_int(l - i - 2, q) - q ** (1 - m) * q_int(m - j - 2, q)
        assert lhs == rhs

    check()


@pytest.mark.parametrize("text", ["0", "1", "-1", "z", "1/2", "2 - 3*z", "z^3", "-1/3*z^2 + z"])
def test_parse_format_roundtrip(text):
    x = parse_scalar(text, Q4)
    assert parse_scalar(format_scalar(x), Q4) == x


@given(scalars(Q9))
def test_format_roundtrip_random(x):
    assert parse_scalar(format_scalar(x), Q9) == x


@pytest.mark.parametrize("text", ["", "1 +", "z^", "(1", "1 $ 2", "1/0"])
def test_parse_errors(text):
    with pytest.raises((ParseError, DivisionByZero)):
        parse_scalar(text, Q4)


def test_root_of_unity_needs_divisor():
    assert Q4.root_of_unity(2) == Q4(-1)
    assert order_of_unit(Q9.root_of_unity(3)) == 3
