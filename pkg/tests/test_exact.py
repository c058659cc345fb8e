from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from heapcurve.exact import (
    DiscriminantMismatch,
    QuadraticNumber,
    format_rational,
    quad_arith,
    rat_arith,
    rat_is_integer,
    rational,
)

fractions = st.fractions(max_denominator=10**6)
nonzero = fractions.filter(bool)
ds = st.integers(1, 50)


def qn(d):
    return st.builds(QuadraticNumber, fractions, fractions, st.just(d))


@pytest.mark.parametrize("text, want", [
    ("3/4", Fraction(3, 4)),
    ("-6/8", Fraction(-3, 4)),
    (" 7 ", Fraction(7)),
    (5, Fraction(5)),
])
def test_rational_parses(text, want):
    assert rational(text) == want


@pytest.mark.parametrize("bad", ["0.5", "1e3", "", "x"])
def test_rational_rejects_non_rationals(bad):
    with pytest.raises(ValueError):
        rational(bad)


def test_rational_rejects_bool_and_float():
    with pytest.raises(TypeError):
        rational(True)
    with pytest.raises(TypeError):
        rational(0.5)


def test_format_rational():
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-1, 2)) == "-1/2"


@given(fractions, nonzero)
def test_rat_arith_field_identities(x, y):
    assert rat_arith(rat_arith(x, y, "div"), y, "mul") == x
    assert rat_arith(rat_arith(x, y, "add"), y, "sub") == x


def test_rat_arith_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rat_arith(Fraction(1), Fraction(0), "div")
    with pytest.raises(ValueError):
        rat_arith(Fraction(1), Fraction(1), "pow")


def test_rat_is_integer():
    assert rat_is_integer(Fraction(4, 2))
    assert not rat_is_integer(Fraction(1, 2))


@given(ds.flatmap(lambda d: st.tuples(qn(d), qn(d), qn(d))))
def test_quadratic_ring_axioms(xyz):
    x, y, z = xyz
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == QuadraticNumber(0, 0, x.d)


@given(ds.flatmap(lambda d: st.tuples(qn(d), qn(d).filter(bool))))
def test_quadratic_division_inverts_multiplication(xy):
    x, y = xy
    assert (x / y) * y == x
    assert quad_arith(quad_arith(x, y, "mul"), y, "div") == x


@given(ds.flatmap(qn))
def test_norm_is_multiplicative_with_conjugate(x):
    assert x * x.conj() == QuadraticNumber(x.norm(), 0, x.d)


def test_sqrt_minus_d_squares_to_minus_d():
    r = QuadraticNumber(0, 1, 7)
    assert r * r == QuadraticNumber(-7, 0, 7)


def test_mixed_discriminants_are_rejected():
    with pytest.raises(DiscriminantMismatch):
        QuadraticNumber(1, 1, 1) + QuadraticNumber(1, 1, 3)
    with pytest.raises(DiscriminantMismatch):
        quad_arith(QuadraticNumber(1, 1, 1), QuadraticNumber(1, 1, 3), "add")


def test_division_by_zero_quadratic():
    with pytest.raises(ZeroDivisionError):
        QuadraticNumber(1, 0, 2) / QuadraticNumber(0, 0, 2)


def test_d_must_be_positive():
    with pytest.raises(ValueError):
        QuadraticNumber(1, 1, 0)
    with pytest.raises(ValueError):
        QuadraticNumber(1, 1, -3)


def test_json_shape():
    assert QuadraticNumber(Fraction(1, 2), -2, 3).to_json() == {"re": "1/2", "im": "-2", "d": 3}
