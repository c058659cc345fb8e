import pytest
from hypothesis import given
from hypothesis import strategies as st

from heapcurve.finite_field import (
    FieldMismatch,
    PrimeField,
    QuadraticExtension,
    ff_arith,
    ff_sqrt,
    frobenius,
    is_prime,
    make_field,
    parse_element,
)

F13 = make_field(13)
F25 = make_field(5, 2)
F49 = make_field(7, 3)


def elements(field):
    if field.degree == 1:
        return st.integers(0, field.p - 1).map(field)
    return st.tuples(st.integers(0, field.p - 1), st.integers(0, field.p - 1)).map(lambda c: field(*c))


any_field = st.sampled_from([F13, F25, F49, make_field(65521)])


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p", [2, 3, 9, 1 << 16, 65537])
def test_prime_field_rejects(p):
    with pytest.raises(ValueError):
        PrimeField(p)


def test_extension_needs_nonresidue():
    with pytest.raises(ValueError):
        QuadraticExtension(PrimeField(5), 4)
    assert F25.order == 25


@given(any_field.flatmap(lambda F: st.tuples(elements(F), elements(F), elements(F))))
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == x.field.zero()


@given(any_field.flatmap(lambda F: elements(F).filter(bool)))
def test_inverse(x):
    assert x * x.inverse() == x.field.one()
    assert ff_arith(x.field.one(), x, "div") == x.inverse()


@given(any_field.flatmap(elements))
def test_fermat(x):
    assert x ** x.field.order == x


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        F13(3) / F13(0)


def test_mixing_fields_fails():
    with pytest.raises(FieldMismatch):
        F13(1) + make_field(17)(1)
    with pytest.raises(FieldMismatch):
        ff_arith(F13(1), make_field(17)(1), "add")


def test_sqrt_exhaustive_f13():
    squares = {x * x for x in F13.elements()}
    for x in F13.elements():
        roots = ff_sqrt(x)
        assert all(r * r == x for r in roots)
        assert len(roots) == (0 if x not in squares else (1 if not x else 2))


def test_every_base_element_is_a_square_in_f25():
    for c in range(5):
        assert ff_sqrt(F25(c)), c


def test_frobenius_fixes_exactly_the_prime_field():
    fixed = [x for x in F25.elements() if frobenius(x) == x]
    assert len(fixed) == 5 and all(x.in_base_field() for x in fixed)
    for x in F25.elements():
        assert frobenius(frobenius(x)) == x


@pytest.mark.parametrize("text, want", [
    ("7", (2, 0)), ("-1", (4, 0)), ("2+3t", (2, 3)), ("4t", (0, 4)), ("-t", (0, 4)), ("1 - t", (1, 4)),
])
def test_parse_element(text, want):
    assert parse_element(F25, text).key == want


def test_parse_rejects_t_in_prime_field():
    with pytest.raises(ValueError):
        parse_element(F13, "1+t")
    with pytest.raises(ValueError):
        parse_element(F13, "abc")


def test_str_and_json():
    assert str(F25(2, 3)) == "2+3t" and str(F25(0, 1)) == "1t" and str(F25(4)) == "4"
    assert F13(5).to_json() == "5"
    assert F25(2, 3).to_json() == ["2", "3"]
