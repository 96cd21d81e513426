"""
Tests for finite fields and Laurent series over them
"""

import pytest
from hypothesis import given, settings, strategies as st

from mumford_tools.framework import IndeterminateError, InvalidInputError
from mumford_tools.localfield import (
    LocalElement,
    ProjPoint,
    make_field,
    parse_local,
    parse_point,
)

F9 = make_field(3, 2)
F3 = make_field(3, 1)

f9_elements = st.integers(min_value=0, max_value=8).map(F9.element)
f9_units = st.integers(min_value=1, max_value=8).map(F9.element)


def test_make_field_sizes():
    """Test field sizes and the deterministic modulus"""
    assert make_field(3, 1).q == 3
    assert make_field(2, 2).q == 4
    # x^2 + 1 = (x + 1)^2 over F_2, so the least irreducible is x^2 + x + 1
    assert make_field(2, 2).modulus == (1, 1, 1)
    assert make_field(5, 3).q == 125


def test_make_field_rejects_bad_input():
    """Test that composite characteristics and t < 1 are refused"""
    with pytest.raises(InvalidInputError):
        make_field(4, 1)
    with pytest.raises(InvalidInputError):
        make_field(3, 0)


@given(f9_elements, f9_elements, f9_elements)
def test_field_distributive(a, b, c):
    """Test a(b + c) = ab + ac in F_9"""
    assert a * (b + c) == a * b + a * c


@given(f9_elements, f9_units)
def test_field_division(a, b):
    """Test (a / b) * b = a in F_9"""
    assert (a / b) * b == a


def test_primitive_element_and_roots_of_unity():
    """Test primitive element order and roots of unity"""
    assert F9.primitive_element().order() == 8
    f7 = make_field(7, 1)
    assert f7.root_of_unity(3).order() == 3
    assert f7.root_of_unity(6).order() == 6
    with pytest.raises(InvalidInputError):
        f7.root_of_unity(4)


def test_subfield_basis():
    """Test the F_p-basis of a subfield starts with 1"""
    basis = F9.subfield_basis(2)
    assert len(basis) == 2
    assert basis[0] == F9.one()
    assert F9.subfield_basis(1) == [F9.one()]
    with pytest.raises(InvalidInputError):
        make_field(2, 3).subfield_basis(2)


def test_field_parse():
    """Test parsing polynomials in g"""
    g = F9.generator()
    assert F9.parse("g^2+2g+1") == g * g + g * 2 + 1
    assert F9.parse("4") == F9.one()


def test_monomials_invert_exactly():
    """Test pi^k * pi^-k = 1 with no precision loss"""
    for k in (-3, 1, 5):
        product = LocalElement.pi(F3, k) * LocalElement.pi(F3, -k)
        assert product == LocalElement.one(F3)
        assert product.is_exact
    assert LocalElement.one(F3).shift(3) == LocalElement.pi(F3, 3)


def test_geometric_series_inverse():
    """Test (1 - pi)^-1 = 1 + pi + pi^2 + ..."""
    x = LocalElement.one(F3) - LocalElement.pi(F3)
    inverse = x.inverse()
    assert not inverse.is_exact
    assert all(inverse.digit(k) == 1 for k in range(10))
    assert (x * inverse).agrees_with(LocalElement.one(F3))


def test_parse_series():
    """Test the textual series format"""
    x = parse_local("1 + 2·π^3 + O(π^10)", F3)
    assert x.precision == 10
    assert x.digit(0) == 1
    assert x.digit(3) == 2
    assert x.valuation() == 0
    assert str(x) == "1 + 2·π^3 + O(π^10)"
    assert parse_local("pi", F3) == LocalElement.pi(F3)
    assert parse_local("0", F3).is_exact_zero


def test_parse_leading_minus():
    """Test a unary or binary minus in front of a pi term"""
    x = parse_local("-π", F3)
    assert x.valuation() == 1
    assert x.digit(1) == 2
    assert parse_local("-π^2 + 1", F3) == parse_local("1 + 2·π^2", F3)
    assert parse_local("1 - π^-1 + O(π^4)", F3) == parse_local("2·π^-1 + 1 + O(π^4)", F3)
    assert parse_local("-1", F3) == parse_local("2", F3)


def test_undetermined_valuation():
    """Test that zero modulo pi^N has no valuation"""
    x = parse_local("O(π^5)", F3)
    with pytest.raises(IndeterminateError):
        x.valuation()
    with pytest.raises(IndeterminateError):
        x.is_zero()
    with pytest.raises(IndeterminateError):
        x.digit(7)


def test_reduce_and_truncate():
    """Test exact reduction and truncation"""
    x = parse_local("1 + π + π^4", F3)
    assert x.reduce_mod(2) == parse_local("1 + π", F3)
    assert x.truncate(2).precision == 2
    with pytest.raises(IndeterminateError):
        x.truncate(2).reduce_mod(3)


def test_inverse_of_zero():
    """Test that exact zero cannot be inverted"""
    with pytest.raises(InvalidInputError):
        LocalElement.zero(F3).inverse()


def test_points():
    """Test projective points"""
    inf = parse_point("inf", F3)
    assert inf.is_infinity
    assert parse_point("∞", F3).same_point(inf)
    one = ProjPoint.finite(1, F3)
    assert one.same_point(parse_point("1", F3))
    assert not one.same_point(inf)
    with pytest.raises(InvalidInputError):
        ProjPoint.from_pair(LocalElement.zero(F3), LocalElement.zero(F3))


@settings(max_examples=30)
@given(st.integers(min_value=-5, max_value=5), st.integers(min_value=1, max_value=2))
def test_shift_valuation(k, c):
    """Test v(c pi^k) = k"""
    assert LocalElement.monomial(F3, c, k).valuation() == k
