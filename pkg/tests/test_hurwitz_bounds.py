"""
Tests for the Riemann-Hurwitz helpers, the bound F(g) and the census
"""

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mumford_tools.finite_groups import BranchDatum
from mumford_tools.framework import GenusError, InvalidInputError
from mumford_tools.hurwitz_bounds import (
    Comparison,
    CoverData,
    F_compare,
    F_expression,
    ab_ratio,
    attaining_orders,
    bound_ratio_less,
    bound_report,
    census_exceptional,
    exceptional_genera,
    exceptional_orders,
    hurwitz_genus,
    lambda_criterion,
    load_group_counts,
    ramification_ratio,
    surd_sign,
)


def F_float(g):
    return 4 * g + 2 * (g + 1) * math.sqrt(g)


@given(st.integers(min_value=2, max_value=400), st.integers(min_value=1, max_value=20000))
def test_F_compare_agrees_with_floats(g, n):
    """Test the exact comparison against floating point away from ties"""
    value = F_float(g)
    if abs(n - value) > 1e-6:
        expected = Comparison.GREATER if n > value else Comparison.LESS
        assert F_compare(n, g) == expected


@given(st.integers(min_value=2, max_value=60))
def test_F_is_attained_on_squares(s):
    """Test F(s^2) = 2s(s+1)^2 exactly"""
    assert F_compare(2 * s * (s + 1) ** 2, s * s) == Comparison.EQUAL


def test_F_expression():
    """Test the symbolic form of F"""
    assert F_expression(4) == 36
    assert F_expression(16) == 200


def test_exceptional_genera():
    """Test that only g = 5..8 have 12(g-1) > F(g)"""
    assert exceptional_genera(500) == [5, 6, 7, 8]


def test_exceptional_orders():
    """Test the orders strictly above F(g) and at most 12(g-1)"""
    assert exceptional_orders(5) == [47, 48]
    assert exceptional_orders(6) == [59, 60]
    assert exceptional_orders(7) == [71, 72]
    assert exceptional_orders(8) == [83, 84]
    assert exceptional_orders(9) == []


def test_census_of_exceptional_groups():
    """Test the 134 groups and the single non-solvable order"""
    groups, nonsolvable = load_group_counts()
    report = census_exceptional(groups, nonsolvable, [5, 6, 7, 8])
    assert report.total == 134
    assert [row["count"] for row in report.per_genus] == [53, 14, 51, 16]
    assert report.nonsolvable == [{"order": 60, "count": 1}]
    assert report.to_dict()["interval"] == "F(g) < |A| <= 12(g-1)"


def test_census_missing_orders():
    """Test that incomplete count tables are refused"""
    with pytest.raises(InvalidInputError):
        census_exceptional({47: 1}, {}, [5])


def test_ramification_ratio_and_genus():
    """Test Riemann-Hurwitz for the (2, 3, 7) and wild covers"""
    assert ramification_ratio([BranchDatum(2), BranchDatum(3), BranchDatum(7)]) == Fraction(1, 84)
    cover = CoverData(168, [BranchDatum(2), BranchDatum(3), BranchDatum(7)])
    assert hurwitz_genus(cover) == 3
    assert ab_ratio(cover) == (1, 84)
    wild = CoverData(36, [BranchDatum(6, 3), BranchDatum(2), BranchDatum(2)], p=3).validate()
    assert hurwitz_genus(wild) == 4


def test_cover_validation():
    """Test that non-ordinary branch data is refused"""
    with pytest.raises(InvalidInputError):
        CoverData(36, [BranchDatum(6, 4)], p=3).validate()
    with pytest.raises(InvalidInputError):
        CoverData(10, [BranchDatum(4)]).validate()
    with pytest.raises(GenusError):
        ab_ratio(CoverData(6, [BranchDatum(2), BranchDatum(3)]))


def test_bound_report_verdicts():
    """Test classical, within-F and exceeding orders"""
    assert bound_report(4, 36).verdict == "classical"
    assert bound_report(16, 200).verdict == "within F"
    assert bound_report(16, 200).f_comparison == Comparison.EQUAL
    assert bound_report(16, 201).verdict == "exceeds"
    assert bound_report(16, 201).to_dict()["classical_bound"] == 180
    with pytest.raises(GenusError):
        bound_report(1, 10)


def test_attaining_orders():
    """Test s with g = s^2, |A| = F(g) and (g-1)/|A| = a/b"""
    assert attaining_orders(1, 12) == [2, 3]
    assert attaining_orders(3, 40) == [4]
    assert attaining_orders(1, 7) == []


def test_lambda_criterion():
    """Test lambda0 * b <= F(lambda0 * a + 1)"""
    assert lambda_criterion(1, 1, 12)
    assert lambda_criterion(3, 1, 12)
    assert not lambda_criterion(1, 1, 40)


def test_surd_sign():
    """Test signs of a + b sqrt(m) - c sqrt(n)"""
    assert surd_sign(0, 1, 2, 1, 2) == 0
    assert surd_sign(1, 1, 2, 1, 3) == 1
    assert surd_sign(0, 1, 2, 1, 3) == -1
    assert surd_sign(-3, 2, 2, 0, 0) == -1


def test_bound_ratio_less():
    """Test F(x)/(x-1) < F(y)/(y-1) exactly"""
    assert bound_ratio_less(4, 16)
    assert not bound_ratio_less(4, 9)
    assert not bound_ratio_less(16, 4)
    with pytest.raises(InvalidInputError):
        bound_ratio_less(1, 4)
