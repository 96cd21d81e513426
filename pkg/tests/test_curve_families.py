"""
Tests for the explicit curve families
"""

import pytest

from mumford_tools.curve_families import asm, drinfeld, drinfeld_order, henn_check, icosahedral
from mumford_tools.framework import CatalogError, GenusError, InvalidInputError


@pytest.mark.parametrize("p,t,genus,order", [(3, 1, 4, 36), (2, 2, 9, 96), (5, 1, 16, 200)])
def test_asm_curves_reach_F(p, t, genus, order):
    """Test genus (q-1)^2, 2q^2(q-1) automorphisms and |Aut| = F(g)"""
    record = asm(p, t)
    assert record.genus == genus
    assert record.aut_order == order
    assert record.consistent
    assert record.checks["attains_F"]
    assert record.bound.verdict in ("classical", "within F")


def test_asm_genus_one():
    """Test that q = 2 gives an elliptic curve"""
    with pytest.raises(GenusError):
        asm(2, 1)


def test_drinfeld_orders():
    """Test |G(n)| for one prime of degree 2"""
    assert drinfeld_order(2, [2]) == 60
    assert drinfeld_order(3, [2]) == 720
    assert drinfeld_order(2, [1, 1]) == 36


def test_drinfeld_curves():
    """Test X(n) of genus 6 over F_2 and genus 51 over F_3"""
    small = drinfeld(2, [2])
    assert (small.genus, small.aut_order) == (6, 60)
    assert small.consistent
    assert small.stratum_dim == 1
    assert any("q = 2" in flag for flag in small.flags)

    larger = drinfeld(3, [2])
    assert (larger.genus, larger.aut_order) == (51, 720)
    assert larger.consistent


def test_drinfeld_rejects_bad_input():
    """Test non prime powers, empty degree lists and genus below 2"""
    with pytest.raises(InvalidInputError):
        drinfeld(6, [2])
    with pytest.raises(InvalidInputError):
        drinfeld(4, [])
    with pytest.raises(GenusError):
        drinfeld(2, [1])


@pytest.mark.parametrize("p", [3, 7, 11])
def test_icosahedral_genus_six(p):
    """Test the genus 6 curves with 60 automorphisms"""
    record = icosahedral(p)
    assert (record.genus, record.aut_order) == (6, 60)
    assert record.consistent
    assert record.bound.verdict == "classical"


def test_icosahedral_excluded_characteristics():
    """Test that A5 is not in PGL(2, k) for p = 2, 5"""
    for p in (2, 5):
        with pytest.raises(CatalogError):
            icosahedral(p)


def test_henn_relation():
    """Test A_0 = A_1 (A_1 - 1)"""
    assert henn_check(6, 3)
    assert henn_check(12, 4)
    assert not henn_check(8, 4)
    assert not henn_check(5, 1)
    with pytest.raises(InvalidInputError):
        henn_check(6, 4)


def test_record_serializes():
    """Test the dictionary form of a family record"""
    data = asm(3, 1).to_dict()
    assert data["genus"] == 4
    assert data["bound"]["f_comparison"] == "equal"
    assert data["checks"]["kps_genus"]
