"""
Tests for the normalizer case catalog
"""

from fractions import Fraction

import pytest

from mumford_tools.case_catalog import (
    CaseId,
    attains_bound,
    build_case,
    case_ab,
    case_cover,
    case_mu,
    case_report,
    lambda0,
    sample_cases,
)
from mumford_tools.framework import CatalogError
from mumford_tools.hurwitz_bounds import ramification_ratio

ASM3 = "F2 p=3 t=1 n=2 t1=0 t2=0"


def test_parse_descriptor():
    """Test descriptors and their printed form"""
    case = CaseId.parse("A1 p=3 t=1 t1=2 PSL")
    assert case.family == "A1" and case.special and case.t1 == 2
    assert CaseId.parse(str(case)) == case
    segment = CaseId.parse("E p=7 v1=Dn(3) e=Zn(3) v0=T")
    assert (segment.v1, segment.e, segment.v0) == ("Dn(3)", "Zn(3)", "T")


@pytest.mark.parametrize("text", ["", "Q p=3", "A1 t=1 t1=2", "A1 p=3 x=2", "A1 p=3 t1"])
def test_parse_rejects(text):
    """Test malformed descriptors"""
    with pytest.raises(CatalogError):
        CaseId.parse(text)


@pytest.mark.parametrize("descriptor,a,b", [
    ("A1 p=3 t=1 t1=2", 5, 72),
    ("A1 p=3 t=1 t1=2 PSL", 5, 36),
    ("A2 p=3 t=1 t1=1 t2=2", 13, 72),
    ("A3 p=3 t=1 t1=1 t3=2", 5, 18),
    ("A5 p=3 t=1 t5=1", 1, 6),
    ("A5 p=3 t=3 t5=3", 25, 702),
    ("B p=5 t1=1 t2=1 n=2", 15, 50),
    (ASM3, 1, 12),
    ("A1'' p=2 t1=2 t2=1 n=3", 1, 12),
])
def test_closed_form_ab(descriptor, a, b):
    """Test the closed-form (a, b) against mu of the built tree"""
    case = CaseId.parse(descriptor)
    got_a, got_b, source = case_ab(case)
    assert (got_a, got_b) == (a, b)
    assert source == "table"
    assert case_mu(case) == Fraction(a, b)


def test_mu_fallback():
    """Test (a, b) read off mu when no closed form applies"""
    a, b, source = case_ab(CaseId.parse("F2 p=3 t=1 n=2 t1=1 t2=0"))
    assert source == "mu"
    assert Fraction(a, b) == case_mu(CaseId.parse("F2 p=3 t=1 n=2 t1=1 t2=0"))


def test_segment_case():
    """Test a case (E) segment"""
    tree = build_case(CaseId.parse("E p=7 v1=Dn(3) e=Zn(3) v0=T"))
    assert [str(n.tag) for n in tree.vertices] == ["Dn(3)", "T"]
    assert case_mu(CaseId.parse("E p=7 v1=Dn(3) e=Zn(3) v0=T")) == Fraction(1, 12)
    with pytest.raises(CatalogError):
        build_case(CaseId.parse("E p=7 v1=T e=Zn(3) v0=Dn(3)"))


def test_structural_rules_become_catalog_errors():
    """Test that a violated tree rule is reported with its name"""
    with pytest.raises(CatalogError) as info:
        build_case(CaseId.parse("E p=7 v1=Dn(5) e=Zn(3) v0=T"))
    assert info.value.data["rule"] == "order-divisibility"
    with pytest.raises(CatalogError):
        build_case(CaseId.parse("A1 p=3 t=1 t1=1"))
    with pytest.raises(CatalogError):
        build_case(CaseId.parse("A1 p=2 t=1 t1=2 PSL"))


def test_cover_matches_mu():
    """Test that the ends give the same ratio as mu"""
    case = CaseId.parse("A1 p=3 t=1 t1=2")
    assert [b.as_tuple() for b in case_cover(case)] == [(4, 1), (18, 9)]
    assert ramification_ratio(case_cover(case)) == case_mu(case)


def test_lambda_bounds():
    """Test lambda0 for the cases that carry one"""
    assert lambda0(CaseId.parse("A1 p=3 t=1 t1=2")).value == 9
    assert lambda0(CaseId.parse("A1 p=3 t=1 t1=2")).kind == "divides"
    bound = lambda0(CaseId.parse(ASM3))
    assert (bound.value, bound.kind) == (6, "order-bound")
    assert lambda0(CaseId.parse("A3 p=3 t=1 t1=1 t3=2")).kind == "trivial"


def test_asm_case_attains_bound():
    """Test that only g = 4 reaches F(g) in characteristic 3, although mu = 1/12 also fits g = 9"""
    result = attains_bound(CaseId.parse(ASM3))
    assert result.attains
    assert [w["g"] for w in result.witnesses] == [4]
    assert result.witnesses[0]["aut_order"] == 36


@pytest.mark.parametrize("descriptor,genus", [
    ("F2 p=5 t=1 n=4 t1=0 t2=0", 16),
    ("F2 p=3 t=2 n=8 t1=0 t2=0", 64),
    ("A1'' p=2 t1=2 t2=1 n=3", 9),
])
def test_asm_normalizers_attain(descriptor, genus):
    """Test g = (q-1)^2 witnesses in odd characteristic and in characteristic 2"""
    result = attains_bound(CaseId.parse(descriptor))
    assert [w["g"] for w in result.witnesses] == [genus]


@pytest.mark.parametrize("descriptor", [
    "A1 p=2 t=1 t1=2",
    "A2 p=2 t=1 t1=1 t2=2",
    "A4 p=2 t=1 t4=2",
    "A1 p=3 t=1 t1=2",
    "F1 p=3 t=1 t1=0 t2=0 t3=1",
    "B p=5 t1=1 t2=1 n=2",
    "B p=7 t1=1 t2=1 n=2",
])
def test_other_normalizers_do_not_attain(descriptor):
    """Test that trees other than B(t, q-1) --Z-- D_{q-1} never reach F(g)"""
    result = attains_bound(CaseId.parse(descriptor))
    assert not result.attains
    assert result.witnesses == []


def test_attainment_over_sweep():
    """Test that every attaining case on the grid is an ASM normalizer"""
    for case in sample_cases([2, 3, 5], 2, 3):
        if not attains_bound(case).attains:
            continue
        if case.family == "F2":
            assert (case.t1, case.t2, case.n) == (0, 0, case.q - 1), str(case)
        else:
            assert case.family == "A1''", str(case)
            assert case.t2 == 1 and 2 ** case.t1 == case.n + 1, str(case)


def test_case_report():
    """Test the full report of a case"""
    report = case_report(CaseId.parse(ASM3))
    assert report["consistent"]
    assert report["classical"]
    assert report["mu"] == Fraction(1, 12)
    assert report["ends"] == [(6, 3), (2, 1), (2, 1)]
    # lambda0 = 6 is only an order bound here: 6 * 12 > F(7)
    assert not report["lambda_criterion"]
    assert report["attains"]["attains"]


@pytest.mark.parametrize("primes,max_t", [([3], 1), ([2], 2), ([5], 1)])
def test_sampled_cases_are_consistent(primes, max_t):
    """Test mu = Hurwitz ratio = a/b on the sweep grid"""
    cases = list(sample_cases(primes, max_t, 2))
    assert cases
    for case in cases:
        report = case_report(case)
        assert report["consistent"], str(case)
        assert report["mu"] > 0, str(case)
