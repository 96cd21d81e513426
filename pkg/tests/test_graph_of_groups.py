"""
Tests for trees of finite groups: mu, genus, contraction and stratum dimension
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mumford_tools.finite_groups import GroupTag
from mumford_tools.framework import ContractionError, ErrorCode, GenusError, TreeStructureError
from mumford_tools.graph_of_groups import (
    GroupTree,
    TreeEdge,
    contract,
    herrlich_counts,
    herrlich_dim,
    kps_genus,
    mu,
    subtree,
)

P = 7
I, D5 = GroupTag.icosa(P), GroupTag.dihedral(P, 5)
Z2, Z3, Z5 = (GroupTag.cyclic(P, n) for n in (2, 3, 5))


@pytest.fixture
def icosahedral_tree():
    return GroupTree.chain(P, [I, Z5, D5], ends=[(0, Z2), (0, Z3), (1, Z2), (1, Z2)]).validate()


def test_mu_and_genus(icosahedral_tree):
    """Test mu = 1/5 - 1/60 - 1/10 and the genus 6 quotient"""
    assert mu(icosahedral_tree) == Fraction(1, 12)
    assert icosahedral_tree.mu() == Fraction(1, 12)
    assert kps_genus(icosahedral_tree, 60) == 6
    assert kps_genus(icosahedral_tree, 120) == 11


def test_genus_must_be_integral(icosahedral_tree):
    """Test that |N/Gamma| * mu must be a positive integer"""
    with pytest.raises(GenusError):
        kps_genus(icosahedral_tree, 7)


def test_chain_needs_odd_length():
    """Test the vertex, edge, vertex alternation"""
    with pytest.raises(TreeStructureError):
        GroupTree.chain(P, [I, Z5])


def test_validate_names_the_rule():
    """Test that a non-subgroup edge is reported with its rule"""
    tree = GroupTree.chain(P, [I, Z3, D5])
    with pytest.raises(TreeStructureError) as info:
        tree.validate()
    assert info.value.data["rule"] == "order-divisibility"
    assert info.value.code == ErrorCode.INVALID_INPUT


def test_validate_rejects_non_maximal_cyclic_edge():
    """Test that edge groups must be maximal cyclic in their vertices"""
    tree = GroupTree.chain(P, [GroupTag.pgl2(P, 1), Z3, GroupTag.dihedral(P, 3)])
    with pytest.raises(TreeStructureError) as info:
        tree.validate()
    assert info.value.data["rule"] == "maximal-cyclic"


def test_validate_rejects_non_admissible_edge():
    """Test that dihedral edge groups are refused"""
    tree = GroupTree.chain(P, [I, GroupTag.dihedral(P, 2), GroupTag.dihedral(P, 2)])
    with pytest.raises(TreeStructureError) as info:
        tree.validate()
    assert info.value.data["rule"] == "edge-admissibility"


def test_serialization(icosahedral_tree):
    """Test JSON and DOT output"""
    restored = GroupTree.from_json(icosahedral_tree.to_json())
    assert restored.to_dict() == icosahedral_tree.to_dict()
    assert mu(restored) == Fraction(1, 12)
    dot = icosahedral_tree.to_dot("N")
    assert dot.startswith("graph N {")
    assert "style=dashed" in dot


def test_subtree(icosahedral_tree):
    """Test induced subtrees keep only their ends"""
    single = subtree(icosahedral_tree, ["v0"])
    assert single.ids() == ["v0"]
    assert len(single.ends) == 2
    with pytest.raises(TreeStructureError):
        subtree(icosahedral_tree, ["v9"])


def test_contract_increasing_branch():
    """Test contraction moves ends onto the kept vertex"""
    tree = GroupTree.chain(P, [Z5, Z5, I], ends=[(0, Z5)])
    result = contract(tree, ["v1"])
    assert result.ids() == ["v1"]
    assert [end.at for end in result.ends] == ["v1"]


def test_contract_reports_witness():
    """Test the geodesic witness when stabilizers do not increase"""
    tree = GroupTree.chain(P, [D5, Z5, I])
    with pytest.raises(ContractionError) as info:
        contract(tree, ["v1"])
    assert info.value.witness[0].startswith("v0:")
    assert info.value.witness[-1].startswith("v1:")
    assert info.value.code == ErrorCode.MISMATCH



def parabolic_tree(data):
    """Random tree over p = 2: a kept core of E(4) vertices with p-group branches shrinking away from it"""
    size = data.draw(st.integers(min_value=2, max_value=12))
    kept = data.draw(st.integers(min_value=1, max_value=size - 1))
    levels = [4]
    tree = GroupTree(2).add_vertex("v0", GroupTag.elementary(2, 4))
    for i in range(1, size):
        j = data.draw(st.integers(min_value=0, max_value=i - 1))
        if i < kept:
            level = 4
            edge = GroupTag.elementary(2, data.draw(st.integers(min_value=1, max_value=4)))
        else:
            level = data.draw(st.integers(min_value=1, max_value=levels[j]))
            edge = GroupTag.elementary(2, level)
            tree.add_end(f"v{i}", GroupTag.elementary(2, 1))
        levels.append(level)
        tree.add_vertex(f"v{i}", GroupTag.elementary(2, level)).add_edge(f"v{j}", f"v{i}", edge)
    return tree, [f"v{i}" for i in range(kept)]


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_contraction_preserves_mu(data):
    """Test that contracting increasing branches keeps mu and moves every end onto the core"""
    tree, keep = parabolic_tree(data)
    result = contract(tree, keep)
    assert result.ids() == keep
    assert mu(result) == mu(tree)
    assert len(result.ends) == len(tree.ends)
    assert all(end.at in keep for end in result.ends)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_contraction_detects_a_shrinking_edge(data):
    """Test that a branch edge smaller than its outer vertex is reported with its geodesic"""
    tree, keep = parabolic_tree(data)
    victim = data.draw(st.integers(min_value=len(keep), max_value=len(tree.vertices) - 1))
    edge = tree.edges[victim - 1]
    tree.edges[victim - 1] = TreeEdge(edge.a, edge.b, GroupTag.cyclic(2, 1))
    with pytest.raises(ContractionError) as info:
        contract(tree, keep)
    assert info.value.witness[0].startswith(f"v{victim}:")
    assert info.value.witness[-1].split(":")[0] in keep

def test_stratum_dimension(icosahedral_tree):
    """Test 3(f + d_v - d_e - 1) + 2(c_v - c_e)"""
    counts = herrlich_counts(icosahedral_tree)
    assert (counts.cv, counts.dv, counts.ce, counts.de) == (0, 2, 1, 0)
    assert herrlich_dim(icosahedral_tree) == 1
    assert herrlich_dim(icosahedral_tree, f=1) == 4
