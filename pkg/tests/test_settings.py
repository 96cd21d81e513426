"""
Tests for configuration and the census data generator
"""

import pytest

from census_data_generator import build_counts, nonsolvable_count
from mumford_tools.hurwitz_bounds import load_group_counts
from settings import get_setting, golden_path


def test_get_setting():
    """Test section lookups and defaults"""
    assert get_setting("census", "expected_total") == 134
    assert get_setting("field", "missing", 7) == 7
    assert "window" in get_setting("tree")
    with pytest.raises(ValueError):
        get_setting("nowhere", "x")


def test_golden_path():
    """Test paths of the shipped data files"""
    assert golden_path("group_counts.yaml").endswith("group_counts.yaml")


def test_nonsolvable_count():
    """Test that A5 is the only non-solvable group below 120"""
    assert nonsolvable_count(60) == 1
    assert nonsolvable_count(48) == 0
    assert nonsolvable_count(84) == 0
    with pytest.raises(ValueError):
        nonsolvable_count(120)


def test_generator_matches_shipped_counts():
    """Test that regenerated counts equal the shipped data"""
    groups, nonsolvable = load_group_counts()
    counts = build_counts([5, 6, 7, 8])
    assert {n: row["groups"] for n, row in counts.items()} == groups
    assert {n: row["nonsolvable"] for n, row in counts.items()} == nonsolvable
