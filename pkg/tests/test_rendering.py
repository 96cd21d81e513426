"""
Tests for table rendering
"""

from fractions import Fraction

from mumford_tools.rendering import colorize, frame_to_csv, frame_to_markdown, headline, rows_frame


def test_rows_frame_stringifies_fractions():
    """Test that Fraction columns become strings"""
    frame = rows_frame([{"case": "A5", "mu": Fraction(1, 6)}, {"case": "B", "mu": Fraction(3, 10)}])
    assert list(frame["mu"]) == ["1/6", "3/10"]
    assert list(frame["case"]) == ["A5", "B"]


def test_markdown_and_csv():
    """Test the two table formats"""
    frame = rows_frame([{"g": 4, "aut_order": 36}])
    markdown = frame_to_markdown(frame)
    assert "|" in markdown
    assert "36" in markdown
    assert frame_to_csv(frame).splitlines() == ["g,aut_order", "4,36"]
    assert frame_to_markdown(rows_frame([])) == ""


def test_colorize():
    """Test status colours"""
    assert colorize("ok", "match") != "ok"
    assert "ok" in colorize("ok", "match")
    assert colorize("plain", "unknown") == "plain"
    assert "done" in headline("done", True)
