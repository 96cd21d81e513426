"""
Tests for the Bruhat-Tits tree: vertices, distances, apartments, mirrors
"""

import json

import pytest
from hypothesis import assume, given, settings, strategies as st

from mumford_tools.bt_tree import (
    Mat2,
    TreeVertex,
    Window,
    act,
    apartment,
    closure,
    distance,
    geodesic,
    is_fixed,
    lambda_vertex,
    link_rep,
    median,
    mirror,
    origin,
    tree_of_points,
    vertex_from_lattice,
)
from mumford_tools.framework import InvalidInputError
from mumford_tools.localfield import LocalElement, ProjPoint, make_field, parse_local

F3 = make_field(3, 1)


def point(text):
    if text == "inf":
        return ProjPoint.infinity(F3)
    return ProjPoint.finite(parse_local(text, F3))


@given(st.integers(min_value=-6, max_value=6))
def test_standard_apartment_distance(j):
    """Test d(Lambda_0, Lambda_j) = |j|"""
    assert distance(origin(F3), lambda_vertex(F3, j)) == abs(j)


def test_neighbors_are_at_distance_one():
    """Test the q + 1 neighbours of a vertex"""
    v = TreeVertex.make(1, parse_local("2", F3))
    neighbors = v.neighbors()
    assert len(neighbors) == F3.q + 1
    assert len(set(neighbors)) == F3.q + 1
    assert all(distance(v, w) == 1 for w in neighbors)


def test_geodesic_matches_distance():
    """Test the geodesic path has distance + 1 vertices"""
    v = TreeVertex.make(2, parse_local("1 + π", F3))
    w = TreeVertex.make(1, parse_local("2", F3))
    assert distance(v, w) == 3
    path = geodesic(v, w)
    assert len(path) == 4
    assert path[0] == v and path[-1] == w
    assert all(distance(a, b) == 1 for a, b in zip(path, path[1:]))


def test_vertex_from_lattice():
    """Test the normal form of a diagonal lattice"""
    m = Mat2.diag(F3, LocalElement.pi(F3, 2))
    assert vertex_from_lattice(m) == TreeVertex(2, LocalElement.zero(F3))
    with pytest.raises(InvalidInputError):
        vertex_from_lattice(Mat2.of(F3, 1, 1, 1, 1))


def test_action_preserves_distance():
    """Test that PGL(2) acts by isometries"""
    g = Mat2.of(F3, 1, LocalElement.pi(F3, -1), 1, 2)
    v = TreeVertex.make(2, parse_local("1 + π", F3))
    w = lambda_vertex(F3, 1)
    assert distance(act(g, v), act(g, w)) == distance(v, w)


@pytest.mark.parametrize("radius,size", [(0, 1), (1, 5), (2, 17)])
def test_window_sizes(radius, size):
    """Test ball sizes 1 + (q+1)(q^r - 1)/(q - 1)"""
    window = Window(F3, radius)
    assert len(window.vertices()) == size
    assert len(window.ball()) == size
    assert window.ball().is_connected()


def test_median():
    """Test medians of triples of points"""
    assert median(point("0"), point("1"), point("inf")) == origin(F3)
    assert median(point("0"), point("π"), point("inf")) == TreeVertex(1, LocalElement.zero(F3))
    assert median(point("inf"), point("0"), point("π^2")) == TreeVertex(2, LocalElement.zero(F3))


def test_apartment_zero_to_infinity():
    """Test the apartment ]0, inf[ is the standard one"""
    path = apartment(point("0"), point("inf"), (-1, 1))
    assert [v.n for v in path] == [1, 0, -1]
    assert all(v.u.is_exact_zero for v in path)
    with pytest.raises(InvalidInputError):
        apartment(point("1"), point("1"), (-1, 1))


def test_apartment_between_finite_points():
    """Test the apartment between 0 and 1 turns at the origin"""
    path = apartment(point("0"), point("1"), (-2, 2))
    assert origin(F3) in path
    assert all(distance(a, b) == 1 for a, b in zip(path, path[1:]))


def test_mirror_of_diagonal_involution():
    """Test that diag(-1, 1) fixes exactly the standard apartment"""
    g = Mat2.diag(F3, -1)
    window = mirror(g, Window(F3, 2))
    assert len(window) == 5
    assert window.is_connected()
    assert sorted(v.n for v in window.vertices) == [-2, -1, 0, 1, 2]
    assert all(v.u.is_exact_zero for v in window.vertices)


def test_mirror_needs_finite_order():
    """Test that a hyperbolic element has no mirror"""
    g = Mat2.diag(F3, LocalElement.pi(F3))
    with pytest.raises(InvalidInputError):
        mirror(g, Window(F3, 1))


def test_tree_of_points_serializes():
    """Test the span of four points and its JSON and DOT forms"""
    points = [point("0"), point("1"), point("inf"), point("π")]
    window = tree_of_points(points, Window(F3, 3))
    assert origin(F3) in window
    assert window.is_connected()
    data = json.loads(window.to_json())
    assert len(data["vertices"]) == len(window)
    assert window.to_dot("span").startswith("graph span {")


def test_projective_orders_and_closure():
    """Test orders of torsion elements and the size of PGL(2, 3)"""
    assert Mat2.tau(F3, 1).projective_order(100) == 3
    assert Mat2.diag(F3, -1).projective_order(100) == 2
    assert Mat2.antidiag(F3).projective_order(100) == 2
    generators = [Mat2.diag(F3, -1), Mat2.tau(F3, 1), Mat2.antidiag(F3)]
    assert len(closure(generators)) == 24


def test_link_representation():
    """Test the reduction of stabilizer generators at the origin"""
    gens = [Mat2.diag(F3, -1), Mat2.tau(F3, LocalElement.pi(F3))]
    assert all(is_fixed(g, origin(F3)) for g in gens)
    rep = link_rep(gens, origin(F3))
    assert not rep.is_kernel(0)
    assert rep.is_kernel(1)
    with pytest.raises(InvalidInputError):
        link_rep([Mat2.diag(F3, LocalElement.pi(F3))], origin(F3))


F2 = make_field(2, 1)
F4 = make_field(2, 2)


def climb_distance(v, w):
    """Distance found by walking both vertices up to their common ancestor"""
    steps = 0
    while v.n > w.n:
        v, steps = v.parent(), steps + 1
    while w.n > v.n:
        w, steps = w.parent(), steps + 1
    while v != w:
        v, w, steps = v.parent(), w.parent(), steps + 2
    return steps


def scan_median(x, y, z):
    """Deepest level at which two of the three truncations agree"""
    for n in range(12, -12, -1):
        tx, ty, tz = (a.reduce_mod(n) for a in (x, y, z))
        for a, b in [(tx, ty), (ty, tz), (tx, tz)]:
            if a == b:
                return TreeVertex.make(n, a)
    raise AssertionError("no agreement within the scanned levels")


digits = st.lists(st.integers(min_value=0, max_value=2), min_size=8, max_size=8)


def series(ds, low=-4):
    return LocalElement.from_dict(F3, {low + i: d for i, d in enumerate(ds)})


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-3, max_value=3), digits, st.integers(min_value=-3, max_value=3), digits)
def test_distance_against_common_ancestor(n, du, m, dw):
    """Test the elementary-divisor distance and the geodesic against a walk up the tree"""
    v = TreeVertex.make(n, series(du))
    w = TreeVertex.make(m, series(dw))
    d = climb_distance(v, w)
    assert distance(v, w) == d
    assert len(geodesic(v, w)) == d + 1


@settings(max_examples=200, deadline=None)
@given(digits, digits, digits)
def test_median_against_level_scan(dx, dy, dz):
    """Test medians of three finite points against a scan of their truncations"""
    x, y, z = (series(d, low=0) for d in (dx, dy, dz))
    assume(x != y and y != z and x != z)
    m = median(*(ProjPoint.finite(a) for a in (x, y, z)))
    assert m == scan_median(x, y, z)


@pytest.mark.parametrize("k", range(-3, 4))
def test_mirror_of_translation(k):
    """Test that tau(pi^k) fixes exactly the vertices (n, u) with n <= k"""
    window = Window(F2, 8)
    fixed = mirror(Mat2.tau(F2, LocalElement.pi(F2, k)), window)
    expected = {v for v in window.vertices() if v.n <= k}
    assert set(fixed.vertices) == expected
    assert fixed.is_connected()
    levels = sorted(-v.n for v in fixed.vertices if v.u.is_exact_zero)
    assert levels == list(range(-k, 9))


@pytest.mark.parametrize("p,t", [(2, 1), (3, 1), (2, 2)])
def test_valency(p, t):
    """Test q + 1 distinct neighbours for q in {2, 3, 4}"""
    spec = make_field(p, t)
    for v in [origin(spec), TreeVertex.make(2, LocalElement.constant(spec, 1)), lambda_vertex(spec, 3)]:
        neighbors = v.neighbors()
        assert len(set(neighbors)) == spec.q + 1
        assert all(distance(v, w) == 1 for w in neighbors)


@pytest.mark.parametrize("spec", [F2, F4])
def test_link_kernel_in_characteristic_two(spec):
    """Test that tau(pi) acts trivially on the link of the origin and tau(1) does not"""
    gens = [Mat2.tau(spec, 1), Mat2.tau(spec, LocalElement.pi(spec)), Mat2.diag(spec, LocalElement.pi(spec, 2))]
    rep = link_rep(gens[:2], origin(spec))
    assert rep.kernel == [1]
    with pytest.raises(InvalidInputError):
        link_rep(gens, origin(spec))
    if spec.q == 4:
        g = spec.parse("g")
        rep = link_rep([Mat2.diag(spec, g), Mat2.diag(spec, g, g)], origin(spec))
        assert rep.kernel == [1]
