"""
The Bruhat-Tits tree of PGL(2, K), K = F_q((pi)).

A vertex is stored in the ball model: (n, u) is the class of the lattice spanned by
the columns of [[pi^n, u], [0, 1]], which corresponds to the ball
{z : v(z - u) >= n}.  The parent of (n, u) is (n-1, u mod pi^(n-1)); its q children
are (n+1, u + c pi^n), c in F_q.  The standard apartment vertex
Lambda_j = O e0 + O pi^j e1 is (-j, 0).
"""

import itertools
import json
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from settings import get_setting

from .framework import IndeterminateError, InvalidInputError
from .localfield import INF, FqElement, FqSpec, LocalElement, ProjPoint

logger = logging.getLogger("Mumford.bt_tree")

Scalar = Union[LocalElement, FqElement, int]


def _lift(spec: FqSpec, x: Scalar) -> LocalElement:
    if isinstance(x, LocalElement):
        return x
    return LocalElement.constant(spec, x)


@dataclass(frozen=True)
class Mat2:
    """2x2 matrix over K acting projectively; rows (a b) and (c d)."""
    a: LocalElement
    b: LocalElement
    c: LocalElement
    d: LocalElement

    @property
    def spec(self) -> FqSpec:
        return self.a.spec

    @classmethod
    def of(cls, spec: FqSpec, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> "Mat2":
        return cls(_lift(spec, a), _lift(spec, b), _lift(spec, c), _lift(spec, d))

    @classmethod
    def identity(cls, spec: FqSpec) -> "Mat2":
        return cls.of(spec, 1, 0, 0, 1)

    @classmethod
    def diag(cls, spec: FqSpec, x: Scalar, y: Scalar = 1) -> "Mat2":
        return cls.of(spec, x, 0, 0, y)

    @classmethod
    def tau(cls, spec: FqSpec, x: Scalar) -> "Mat2":
        """Translation z -> z + x."""
        return cls.of(spec, 1, x, 0, 1)

    @classmethod
    def tau_lower(cls, spec: FqSpec, x: Scalar) -> "Mat2":
        """Lower unipotent (1 0; x 1)."""
        return cls.of(spec, 1, 0, x, 1)

    @classmethod
    def antidiag(cls, spec: FqSpec) -> "Mat2":
        """The involution (0 1; -1 0)."""
        return cls.of(spec, 0, 1, -1, 0)

    def entries(self) -> Tuple[LocalElement, LocalElement, LocalElement, LocalElement]:
        return self.a, self.b, self.c, self.d

    def __mul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def scale(self, x: Scalar) -> "Mat2":
        x = _lift(self.spec, x)
        return Mat2(self.a * x, self.b * x, self.c * x, self.d * x)

    def shift(self, k: int) -> "Mat2":
        """Multiply every entry by pi^k."""
        return Mat2(self.a.shift(k), self.b.shift(k), self.c.shift(k), self.d.shift(k))

    def det(self) -> LocalElement:
        return self.a * self.d - self.b * self.c

    def adjugate(self) -> "Mat2":
        """det * inverse; the inverse in PGL(2)."""
        return Mat2(self.d, -self.b, -self.c, self.a)

    def min_valuation(self) -> int:
        vals = [x.valuation() for x in self.entries() if not x.is_exact_zero]
        if not vals:
            raise InvalidInputError("Zero matrix")
        return min(vals)

    def is_invertible(self) -> bool:
        return not self.det().is_zero()

    def is_scalar(self) -> bool:
        """True if the matrix is the identity of PGL(2)."""
        return self.b.is_zero() and self.c.is_zero() and (self.a - self.d).is_zero()

    def projective_key(self) -> tuple:
        """
        Hashable normal form up to monomial scalars: the first nonzero entry is
        scaled to have leading term 1*pi^0.  Canonical on groups whose
        determinants are monomials.
        """
        for x in self.entries():
            if not x.is_exact_zero:
                lead = x.leading()
                normal = self.shift(-x.valuation()).scale(lead.inverse())
                return tuple((y.terms, y.precision) for y in normal.entries())
        raise InvalidInputError("Zero matrix has no projective class")

    def projectively_equal(self, other: "Mat2") -> bool:
        """M ~ M' iff all 2x2 minors of the pair of entry vectors vanish."""
        xs, ys = self.entries(), other.entries()
        for i, j in itertools.combinations(range(4), 2):
            if not (xs[i] * ys[j] - xs[j] * ys[i]).is_zero():
                return False
        return True

    def __pow__(self, k: int) -> "Mat2":
        if k < 0:
            return self.adjugate() ** (-k)
        result, base = Mat2.identity(self.spec), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def projective_order(self, cap: int) -> Optional[int]:
        """Order in PGL(2,K), or None if no power up to `cap` is scalar."""
        power = self
        for k in range(1, cap + 1):
            if power.is_scalar():
                return k
            power = power * self
        return None

    def act_point(self, z: ProjPoint) -> ProjPoint:
        """Moebius action z -> (az + b)/(cz + d)."""
        if z.is_infinity:
            return ProjPoint.from_pair(self.a, self.c)
        return ProjPoint.from_pair(self.a * z.value + self.b, self.c * z.value + self.d)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


def torsion_cap(spec: FqSpec) -> int:
    """Order search cap: cap_factor * q^2 * (q^2 - 1)."""
    q = spec.q
    return int(get_setting("tree", "cap_factor", 2)) * q * q * (q * q - 1)


def closure(gens: Sequence[Mat2], cap: int = 5000) -> List[Mat2]:
    """
    Enumerate the finite subgroup of PGL(2,K) generated by `gens` (identity first).

    Raises:
        InvalidInputError: If more than `cap` elements appear
    """
    if not gens:
        raise InvalidInputError("closure needs at least one generator")
    identity = Mat2.identity(gens[0].spec)
    elements = {identity.projective_key(): identity}
    frontier = [identity]
    while frontier:
        fresh = []
        for g in frontier:
            for h in gens:
                k = g * h
                key = k.projective_key()
                if key not in elements:
                    elements[key] = k
                    fresh.append(k)
        if len(elements) > cap:
            raise InvalidInputError(f"Group generated exceeds {cap} elements")
        frontier = fresh
    logger.debug(f"closure: {len(elements)} elements from {len(gens)} generators")
    return list(elements.values())


@dataclass(frozen=True)
class TreeVertex:
    """Vertex (n, u) of the tree; u is an exact representative reduced mod pi^n."""
    n: int
    u: LocalElement

    @classmethod
    def make(cls, n: int, u: LocalElement) -> "TreeVertex":
        return cls(n, u.reduce_mod(n))

    @property
    def spec(self) -> FqSpec:
        return self.u.spec

    def matrix(self) -> Mat2:
        return Mat2(LocalElement.pi(self.spec, self.n), self.u,
                    LocalElement.zero(self.spec), LocalElement.one(self.spec))

    def parent(self) -> "TreeVertex":
        return TreeVertex.make(self.n - 1, self.u)

    def children(self) -> List["TreeVertex"]:
        return [
            TreeVertex(self.n + 1, self.u + LocalElement.monomial(self.spec, c, self.n))
            for c in self.spec.elements()
        ]

    def neighbors(self) -> List["TreeVertex"]:
        return [self.parent()] + self.children()

    def __str__(self) -> str:
        return f"({self.n}, {self.u})"


def origin(spec: FqSpec) -> TreeVertex:
    return TreeVertex(0, LocalElement.zero(spec))


def lambda_vertex(spec: FqSpec, j: int) -> TreeVertex:
    """Standard apartment vertex Lambda_j = O e0 + O pi^j e1, i.e. (-j, 0)."""
    return TreeVertex(-j, LocalElement.zero(spec))


def vertex_from_lattice(m: Mat2) -> TreeVertex:
    """
    Normal form of the lattice spanned by the columns of m.

    Raises:
        IndeterminateError: If valuations or the center are undetermined
    """
    det = m.det()
    vdet = det.valuation()
    if vdet == INF:
        raise InvalidInputError("Singular matrix does not span a lattice")
    vc = m.c.valuation()
    vd = m.d.valuation()
    if vd <= vc:
        n = vdet - 2 * vd
        u = m.b / m.d
    else:
        n = vdet - 2 * vc
        u = m.a / m.c
    return TreeVertex.make(int(n), u)


def distance(v: TreeVertex, w: TreeVertex) -> int:
    """Elementary-divisor distance: v(det T) - 2 min v(T_ij), T = adj(M_v) M_w."""
    t = v.matrix().adjugate() * w.matrix()
    return int(t.det().valuation() - 2 * t.min_valuation())


def act(g: Mat2, v: TreeVertex) -> TreeVertex:
    return vertex_from_lattice(g * v.matrix())


def is_fixed(g: Mat2, v: TreeVertex) -> bool:
    return act(g, v) == v


def _point_valuation(x: ProjPoint, y: ProjPoint) -> Union[int, float]:
    """v(x - y), with -inf when one of the points is infinity."""
    if x.is_infinity or y.is_infinity:
        if x.is_infinity and y.is_infinity:
            raise InvalidInputError("Coincident points")
        return -INF
    diff = x.value - y.value
    if diff.is_exact_zero:
        raise InvalidInputError("Coincident points")
    return diff.valuation()


def _ray_vertex(z: ProjPoint, n: int) -> TreeVertex:
    if z.is_infinity:
        return TreeVertex(n, LocalElement.zero(z.spec))
    return TreeVertex.make(n, z.value)


def apartment(x: ProjPoint, y: ProjPoint, levels: Tuple[int, int]) -> List[TreeVertex]:
    """
    Vertices of the geodesic line ]x, y[ whose level lies in `levels`, ordered from x to y.

    Raises:
        InvalidInputError: If x and y coincide
    """
    lo, hi = levels
    k = _point_valuation(x, y)
    if x.is_infinity:
        return [_ray_vertex(y, n) for n in range(lo, hi + 1)]
    if y.is_infinity:
        return [_ray_vertex(x, n) for n in range(hi, lo - 1, -1)]
    k = int(k)
    path = [_ray_vertex(x, n) for n in range(hi, max(k, lo) - 1, -1)]
    path += [_ray_vertex(y, n) for n in range(max(k + 1, lo), hi + 1)]
    return path


def median(x: ProjPoint, y: ProjPoint, z: ProjPoint) -> TreeVertex:
    """Common vertex of the three apartments ]x,y[, ]y,z[, ]x,z[."""
    pairs = [(x, y), (y, z), (x, z)]
    best = None
    for a, b in pairs:
        val = _point_valuation(a, b)
        if best is None or val > best[0]:
            best = (val, a)
    level, point = best
    return TreeVertex.make(int(level), point.value)


def geodesic(v: TreeVertex, w: TreeVertex) -> List[TreeVertex]:
    """Vertex path from v to w."""
    diff = v.u - w.u
    meet = min(v.n, w.n, diff.valuation() if not diff.is_exact_zero else INF)
    meet = int(meet)
    up = [TreeVertex.make(n, v.u) for n in range(v.n, meet - 1, -1)]
    down = [TreeVertex.make(n, w.u) for n in range(meet + 1, w.n + 1)]
    return up + down


@dataclass
class TreeWindow:
    """Finite piece of the tree: vertices, adjacency and marked boundary directions."""
    vertices: List[TreeVertex] = field(default_factory=list)
    edges: List[Tuple[int, int]] = field(default_factory=list)
    ends: List[str] = field(default_factory=list)

    @classmethod
    def induced(cls, vertices: Iterable[TreeVertex], ends: Optional[List[str]] = None) -> "TreeWindow":
        """Window on a vertex set with every tree edge between two members."""
        ordered = sorted(set(vertices), key=lambda v: (v.n, v.u.terms))
        index = {v: i for i, v in enumerate(ordered)}
        edges = []
        for v, i in index.items():
            parent = v.parent()
            if parent in index:
                edges.append((index[parent], i))
        return cls(ordered, sorted(edges), list(ends or []))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: TreeVertex) -> bool:
        return v in set(self.vertices)

    def degree(self, v: TreeVertex) -> int:
        i = self.vertices.index(v)
        return sum(1 for a, b in self.edges if i in (a, b))

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adjacency: Dict[int, List[int]] = {i: [] for i in range(len(self.vertices))}
        for a, b in self.edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        seen, queue = {0}, deque([0])
        while queue:
            for j in adjacency[queue.popleft()]:
                if j not in seen:
                    seen.add(j)
                    queue.append(j)
        return len(seen) == len(self.vertices)

    def to_dict(self) -> Dict:
        return {
            "vertices": [{"n": v.n, "u": str(v.u)} for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "marks": {"ends": list(self.ends)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    def to_dot(self, name: str = "window") -> str:
        lines = [f"graph {name} {{", "  node [shape=point];"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [xlabel="{v}"];')
        for a, b in self.edges:
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Window:
    """Ball of radius `radius` around `center` (default Lambda_0)."""
    spec: FqSpec
    radius: int
    center: Optional[TreeVertex] = None

    @property
    def middle(self) -> TreeVertex:
        return self.center if self.center is not None else origin(self.spec)

    def contains(self, v: TreeVertex) -> bool:
        return distance(self.middle, v) <= self.radius

    def vertices(self) -> List[TreeVertex]:
        start = self.middle
        seen = {start: 0}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            if seen[v] == self.radius:
                continue
            for w in v.neighbors():
                if w not in seen:
                    seen[w] = seen[v] + 1
                    queue.append(w)
        return list(seen)

    def ball(self) -> TreeWindow:
        """The whole window; boundary vertices are marked as end directions."""
        vertices = self.vertices()
        boundary = [str(v) for v in vertices if distance(self.middle, v) == self.radius]
        return TreeWindow.induced(vertices, boundary)


def mirror(g: Mat2, window: Window) -> TreeWindow:
    """
    Subtree of window vertices fixed by the finite-order element g.

    Raises:
        InvalidInputError: If g has no finite order below the torsion cap
    """
    order = g.projective_order(torsion_cap(g.spec))
    if order is None:
        raise InvalidInputError(f"Element is not of finite order within cap {torsion_cap(g.spec)}")
    fixed = [v for v in window.vertices() if is_fixed(g, v)]
    logger.debug(f"mirror: order {order}, {len(fixed)} fixed vertices")
    return TreeWindow.induced(fixed)


def tree_of_points(points: Sequence[ProjPoint], window: Window) -> TreeWindow:
    """Span of the medians of all 3-subsets of `points`, cut to the window."""
    if len(points) < 3:
        return TreeWindow()
    medians = {median(x, y, z) for x, y, z in itertools.combinations(points, 3)}
    span = set(medians)
    anchor = next(iter(medians))
    for m in medians:
        span.update(geodesic(anchor, m))
    inside = [v for v in span if window.contains(v)]
    return TreeWindow.induced(inside)


@dataclass
class LinkRepresentation:
    """Reduction of a vertex stabilizer to PGL(2, F_q)."""
    vertex: TreeVertex
    images: List[Tuple[FqElement, FqElement, FqElement, FqElement]]
    kernel: List[int]

    def is_kernel(self, i: int) -> bool:
        return i in self.kernel


def link_rep(gens: Sequence[Mat2], v: TreeVertex) -> LinkRepresentation:
    """
    Action of the stabilizer generators on the q+1 edges at v, as matrices over F_q.

    Raises:
        InvalidInputError: If a generator does not fix v
    """
    m = v.matrix()
    images, kernel = [], []
    for i, g in enumerate(gens):
        if not is_fixed(g, v):
            raise InvalidInputError(f"Generator {i} does not fix {v}")
        h = m.adjugate() * g * m
        h = h.shift(-h.min_valuation())
        reduced = tuple(x.coefficient(0) for x in h.entries())
        a, b, c, d = reduced
        if (a * d - b * c).is_zero():
            raise IndeterminateError(f"Reduction of generator {i} is singular")
        images.append(reduced)
        if b.is_zero() and c.is_zero() and a == d:
            kernel.append(i)
    return LinkRepresentation(v, images, kernel)
