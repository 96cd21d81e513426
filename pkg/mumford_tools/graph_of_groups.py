"""
Finite trees of groups with marked ends.

The mu-invariant of a tree is sum over edges of 1/|G_e| minus sum over vertices
of 1/|G_v|; a Schottky quotient with |N/Gamma| automorphisms has genus
|N/Gamma| * mu + 1.
"""

import json
import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .finite_groups import (
    GroupTag,
    admissible_edge,
    embeds,
    is_maximal_cyclic,
)
from .framework import CatalogError, ContractionError, GenusError, TreeStructureError

logger = logging.getLogger("Mumford.graph_of_groups")


@dataclass(frozen=True)
class TreeNode:
    id: str
    tag: GroupTag


@dataclass(frozen=True)
class TreeEdge:
    a: str
    b: str
    tag: GroupTag

    def other(self, vid: str) -> str:
        return self.b if vid == self.a else self.a


@dataclass(frozen=True)
class TreeEnd:
    """Half-line leaving the tree at vertex `at`; `tag` is its stabilizer."""
    at: str
    tag: GroupTag


@dataclass(frozen=True)
class HerrlichCounts:
    f: int
    cv: int
    dv: int
    ce: int
    de: int

    @property
    def dimension(self) -> int:
        return 3 * (self.f + self.dv - self.de - 1) + 2 * (self.cv - self.ce)


@dataclass
class GroupTree:
    """Tree of finite groups over characteristic p."""
    p: int
    vertices: List[TreeNode] = field(default_factory=list)
    edges: List[TreeEdge] = field(default_factory=list)
    ends: List[TreeEnd] = field(default_factory=list)

    # -- construction ------------------------------------------------------------
    @classmethod
    def chain(cls, p: int, items: List[GroupTag], ends: Optional[List[Tuple[int, GroupTag]]] = None) -> "GroupTree":
        """
        Segment from alternating vertex and edge tags [v0, e01, v1, e12, v2, ...].

        Vertex ids are "v0", "v1", ...; `ends` lists (vertex index, stabilizer).
        """
        if len(items) % 2 == 0:
            raise TreeStructureError("Chain needs an odd number of tags (vertex, edge, vertex, ...)")
        vertices = [TreeNode(f"v{i}", tag) for i, tag in enumerate(items[0::2])]
        edges = [TreeEdge(f"v{i}", f"v{i + 1}", tag) for i, tag in enumerate(items[1::2])]
        tree = cls(p, vertices, edges)
        for index, tag in ends or []:
            tree.ends.append(TreeEnd(f"v{index}", tag))
        return tree

    def add_vertex(self, vid: str, tag: GroupTag) -> "GroupTree":
        self.vertices.append(TreeNode(vid, tag))
        return self

    def add_edge(self, a: str, b: str, tag: GroupTag) -> "GroupTree":
        self.edges.append(TreeEdge(a, b, tag))
        return self

    def add_end(self, at: str, tag: GroupTag) -> "GroupTree":
        self.ends.append(TreeEnd(at, tag))
        return self

    # -- lookup ------------------------------------------------------------------
    def tag(self, vid: str) -> GroupTag:
        for node in self.vertices:
            if node.id == vid:
                return node.tag
        raise TreeStructureError(f"Unknown vertex id: {vid}")

    def ids(self) -> List[str]:
        return [node.id for node in self.vertices]

    def incident(self, vid: str) -> List[TreeEdge]:
        return [e for e in self.edges if vid in (e.a, e.b)]

    def adjacency(self) -> Dict[str, List[TreeEdge]]:
        adjacency: Dict[str, List[TreeEdge]] = {vid: [] for vid in self.ids()}
        for e in self.edges:
            adjacency[e.a].append(e)
            adjacency[e.b].append(e)
        return adjacency

    def is_connected(self, ids: Optional[Set[str]] = None) -> bool:
        ids = set(self.ids()) if ids is None else set(ids)
        if not ids:
            return True
        adjacency = self.adjacency()
        start = next(iter(ids))
        seen, queue = {start}, deque([start])
        while queue:
            for e in adjacency[queue.popleft()]:
                for nxt in (e.a, e.b):
                    if nxt in ids and nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
        return seen == ids

    # -- validation --------------------------------------------------------------
    def _fail(self, rule: str, message: str, **data) -> None:
        raise TreeStructureError(f"{rule}: {message}", {"rule": rule, **data})

    def validate(self) -> "GroupTree":
        """
        Check tree shape and the structural rules for edge groups.

        Raises:
            TreeStructureError: Naming the violated rule
        """
        ids = self.ids()
        if not ids:
            self._fail("tree-shape", "empty tree")
        if len(set(ids)) != len(ids):
            self._fail("tree-shape", "duplicate vertex ids")
        for e in self.edges:
            if e.a not in ids or e.b not in ids or e.a == e.b:
                self._fail("tree-shape", f"bad edge {e.a}-{e.b}")
        if len(self.edges) != len(ids) - 1 or not self.is_connected():
            self._fail("tree-shape", "underlying graph is not a tree")

        for node in self.vertices:
            if node.tag.p != self.p:
                self._fail("characteristic", f"{node.id}={node.tag} is not over p={self.p}")
            try:
                node.tag.validate()
            except CatalogError as error:
                self._fail("catalog", f"{node.id}: {error.message}")

        for e in self.edges:
            label = f"{e.a}-{e.b}"
            if not admissible_edge(e.tag):
                self._fail("edge-admissibility", f"edge {label} group {e.tag} is not E_t x| Z_n", edge=label)
            for vid in (e.a, e.b):
                vtag = self.tag(vid)
                if vtag.order % e.tag.order or not embeds(e.tag, vtag):
                    self._fail("order-divisibility", f"edge {label} group {e.tag} is not a subgroup of {vtag}",
                               edge=label)
                n = e.tag.prime_to_p_part
                if n > 1:
                    cyclic = GroupTag.cyclic(self.p, n)
                    if not embeds(cyclic, vtag) or not is_maximal_cyclic(cyclic, vtag):
                        self._fail("maximal-cyclic", f"Z_{n} of edge {label} is not maximal cyclic in {vtag}",
                                   edge=label)
                if vtag.is_projective_linear:
                    n_minus, n_plus = vtag.half_orders()
                    allowed = {GroupTag.borel(self.p, vtag.t, n_minus), GroupTag.cyclic(self.p, n_plus)}
                    if e.tag not in allowed:
                        self._fail("projective-linear-edge",
                                   f"edge {label} at {vtag} must be one of {sorted(str(a) for a in allowed)}",
                                   edge=label)

        for end in self.ends:
            if end.at not in ids:
                self._fail("tree-shape", f"end attached to unknown vertex {end.at}")
            if not embeds(end.tag, self.tag(end.at)):
                self._fail("order-divisibility", f"end stabilizer {end.tag} is not a subgroup of {self.tag(end.at)}")
        return self

    # -- invariants --------------------------------------------------------------
    def mu(self) -> Fraction:
        return mu(self)

    def subtree(self, ids: Iterable[str]) -> "GroupTree":
        return subtree(self, ids)

    # -- serialization -------------------------------------------------------------
    def to_dict(self) -> Dict:
        return {
            "p": self.p,
            "vertices": [{"id": n.id, "tag": str(n.tag)} for n in self.vertices],
            "edges": [{"a": e.a, "b": e.b, "tag": str(e.tag)} for e in self.edges],
            "ends": [{"at": end.at, "tag": str(end.tag)} for end in self.ends],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "GroupTree":
        p = int(data["p"])
        return cls(
            p,
            [TreeNode(v["id"], GroupTag.parse(v["tag"], p)) for v in data.get("vertices", [])],
            [TreeEdge(e["a"], e["b"], GroupTag.parse(e["tag"], p)) for e in data.get("edges", [])],
            [TreeEnd(end["at"], GroupTag.parse(end["tag"], p)) for end in data.get("ends", [])],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "GroupTree":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "N") -> str:
        lines = [f"graph {name} {{"]
        for node in self.vertices:
            lines.append(f'  {node.id} [label="{node.tag}"];')
        for e in self.edges:
            lines.append(f'  {e.a} -- {e.b} [label="{e.tag}"];')
        for i, end in enumerate(self.ends):
            lines.append(f'  end{i} [shape=none, label="{end.tag}"];')
            lines.append(f"  {end.at} -- end{i} [style=dashed];")
        lines.append("}")
        return "\n".join(lines)

    def __str__(self) -> str:
        if len(self.vertices) == len(self.edges) + 1 and all(
            e.a == f"v{i}" and e.b == f"v{i + 1}" for i, e in enumerate(self.edges)
        ):
            parts = [str(self.vertices[0].tag)]
            for e, node in zip(self.edges, self.vertices[1:]):
                parts.append(f"—{e.tag}— {node.tag}")
            text = " ".join(parts)
        else:
            text = ", ".join(f"{n.id}={n.tag}" for n in self.vertices)
        if self.ends:
            text += " | ends " + ", ".join(f"{end.tag}@{end.at}" for end in self.ends)
        return text


def mu(tree: GroupTree) -> Fraction:
    """Sum of 1/|G_e| over edges minus sum of 1/|G_v| over vertices."""
    value = sum((Fraction(1, e.tag.order) for e in tree.edges), Fraction(0))
    return value - sum((Fraction(1, n.tag.order) for n in tree.vertices), Fraction(0))


def kps_genus(tree: GroupTree, aut_order: int) -> int:
    """
    Genus of the Schottky quotient with `aut_order` automorphisms.

    Raises:
        GenusError: If aut_order * mu is not a positive integer
    """
    value = aut_order * mu(tree)
    if value.denominator != 1 or value < 1:
        raise GenusError(
            f"{aut_order} * mu = {value} is not a positive integer; no such Schottky quotient",
            {"mu": str(mu(tree)), "aut_order": aut_order},
        )
    return int(value) + 1


def subtree(tree: GroupTree, ids: Iterable[str]) -> GroupTree:
    """Induced subtree on `ids` (must be connected); ends on removed vertices are dropped."""
    keep = set(ids)
    unknown = keep - set(tree.ids())
    if unknown:
        raise TreeStructureError(f"Unknown vertex ids: {sorted(unknown)}")
    if not tree.is_connected(keep):
        raise TreeStructureError(f"Vertex set {sorted(keep)} is not connected")
    return GroupTree(
        tree.p,
        [n for n in tree.vertices if n.id in keep],
        [e for e in tree.edges if e.a in keep and e.b in keep],
        [end for end in tree.ends if end.at in keep],
    )


def contract(tree: GroupTree, keep: Iterable[str]) -> GroupTree:
    """
    Remove every vertex outside `keep`.

    Along each geodesic from a removed vertex toward `keep` the vertex groups must
    increase: the edge toward `keep` carries the whole group of the removed vertex.
    Ends on removed vertices move to the kept vertex their branch hangs from.

    Raises:
        ContractionError: With the offending geodesic as witness
    """
    keep = set(keep)
    result = subtree(tree, keep)
    adjacency = tree.adjacency()

    toward: Dict[str, TreeEdge] = {}
    anchor: Dict[str, str] = {}
    queue = deque()
    for vid in keep:
        anchor[vid] = vid
        queue.append(vid)
    while queue:
        v = queue.popleft()
        for e in adjacency[v]:
            w = e.other(v)
            if w not in anchor:
                anchor[w] = anchor[v]
                toward[w] = e
                queue.append(w)

    def geodesic(vid: str) -> List[str]:
        path = [f"{vid}:{tree.tag(vid)}"]
        while vid not in keep:
            e = toward[vid]
            vid = e.other(vid)
            path.append(f"{vid}:{tree.tag(vid)}")
        return path

    for vid in tree.ids():
        if vid in keep:
            continue
        e = toward[vid]
        if e.tag != tree.tag(vid):
            witness = geodesic(vid)
            raise ContractionError(
                f"Stabilizers do not increase toward the kept subtree at {vid} "
                f"({tree.tag(vid)} over edge {e.tag})",
                witness,
            )

    for end in tree.ends:
        if end.at not in keep:
            result.ends.append(TreeEnd(anchor[end.at], end.tag))
    logger.debug(f"contract: removed {len(tree.vertices) - len(result.vertices)} vertices")
    return result


def herrlich_counts(tree: GroupTree, f: int = 0) -> HerrlichCounts:
    """Counts of nontrivial cyclic and non-cyclic vertex and edge groups."""
    def split(tags: List[GroupTag]) -> Tuple[int, int]:
        cyclic = sum(1 for t in tags if t.is_cyclic and not t.is_trivial)
        return cyclic, sum(1 for t in tags if not t.is_cyclic)

    cv, dv = split([n.tag for n in tree.vertices])
    ce, de = split([e.tag for e in tree.edges])
    return HerrlichCounts(f, cv, dv, ce, de)


def herrlich_dim(tree: GroupTree, f: int = 0) -> int:
    """Dimension 3(f + d_v - d_e - 1) + 2(c_v - c_e) of the stratum of curves with this normalizer."""
    return herrlich_counts(tree, f).dimension
