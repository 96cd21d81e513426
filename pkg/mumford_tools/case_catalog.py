"""
Normalizer families of Mumford curves with many automorphisms.

Each family is a small tree of groups with marked ends: segments for the two-end
families (A*), (B), (C), three-ended stars for (F*), and the plain segments (D),
(E) used by the mu tables.  Half-line Borel towers appear contracted: only the
terminal Borel group is a vertex, and a leaf whose group equals its edge group
is folded into its neighbour with the end moved along.
"""

import logging
import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from sympy import divisors, multiplicity, n_order

from settings import get_setting

from .finite_groups import BranchDatum, GroupKind, GroupTag
from .framework import CatalogError, TreeStructureError
from .graph_of_groups import GroupTree, mu
from .hurwitz_bounds import (
    Comparison,
    F_compare,
    attaining_orders,
    lambda_criterion,
    ramification_ratio,
)

logger = logging.getLogger("Mumford.case_catalog")

A_FAMILIES = ["A1", "A2", "A3", "A4", "A5"]
PRIMED_FAMILIES = ["A1'", "A2'", "A3'", "A4'", "A5'"]
DOUBLE_PRIMED_FAMILIES = ["A1''", "A2''", "A3''"]
FAMILIES = A_FAMILIES + PRIMED_FAMILIES + DOUBLE_PRIMED_FAMILIES + ["B", "C", "D", "E", "F1", "F2", "F1'"]
PARAMETERS = ("t1", "t2", "t3", "t4", "t5", "n")


@dataclass(frozen=True)
class CaseId:
    """
    A family label with its parameters.

    `special` selects PSL2 for the projective linear vertices (odd p only).
    (D) and (E) carry their groups as tag strings v0, e, v1.
    """
    family: str
    p: int
    t: int = 1
    t1: Optional[int] = None
    t2: Optional[int] = None
    t3: Optional[int] = None
    t4: Optional[int] = None
    t5: Optional[int] = None
    n: Optional[int] = None
    special: bool = False
    v0: Optional[str] = None
    e: Optional[str] = None
    v1: Optional[str] = None

    @property
    def q(self) -> int:
        return self.p ** self.t

    def __str__(self) -> str:
        parts = [self.family, f"p={self.p}"]
        if self.family not in ("B", "C", "D", "E"):
            parts.append(f"t={self.t}")
        for key in PARAMETERS + ("v0", "e", "v1"):
            value = getattr(self, key)
            if value is not None:
                parts.append(f"{key}={value}")
        if self.family in A_FAMILIES + ["F1"]:
            parts.append("PSL" if self.special else "PGL")
        return " ".join(parts)

    @classmethod
    def parse(cls, text: str) -> "CaseId":
        """
        Parse descriptors such as "A1 p=3 t=1 t1=2 PGL" or "E p=7 v1=D3 e=Zn(3) v0=T".

        Raises:
            CatalogError: On unknown families or keys
        """
        tokens = text.replace("′", "'").replace("″", "''").split()
        if not tokens:
            raise CatalogError("Empty case descriptor")
        family = tokens[0]
        if family not in FAMILIES:
            raise CatalogError(f"Unknown family {family!r}. Available: {FAMILIES}")
        values: Dict = {}
        for token in tokens[1:]:
            upper = token.upper()
            if upper in ("PGL", "PSL"):
                values["special"] = upper == "PSL"
                continue
            match = re.fullmatch(r"(\w+)=(.+)", token)
            if not match:
                raise CatalogError(f"Cannot parse descriptor token {token!r}")
            key, value = match.groups()
            if key in ("v0", "e", "v1"):
                values[key] = value
            elif key in ("p", "t") + PARAMETERS:
                values[key] = int(value)
            else:
                raise CatalogError(f"Unknown descriptor key {key!r}")
        if "p" not in values:
            raise CatalogError("Descriptor needs p=<prime>")
        return cls(family, **values)


def _require(condition: bool, message: str, case: CaseId) -> None:
    if not condition:
        raise CatalogError(f"{case.family}: {message}", {"case": str(case)})


def _param(case: CaseId, name: str) -> int:
    value = getattr(case, name)
    _require(value is not None, f"parameter {name} is required", case)
    return value


def _multiple_of_t(case: CaseId, name: str, step: int = 1) -> int:
    """Parameter t_i as the multiplier k with t_i = k t, checking step*t | t_i."""
    value = _param(case, name)
    _require(value >= case.t and value % (step * case.t) == 0,
             f"{name}={value} must be a positive multiple of {step * case.t}", case)
    return value // case.t


class _Segment:
    """Builder for chains that folds leaves whose group equals their edge group."""

    def __init__(self, p: int):
        self.p = p
        self.tree = GroupTree(p)
        self.count = 0

    def vertex(self, tag: GroupTag) -> str:
        vid = f"v{self.count}"
        self.count += 1
        self.tree.add_vertex(vid, tag)
        return vid

    def leaf(self, at: str, edge: GroupTag, tag: GroupTag) -> None:
        """Hang a terminal Borel (or elementary) group with its end, or fold it into `at`."""
        if tag == edge:
            self.tree.add_end(at, tag)
            return
        vid = self.vertex(tag)
        self.tree.add_edge(at, vid, edge)
        self.tree.add_end(vid, tag)


def _projective(case: CaseId) -> Tuple[GroupTag, int, int]:
    _require(not (case.special and case.p == 2), "PSL2 selector needs odd p", case)
    _require(case.t >= 1, "t must be >= 1", case)
    tag = GroupTag.projective(case.p, case.t, case.special)
    n_minus, n_plus = tag.half_orders()
    return tag, n_minus, n_plus


def _icosa_p3(case: CaseId) -> Tuple[GroupTag, int, int]:
    _require(case.p == 3, "primed families live in characteristic 3", case)
    return GroupTag.icosa(3), 2, 5


def _build_a(case: CaseId, primed: bool) -> GroupTree:
    """(A1)-(A5) and their characteristic-3 variants with I in place of PGL2/PSL2."""
    p = case.p
    if primed:
        P, n_minus, n_plus = _icosa_p3(case)
        base = replace(case, t=1)
    else:
        P, n_minus, n_plus = _projective(case)
        base = case
    t = base.t
    wild_edge = GroupTag.borel(p, t, n_minus)
    tame_edge = GroupTag.cyclic(p, n_plus)
    family = case.family.rstrip("'")
    seg = _Segment(p)

    def borel_leaf(name: str) -> GroupTag:
        k = _multiple_of_t(base, name)
        return GroupTag.borel(p, k * t, n_minus)

    def tame_leaf(name: str) -> GroupTag:
        step = 4 if primed else 2
        k = _multiple_of_t(base, name, step)
        return GroupTag.borel(p, k * t, n_plus)

    if family == "A1":
        _require(_param(case, "t1") > t, "t1 must exceed t", case)
        v = seg.vertex(P)
        seg.tree.add_end(v, tame_edge)
        seg.leaf(v, wild_edge, borel_leaf("t1"))
    elif family == "A2":
        w = seg.vertex(tame_leaf("t2"))
        seg.tree.add_end(w, seg.tree.tag(w))
        v = seg.vertex(P)
        seg.tree.add_edge(w, v, tame_edge)
        seg.leaf(v, wild_edge, borel_leaf("t1"))
    elif family == "A3":
        _require(_param(case, "t1") <= _param(case, "t3"), "t1 <= t3 is required", case)
        first = seg.vertex(P)
        second = seg.vertex(P)
        seg.tree.add_edge(first, second, tame_edge)
        seg.leaf(first, wild_edge, borel_leaf("t3"))
        seg.leaf(second, wild_edge, borel_leaf("t1"))
    elif family == "A4":
        w = seg.vertex(tame_leaf("t4"))
        seg.tree.add_end(w, seg.tree.tag(w))
        v = seg.vertex(P)
        seg.tree.add_edge(w, v, tame_edge)
        seg.tree.add_end(v, wild_edge)
    elif family == "A5":
        first = seg.vertex(P)
        second = seg.vertex(P)
        seg.tree.add_edge(first, second, tame_edge)
        seg.leaf(first, wild_edge, borel_leaf("t5"))
        seg.tree.add_end(second, wild_edge)
    return seg.tree


def _build_double_primed(case: CaseId) -> GroupTree:
    """Characteristic-2 families around dihedral groups D_n, n odd."""
    _require(case.p == 2, "double-primed families live in characteristic 2", case)
    p = 2
    e1 = GroupTag.elementary(p, 1)
    seg = _Segment(p)
    t2 = _param(case, "t2")
    _require(t2 >= 1, "t2 must be >= 1", case)
    family = case.family

    if family in ("A1''", "A2''"):
        n = _param(case, "n")
        _require(n >= 3 and n % 2 == 1, "n must be odd and >= 3", case)
        dn = GroupTag.dihedral(p, n)
        zn = GroupTag.cyclic(p, n)
        d = seg.vertex(dn)
        seg.leaf(d, e1, GroupTag.elementary(p, t2))
        if family == "A1''":
            t1 = _param(case, "t1")
            _require(t1 >= 1 and (2 ** t1 - 1) % n == 0, f"n={n} must divide 2^t1 - 1", case)
            seg.leaf(d, zn, GroupTag.borel(p, t1, n))
        else:
            t1 = _param(case, "t1")
            _require(t1 >= 1, "t1 must be >= 1", case)
            _require((t1, t2) != (1, 1), "t1 = t2 = 1 gives mu = 0", case)
            other = seg.vertex(dn)
            seg.tree.add_edge(d, other, zn)
            seg.leaf(other, e1, GroupTag.elementary(p, t1))
        return seg.tree

    P = GroupTag.pgl2(p, case.t)
    q = case.q
    _require(q >= 4, "q = 2^t must be at least 4", case)
    d = seg.vertex(GroupTag.dihedral(p, q + 1))
    seg.leaf(d, e1, GroupTag.elementary(p, t2))
    v = seg.vertex(P)
    seg.tree.add_edge(d, v, GroupTag.cyclic(p, q + 1))
    seg.leaf(v, GroupTag.borel(p, case.t, q - 1), GroupTag.borel(p, _multiple_of_t(case, "t1") * case.t, q - 1))
    return seg.tree


def _attach_q_groups(seg: _Segment, dihedral: str, case: CaseId) -> None:
    """The two groups Q(t_i) = B(t_i, 2), or plain Z_2 ends when t_i = 0."""
    z2 = GroupTag.cyclic(case.p, 2)
    for name in ("t1", "t2"):
        ti = _param(case, name)
        _require(ti >= 0, f"{name} must be >= 0", case)
        seg.leaf(dihedral, z2, GroupTag.borel(case.p, ti, 2))


def _build_f(case: CaseId) -> GroupTree:
    p = case.p
    _require(p != 2, "(F) families need odd p", case)
    seg = _Segment(p)
    if case.family == "F2":
        n = _param(case, "n")
        _require(n >= 2 and (case.q - 1) % n == 0, f"n={n} must be >= 2 and divide q-1={case.q - 1}", case)
        b = seg.vertex(GroupTag.borel(p, case.t, n))
        seg.tree.add_end(b, seg.tree.tag(b))
        d = seg.vertex(GroupTag.dihedral(p, n))
        seg.tree.add_edge(b, d, GroupTag.cyclic(p, n))
        _attach_q_groups(seg, d, case)
        return seg.tree

    if case.family == "F1":
        P, n_minus, n_plus = _projective(case)
        t = case.t
    else:
        P, n_minus, n_plus = _icosa_p3(case)
        t = 1
    v = seg.vertex(P)
    k = _multiple_of_t(replace(case, t=t), "t3")
    seg.leaf(v, GroupTag.borel(p, t, n_minus), GroupTag.borel(p, k * t, n_minus))
    d = seg.vertex(GroupTag.dihedral(p, n_plus))
    seg.tree.add_edge(v, d, GroupTag.cyclic(p, n_plus))
    _attach_q_groups(seg, d, case)
    return seg.tree


def _build_segment(case: CaseId) -> GroupTree:
    p = case.p
    if case.family == "D":
        v0 = GroupTag.parse(_param(case, "v0"), p)
        v1 = GroupTag.parse(_param(case, "v1"), p)
        z2 = GroupTag.cyclic(p, 2)
        _require(not v0.is_trivial and not v1.is_trivial, "both vertex groups must be nontrivial", case)
        _require(not (v0 == z2 and v1 == z2), "Z2 -1- Z2 has mu = 0", case)
        return GroupTree.chain(p, [v0, GroupTag.trivial(p), v1])
    v1 = GroupTag.parse(_param(case, "v1"), p)
    edge = GroupTag.parse(_param(case, "e"), p)
    v0 = GroupTag.parse(_param(case, "v0"), p)
    _require(v0.kind in (GroupKind.TETRA, GroupKind.OCTA, GroupKind.ICOSA), "v0 must be T, O or I", case)
    return GroupTree.chain(p, [v1, edge, v0])


def build_case(case: CaseId) -> GroupTree:
    """
    Tree of groups with ends for a family member.

    Raises:
        CatalogError: On parameter constraints or a violated structural rule
    """
    family = case.family
    if family in A_FAMILIES:
        tree = _build_a(case, primed=False)
    elif family in PRIMED_FAMILIES:
        tree = _build_a(case, primed=True)
    elif family in DOUBLE_PRIMED_FAMILIES:
        tree = _build_double_primed(case)
    elif family == "B":
        t1, t2, n = _param(case, "t1"), _param(case, "t2"), _param(case, "n")
        p = case.p
        _require(n > 1 and (p ** t1 - 1) % n == 0 and (p ** t2 - 1) % n == 0,
                 f"n={n} must be > 1 and divide p^t1 - 1 and p^t2 - 1", case)
        b1, b2 = GroupTag.borel(p, t1, n), GroupTag.borel(p, t2, n)
        tree = GroupTree.chain(p, [b1, GroupTag.cyclic(p, n), b2], ends=[(0, b1), (1, b2)])
    elif family == "C":
        t3, t4 = _param(case, "t3"), _param(case, "t4")
        p = case.p
        _require(t3 >= 1 and t4 >= 1, "t3, t4 must be >= 1", case)
        _require(not (p == 2 and t3 == 1 and t4 == 1), "E1 * E1 in characteristic 2 has mu = 0", case)
        e3, e4 = GroupTag.elementary(p, t3), GroupTag.elementary(p, t4)
        tree = GroupTree.chain(p, [e3, GroupTag.trivial(p), e4], ends=[(0, e3), (1, e4)])
    elif family in ("F1", "F2", "F1'"):
        tree = _build_f(case)
    elif family in ("D", "E"):
        tree = _build_segment(case)
    else:
        raise CatalogError(f"Unknown family {family!r}")

    try:
        tree.validate()
    except TreeStructureError as error:
        raise CatalogError(f"{case}: {error.message}", {"rule": error.data.get("rule"), "case": str(case)})
    return tree


def case_cover(case: CaseId) -> List[BranchDatum]:
    """Branch data of the quotient map: one (|stabilizer|, p-part) per marked end."""
    tree = build_case(case)
    return [BranchDatum(end.tag.order, end.tag.p_part) for end in tree.ends]


def case_mu(case: CaseId) -> Fraction:
    return mu(build_case(case))


def _half(case: CaseId, value: int) -> int:
    return value // 2 if case.special else value


def case_ab(case: CaseId) -> Tuple[int, int, str]:
    """
    (a, b, source) with mu = a/b.

    Rows of the closed-form table are used where one exists (source "table");
    otherwise (a, b) is mu in lowest terms (source "mu").
    """
    build_case(case)
    family, q, t, p = case.family, case.q, case.t, case.p
    if family == "A1":
        n = case.t1 // t
        return q ** n - q - 1, _half(case, q ** n * (q * q - 1)), "table"
    if family == "A2":
        n, m = case.t2 // t, case.t1 // t
        if n >= m:
            a = q ** (n + 1) - q ** (n - m + 1) - q ** (n - m) - q + 1
            return a, _half(case, q ** n * (q * q - 1)), "table"
        a = q ** (m + 1) - q ** (m - n + 1) + q ** (m - n) - q - 1
        return a, _half(case, q ** m * (q * q - 1)), "table"
    if family == "A3":
        n, m = case.t1 // t, case.t3 // t
        return q ** m - q ** (m - n) - 1, _half(case, q ** m * (q - 1)), "table"
    if family == "A4":
        n = case.t4 // t
        return q ** (n + 1) - q ** n - q ** (n - 1) - q + 1, _half(case, q ** n * (q * q - 1)), "table"
    if family == "A5":
        n = case.t5 // t
        return q ** n - q ** (n - 1) - 1, _half(case, q ** n * (q - 1)), "table"
    if family == "B":
        s = p ** (case.t1 + case.t2)
        return s - p ** case.t1 - p ** case.t2, case.n * s, "table"
    if family == "C":
        s = p ** (case.t3 + case.t4)
        return s - p ** case.t3 - p ** case.t4, s, "table"
    if family == "F2" and case.t1 == 0 and case.t2 == 0:
        return q - 2, 2 * case.n * q, "table"
    if family == "F1" and case.t1 == 0 and case.t2 == 0:
        m = case.t3 // t
        return q ** m - 2, _half(case, 2 * q ** m * (q - 1)), "table"
    if family == "A1''" and case.t2 == 1:
        return 2 ** (case.t1 - 1) - 1, 2 ** case.t1 * case.n, "table"
    if family == "A2''":
        s = 2 ** (case.t1 + case.t2)
        return s - 2 ** case.t1 - 2 ** case.t2, s, "table"
    if family == "A3''" and case.t2 == 1:
        m = case.t1 // t
        return q ** m // 2 - 1, q ** m * (q - 1), "table"
    value = case_mu(case)
    return value.numerator, value.denominator, "mu"


@dataclass
class LambdaBound:
    """Lower bound lambda0 for gcd(g-1, |A|); kind "divides" also forces lambda0 | lambda."""
    value: int = 1
    kind: str = "trivial"

    def to_dict(self) -> Dict:
        return {"value": self.value, "kind": self.kind}


def lambda0(case: CaseId) -> LambdaBound:
    family, p, q, t = case.family, case.p, case.q, case.t
    if family == "A1" and case.t1 == 2 * t:
        return LambdaBound(q * q, "divides")
    if family == "A5" and case.t5 == t:
        return LambdaBound(_projective(case)[2], "divides")
    if family == "B" and case.t1 == case.t2:
        return LambdaBound(p ** n_order(p, case.n), "order-bound")
    if family == "F1" and case.t1 == 0 and case.t2 == 0:
        return LambdaBound(_projective(case)[2], "divides")
    if family == "F1'" and case.t1 == 0 and case.t2 == 0:
        return LambdaBound(5, "divides")
    if family == "F2" and case.t1 == 0 and case.t2 == 0:
        return LambdaBound(2 * p ** n_order(p, case.n), "order-bound")
    if family == "A1''" and case.t2 == 1:
        return LambdaBound(2 ** (n_order(2, case.n) + 1), "order-bound")
    if family == "A3''" and case.t2 == 1:
        return LambdaBound(q + 1, "divides")
    return LambdaBound()


@dataclass
class Attainment:
    attains: bool
    witnesses: List[Dict] = field(default_factory=list)

    def to_dict(self) -> Dict:
        return {"attains": self.attains, "witnesses": self.witnesses}


def _asm_shaped(tree: GroupTree, s: int) -> bool:
    """
    True if the tree is B(t, s) --Z_s-- D_s with q = p^t = s + 1.

    A curve with F(g) automorphisms has g = (q-1)^2 and |A| = 2q^2(q-1), and its
    normalizer amalgamates the full Borel group of F_q with D_{q-1}.
    """
    p = tree.p
    t = multiplicity(p, s + 1)
    if p ** t != s + 1 or len(tree.vertices) != 2 or len(tree.edges) != 1:
        return False
    expected = {GroupTag.borel(p, t, s), GroupTag.dihedral(p, s)}
    return {node.tag for node in tree.vertices} == expected and tree.edges[0].tag == GroupTag.cyclic(p, s)


def attains_bound(case: CaseId) -> Attainment:
    """
    Whether some curve in the family has exactly F(g) automorphisms.

    Solves mu = (s-1)/(2s(s+1)) for s >= 2 (g = s^2, |A| = F(g)), then keeps the
    solutions where every vertex group order divides |A|, the tree realises
    q = s + 1 in its own characteristic (see _asm_shaped) and, for "divides"
    lambda bounds, lambda0 divides lambda = (g-1)/a.
    """
    tree = build_case(case)
    value = mu(tree)
    if value <= 0:
        return Attainment(False)
    a, b = value.numerator, value.denominator
    bound = lambda0(case)
    witnesses = []
    for s in attaining_orders(a, b):
        g = s * s
        order = 2 * s * (s + 1) ** 2
        lam = (g - 1) // a
        if F_compare(order, g) != Comparison.EQUAL:
            continue
        if any(order % node.tag.order for node in tree.vertices):
            continue
        if not _asm_shaped(tree, s):
            continue
        if bound.kind == "divides" and lam % bound.value:
            continue
        witnesses.append({"s": s, "g": g, "aut_order": order, "lambda": lam})
    return Attainment(bool(witnesses), witnesses)


def case_report(case: CaseId) -> Dict:
    """Tree, ends, (a, b), mu, the Hurwitz ratio and every verdict for one case."""
    tree = build_case(case)
    value = mu(tree)
    branches = [BranchDatum(end.tag.order, end.tag.p_part) for end in tree.ends]
    ratio = ramification_ratio(branches) if branches else None
    a, b, source = case_ab(case)
    reduced = Fraction(a, b) if b else None
    bound = lambda0(case)
    report = {
        "case": str(case),
        "tree": tree.to_dict(),
        "tree_text": str(tree),
        "ends": [b_.as_tuple() for b_ in branches],
        "a": a,
        "b": b,
        "ab_source": source,
        "mu": value,
        "hurwitz_ratio": ratio,
        "consistent": (ratio is None or ratio == value) and reduced == value,
        "lambda0": bound.to_dict(),
        "classical": value >= Fraction(1, 12),
    }
    if value > 0:
        report["lambda_criterion"] = lambda_criterion(bound.value, value.numerator, value.denominator)
        report["attains"] = attains_bound(case).to_dict()
    return report


def _admissible_multipliers(limit: int) -> range:
    return range(1, limit + 1)


def sample_cases(
    primes: Optional[List[int]] = None,
    max_t: Optional[int] = None,
    max_multiplier: Optional[int] = None,
) -> Iterator[CaseId]:
    """All buildable members of the two-end and star families on the configured sweep grid."""
    primes = primes or get_setting("sweeps", "primes", [2, 3, 5, 7])
    max_t = max_t or get_setting("sweeps", "max_t", 3)
    limit = max_multiplier or get_setting("sweeps", "max_multiplier", 6)
    mults = _admissible_multipliers(limit)

    candidates: List[CaseId] = []
    for p in primes:
        for t in range(1, max_t + 1):
            for special in ((False, True) if p != 2 else (False,)):
                base = dict(p=p, t=t, special=special)
                candidates += [CaseId("A1", t1=k * t, **base) for k in mults if k > 1]
                candidates += [CaseId("A2", t1=m * t, t2=k * t, **base) for k in mults for m in mults]
                candidates += [CaseId("A3", t1=k * t, t3=m * t, **base) for k in mults for m in mults if k <= m]
                candidates += [CaseId("A4", t4=k * t, **base) for k in mults]
                candidates += [CaseId("A5", t5=k * t, **base) for k in mults]
                if p != 2:
                    candidates += [CaseId("F1", t1=a, t2=b, t3=k * t, **base)
                                   for k in mults for a in range(3) for b in range(3)]
            q = p ** t
            for n in range(2, q):
                if (q - 1) % n == 0 and p != 2:
                    candidates += [CaseId("F2", p=p, t=t, n=n, t1=a, t2=b) for a in range(3) for b in range(3)]
        for t1 in range(1, limit + 1):
            for t2 in range(1, limit + 1):
                common = math.gcd(p ** t1 - 1, p ** t2 - 1)
                candidates += [CaseId("B", p=p, t1=t1, t2=t2, n=n) for n in divisors(common) if n > 1]
                candidates.append(CaseId("C", p=p, t3=t1, t4=t2))
        if p == 3:
            candidates += [CaseId("A1'", p=3, t1=k) for k in range(2, limit + 1)]
            candidates += [CaseId("A2'", p=3, t1=m, t2=4 * k) for k in (1, 2) for m in mults]
            candidates += [CaseId("A3'", p=3, t1=k, t3=m) for k in mults for m in mults if k <= m]
            candidates += [CaseId("A4'", p=3, t4=4 * k) for k in (1, 2)]
            candidates += [CaseId("A5'", p=3, t5=k) for k in mults]
            candidates += [CaseId("F1'", p=3, t1=a, t2=b, t3=k) for k in mults for a in range(3) for b in range(3)]
        if p == 2:
            for n in range(3, 2 ** limit, 2):
                for t1 in range(1, limit + 1):
                    if (2 ** t1 - 1) % n:
                        continue
                    candidates += [CaseId("A1''", p=2, n=n, t1=t1, t2=t2) for t2 in range(1, 4)]
                candidates += [CaseId("A2''", p=2, n=n, t1=a, t2=b)
                               for a in range(1, 4) for b in range(1, 4) if (a, b) != (1, 1)] if n < 16 else []
            for t in range(2, max_t + 1):
                candidates += [CaseId("A3''", p=2, t=t, t1=k * t, t2=t2) for k in mults for t2 in range(1, 4)]

    for case in candidates:
        try:
            build_case(case)
        except CatalogError as error:
            logger.debug(f"Skipping {case}: {error.message}")
            continue
        yield case
