"""
Explicit families of Mumford curves: Artin-Schreier-Mumford curves, Drinfeld
modular curves X(n) and the icosahedral genus-6 curves.

Each builder returns a FamilyRecord whose genus, automorphism count, normalizer
tree and stratum dimension are cross-checked against each other.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence

from sympy import factorint

from .case_catalog import CaseId, build_case
from .finite_groups import BranchDatum, GroupTag
from .framework import CatalogError, GenusError, InvalidInputError
from .graph_of_groups import GroupTree, herrlich_dim, kps_genus, mu
from .hurwitz_bounds import BoundReport, CoverData, bound_report, hurwitz_genus

logger = logging.getLogger("Mumford.curve_families")


@dataclass
class FamilyRecord:
    name: str
    genus: int
    aut_order: int
    aut_description: str
    normalizer_tree: GroupTree
    bound: BoundReport
    stratum_dim: int
    branches: List[BranchDatum] = field(default_factory=list)
    checks: Dict[str, bool] = field(default_factory=dict)
    flags: List[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict:
        return {
            "name": self.name,
            "genus": self.genus,
            "aut_order": self.aut_order,
            "aut_description": self.aut_description,
            "normalizer": str(self.normalizer_tree),
            "tree": self.normalizer_tree.to_dict(),
            "mu": mu(self.normalizer_tree),
            "bound": self.bound.to_dict(),
            "stratum_dim": self.stratum_dim,
            "branches": [b.as_tuple() for b in self.branches],
            "checks": self.checks,
            "flags": self.flags,
        }


def _prime_power(q: int) -> tuple:
    factors = factorint(q)
    if q < 2 or len(factors) != 1:
        raise InvalidInputError(f"q must be a prime power, got {q}")
    (p, t), = factors.items()
    return p, t


def _record(name: str, genus: int, aut_order: int, description: str, tree: GroupTree,
            flags: List[str] = None) -> FamilyRecord:
    branches = [BranchDatum(end.tag.order, end.tag.p_part) for end in tree.ends]
    checks = {
        "kps_genus": kps_genus(tree, aut_order) == genus,
        "hurwitz_genus": hurwitz_genus(CoverData(aut_order, branches)) == genus,
    }
    return FamilyRecord(
        name=name,
        genus=genus,
        aut_order=aut_order,
        aut_description=description,
        normalizer_tree=tree,
        bound=bound_report(genus, aut_order),
        stratum_dim=herrlich_dim(tree),
        branches=branches,
        checks=checks,
        flags=list(flags or []),
    )


def asm(p: int, t: int) -> FamilyRecord:
    """
    The curves (x^q - x)(y^q - y) = c, q = p^t: genus (q-1)^2 with 2q^2(q-1) automorphisms.

    Raises:
        GenusError: If q = 2 (genus 1)
    """
    q = p ** t
    _prime_power(q)
    genus = (q - 1) ** 2
    if genus < 2:
        raise GenusError(f"q = {q} gives genus {genus}")
    aut_order = 2 * q * q * (q - 1)
    if p == 2:
        case = CaseId("A1''", p=2, t=t, t1=t, t2=1, n=q - 1)
    else:
        case = CaseId("F2", p=p, t=t, n=q - 1, t1=0, t2=0)
    record = _record(f"asm({p},{t})", genus, aut_order, f"Z_{p}^{2 * t} x| D_{q - 1}", build_case(case))
    record.checks["attains_F"] = record.bound.f_comparison.value == "equal"
    logger.debug(f"asm({p},{t}): g={genus}, |Aut|={aut_order}")
    return record


def drinfeld_order(q: int, degrees: Sequence[int]) -> int:
    """|G(n)| = q^d prod (q^(2 deg) - 1), d = sum of the prime degrees."""
    order = q ** sum(degrees)
    for deg in degrees:
        order *= q ** (2 * deg) - 1
    return order


def drinfeld(q: int, degrees: Sequence[int]) -> FamilyRecord:
    """
    Drinfeld modular curve X(n) for an ideal n with prime divisors of the given degrees.

    Raises:
        InvalidInputError: On an empty degree list or q not a prime power
        GenusError: If the genus is not an integer >= 2
    """
    p, t = _prime_power(q)
    degrees = list(degrees)
    if not degrees or any(d < 1 for d in degrees):
        raise InvalidInputError(f"Prime degrees must be positive, got {degrees}")
    d = sum(degrees)
    order = drinfeld_order(q, degrees)
    g_minus_1 = Fraction(order * (q ** d - q - 1), q ** d * (q * q - 1))
    if g_minus_1.denominator != 1 or g_minus_1 < 1:
        raise GenusError(f"X(n) over F_{q} with degrees {degrees} has g - 1 = {g_minus_1}")
    genus = int(g_minus_1) + 1

    flags = []
    repeated = sorted(deg for deg, count in Counter(degrees).items() if count > 1)
    if repeated:
        flags.append(f"repeated prime degrees {repeated}: order formula applied to the degree list as given")
    if q in (2, 3):
        flags.append(f"q = {q}: uniqueness of the normalizer is not claimed for this q")

    tree = build_case(CaseId("A1", p=p, t=t, t1=t * d))
    record = _record(f"drinfeld({q},{degrees})", genus, order, f"G(n) of order {order}", tree, flags)
    record.checks["exceeds_classical"] = order > 12 * (genus - 1) if q > 3 else True
    return record


def henn_check(a0: int, a1: int) -> bool:
    """
    Whether A_0 = A_1 (A_1 - 1) for a wild inertia group of order A_0 with p-part A_1.

    Raises:
        InvalidInputError: If A_1 does not divide A_0
    """
    if a1 <= 1:
        return False
    if a0 % a1:
        raise InvalidInputError(f"A_1 = {a1} does not divide A_0 = {a0}")
    return a0 == a1 * (a1 - 1)


def icosahedral(p: int) -> FamilyRecord:
    """
    Genus-6 curves with normalizer I *_{Z5} D5.

    Raises:
        CatalogError: If I is not a subgroup of PGL(2,k), i.e. p in {2, 5}
    """
    if p in (2, 5):
        raise CatalogError(f"I is not a subgroup of PGL(2,k) for p={p}")
    if p == 3:
        tree = build_case(CaseId("F1'", p=3, t1=0, t2=0, t3=1))
    else:
        z2, z3, z5 = (GroupTag.cyclic(p, n) for n in (2, 3, 5))
        tree = GroupTree.chain(p, [GroupTag.icosa(p), z5, GroupTag.dihedral(p, 5)],
                               ends=[(0, z2), (0, z3), (1, z2), (1, z2)])
        tree.validate()
    return _record(f"icosahedral({p})", 6, 60, "I = A_5", tree)
