"""
Catalog of the finite subgroups of PGL(2, k) in characteristic p.

Groups are symbolic tags; containment, branch data and maximal cyclic subgroups
come from closed-form rules.  `embed` realizes a tag by explicit generators over
the session field F_q((pi)).
"""

import itertools
import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Set, Tuple

from sympy import divisors, multiplicity

from .bt_tree import Mat2
from .framework import CatalogError, InvalidInputError
from .localfield import FqElement, FqSpec

logger = logging.getLogger("Mumford.finite_groups")


class GroupKind(Enum):
    TRIVIAL = "1"
    CYCLIC = "Zn"
    DIHEDRAL = "Dn"
    ELEMENTARY = "E"
    BOREL = "B"
    TETRA = "T"
    OCTA = "O"
    ICOSA = "I"
    PGL2 = "PGL2"
    PSL2 = "PSL2"


EDGE_KINDS = {GroupKind.TRIVIAL, GroupKind.CYCLIC, GroupKind.ELEMENTARY, GroupKind.BOREL}
PLATONIC = {GroupKind.TETRA: 12, GroupKind.OCTA: 24, GroupKind.ICOSA: 60}
# (order of x, order of y, order of xy) presentations used to find T, O, I
TRIANGLE = {GroupKind.TETRA: (2, 3, 3), GroupKind.OCTA: (2, 3, 4), GroupKind.ICOSA: (2, 3, 5)}


@dataclass(frozen=True)
class BranchDatum:
    """Ramification above one branch point: |G_0| = e, |G_1| = ep."""
    e: int
    ep: int = 1

    @property
    def is_tame(self) -> bool:
        return self.ep == 1

    def contribution(self) -> Fraction:
        """(e + ep - 2) / e, the different exponent over e."""
        return Fraction(self.e + self.ep - 2, self.e)

    def as_tuple(self) -> Tuple[int, int]:
        return (self.e, self.ep)


@dataclass(frozen=True)
class GroupTag:
    """
    Finite subgroup of PGL(2,k), char k = p.

    `t` is the p-exponent (E_t, B(t,n), PGL2(t), PSL2(t)) and `n` the cyclic order
    (Z_n, D_n, B(t,n)).  Use `GroupTag.make` or the named constructors; they
    canonicalize B(t,1) -> E(t), B(0,n) -> Z_n, Z_1 -> 1, D_1 -> Z_2 and
    PSL2 -> PGL2 in characteristic 2.
    """
    kind: GroupKind
    p: int
    t: int = 0
    n: int = 0

    @classmethod
    def make(cls, kind: GroupKind, p: int, t: int = 0, n: int = 0) -> "GroupTag":
        if kind == GroupKind.BOREL:
            if t == 0:
                kind, t = GroupKind.CYCLIC, 0
            elif n == 1:
                kind, n = GroupKind.ELEMENTARY, 0
        if kind == GroupKind.ELEMENTARY and t == 0:
            kind = GroupKind.TRIVIAL
        if kind == GroupKind.DIHEDRAL and n == 1:
            kind, n = GroupKind.CYCLIC, 2
        if kind == GroupKind.CYCLIC and n == 1:
            kind = GroupKind.TRIVIAL
        if kind == GroupKind.PSL2 and p == 2:
            kind = GroupKind.PGL2
        if kind in (GroupKind.TRIVIAL, GroupKind.TETRA, GroupKind.OCTA, GroupKind.ICOSA):
            t, n = 0, 0
        elif kind in (GroupKind.CYCLIC, GroupKind.DIHEDRAL):
            t = 0
        elif kind in (GroupKind.ELEMENTARY, GroupKind.PGL2, GroupKind.PSL2):
            n = 0
        return cls(kind, p, t, n)

    # -- named constructors ----------------------------------------------------
    @classmethod
    def trivial(cls, p: int) -> "GroupTag":
        return cls.make(GroupKind.TRIVIAL, p)

    @classmethod
    def cyclic(cls, p: int, n: int) -> "GroupTag":
        return cls.make(GroupKind.CYCLIC, p, n=n)

    @classmethod
    def dihedral(cls, p: int, n: int) -> "GroupTag":
        return cls.make(GroupKind.DIHEDRAL, p, n=n)

    @classmethod
    def elementary(cls, p: int, t: int) -> "GroupTag":
        return cls.make(GroupKind.ELEMENTARY, p, t=t)

    @classmethod
    def borel(cls, p: int, t: int, n: int) -> "GroupTag":
        return cls.make(GroupKind.BOREL, p, t=t, n=n)

    @classmethod
    def tetra(cls, p: int) -> "GroupTag":
        return cls.make(GroupKind.TETRA, p)

    @classmethod
    def octa(cls, p: int) -> "GroupTag":
        return cls.make(GroupKind.OCTA, p)

    @classmethod
    def icosa(cls, p: int) -> "GroupTag":
        return cls.make(GroupKind.ICOSA, p)

    @classmethod
    def pgl2(cls, p: int, t: int) -> "GroupTag":
        return cls.make(GroupKind.PGL2, p, t=t)

    @classmethod
    def psl2(cls, p: int, t: int) -> "GroupTag":
        return cls.make(GroupKind.PSL2, p, t=t)

    @classmethod
    def projective(cls, p: int, t: int, special: bool) -> "GroupTag":
        return cls.psl2(p, t) if special else cls.pgl2(p, t)

    # -- text ------------------------------------------------------------------
    _PATTERN = re.compile(r"^(PGL2|PSL2|Zn|Dn|Z|D|E|B|T|O|I|1)(?:\((\d+)(?:,(\d+))?\))?$")

    @classmethod
    def parse(cls, text: str, p: int) -> "GroupTag":
        """
        Parse "1", "Zn(7)", "Dn(5)", "E(2)", "B(2,3)", "T", "O", "I", "PGL2(2)", "PSL2(2)".

        Raises:
            InvalidInputError: On unknown syntax
        """
        match = cls._PATTERN.match(text.replace(" ", "").replace("_", ""))
        if not match:
            raise InvalidInputError(f"Cannot parse group tag: {text!r}")
        name, first, second = match.groups()
        args = [int(x) for x in (first, second) if x is not None]
        arity = {"1": 0, "T": 0, "O": 0, "I": 0, "B": 2}.get(name, 1)
        if len(args) != arity:
            raise InvalidInputError(f"Group tag {name} takes {arity} parameter(s): {text!r}")
        if name in ("Z", "Zn"):
            return cls.cyclic(p, args[0])
        if name in ("D", "Dn"):
            return cls.dihedral(p, args[0])
        if name == "E":
            return cls.elementary(p, args[0])
        if name == "B":
            return cls.borel(p, args[0], args[1])
        if name == "PGL2":
            return cls.pgl2(p, args[0])
        if name == "PSL2":
            return cls.psl2(p, args[0])
        return cls.make({"1": GroupKind.TRIVIAL, "T": GroupKind.TETRA,
                         "O": GroupKind.OCTA, "I": GroupKind.ICOSA}[name], p)

    def __str__(self) -> str:
        k = self.kind
        if k in (GroupKind.CYCLIC, GroupKind.DIHEDRAL):
            return f"{k.value}({self.n})"
        if k in (GroupKind.ELEMENTARY, GroupKind.PGL2, GroupKind.PSL2):
            return f"{k.value}({self.t})"
        if k == GroupKind.BOREL:
            return f"B({self.t},{self.n})"
        return k.value

    def to_dict(self) -> Dict:
        return {"tag": str(self), "order": self.order}

    # -- invariants --------------------------------------------------------------
    @property
    def q(self) -> int:
        return self.p ** self.t

    @property
    def order(self) -> int:
        k, q = self.kind, self.q
        if k == GroupKind.TRIVIAL:
            return 1
        if k == GroupKind.CYCLIC:
            return self.n
        if k == GroupKind.DIHEDRAL:
            return 2 * self.n
        if k == GroupKind.ELEMENTARY:
            return q
        if k == GroupKind.BOREL:
            return q * self.n
        if k in PLATONIC:
            return PLATONIC[k]
        if k == GroupKind.PGL2:
            return q * (q * q - 1)
        return q * (q * q - 1) // math.gcd(2, q - 1)

    @property
    def p_part(self) -> int:
        return self.p ** multiplicity(self.p, self.order)

    @property
    def prime_to_p_part(self) -> int:
        return self.order // self.p_part

    @property
    def is_trivial(self) -> bool:
        return self.kind == GroupKind.TRIVIAL

    @property
    def is_cyclic(self) -> bool:
        return self.kind in (GroupKind.TRIVIAL, GroupKind.CYCLIC) or (
            self.kind == GroupKind.ELEMENTARY and self.t == 1
        )

    @property
    def is_classical(self) -> bool:
        """No nontrivial p-subgroup."""
        return self.p_part == 1

    @property
    def is_projective_linear(self) -> bool:
        return self.kind in (GroupKind.PGL2, GroupKind.PSL2)

    @property
    def p_rank(self) -> int:
        """Rank of the largest elementary abelian p-subgroup."""
        if self.kind in (GroupKind.ELEMENTARY, GroupKind.BOREL, GroupKind.PGL2, GroupKind.PSL2):
            return self.t
        if self.kind == GroupKind.ICOSA and self.p == 3:
            return 1
        if self.kind == GroupKind.DIHEDRAL and self.p == 2:
            return 1
        return 0

    def half_orders(self) -> Tuple[int, int]:
        """(n-, n+) = ({1/2}(q-1), {1/2}(q+1)) of a projective linear group."""
        if not self.is_projective_linear:
            raise CatalogError(f"{self} is not PGL2/PSL2")
        q = self.q
        if self.kind == GroupKind.PSL2:
            return (q - 1) // 2, (q + 1) // 2
        return q - 1, q + 1

    def validate(self) -> "GroupTag":
        """
        Check the characteristic restrictions of the classification.

        Raises:
            CatalogError: If the tag is not a subgroup of PGL(2,k) in characteristic p
        """
        k, p = self.kind, self.p
        problem = None
        if k == GroupKind.CYCLIC and (self.n < 2 or math.gcd(self.n, p) != 1):
            problem = f"Z_{self.n} needs n >= 2 prime to p={p}"
        elif k == GroupKind.DIHEDRAL and (self.n < 2 or self.n % p == 0):
            problem = f"D_{self.n} needs n >= 2 prime to p={p}"
        elif k == GroupKind.ELEMENTARY and self.t < 1:
            problem = "E_t needs t >= 1"
        elif k == GroupKind.BOREL and (self.n < 2 or (p ** self.t - 1) % self.n):
            problem = f"B({self.t},{self.n}) needs n | p^t - 1"
        elif k in (GroupKind.TETRA, GroupKind.OCTA) and p in (2, 3):
            problem = f"{k.value} is not a subgroup of PGL(2,k) for p={p}"
        elif k == GroupKind.ICOSA and p in (2, 5):
            problem = f"I is not a subgroup of PGL(2,k) for p={p}"
        elif k in (GroupKind.PGL2, GroupKind.PSL2) and self.t < 1:
            problem = f"{k.value} needs t >= 1"
        if problem:
            raise CatalogError(problem, {"tag": str(self)})
        return self


def branch_data(tag: GroupTag) -> List[BranchDatum]:
    """
    Ramification data (|G_0|, |G_1|) of P^1 -> P^1/G for each branch point.

    Raises:
        CatalogError: On tags excluded in characteristic p
    """
    tag.validate()
    k, p, q, n = tag.kind, tag.p, tag.q, tag.n
    if k == GroupKind.TRIVIAL:
        return []
    if k == GroupKind.CYCLIC:
        return [BranchDatum(n), BranchDatum(n)]
    if k == GroupKind.DIHEDRAL:
        if p == 2:
            return [BranchDatum(2, 2), BranchDatum(n)]
        return [BranchDatum(2), BranchDatum(2), BranchDatum(n)]
    if k == GroupKind.ELEMENTARY:
        return [BranchDatum(q, q)]
    if k == GroupKind.BOREL:
        return [BranchDatum(q * n, q), BranchDatum(n)]
    if k == GroupKind.TETRA:
        return [BranchDatum(2), BranchDatum(3), BranchDatum(3)]
    if k == GroupKind.OCTA:
        return [BranchDatum(2), BranchDatum(3), BranchDatum(4)]
    if k == GroupKind.ICOSA:
        if p == 3:
            return [BranchDatum(6, 3), BranchDatum(5)]
        return [BranchDatum(2), BranchDatum(3), BranchDatum(5)]
    if k == GroupKind.PGL2:
        return [BranchDatum(q * (q - 1), q), BranchDatum(q + 1)]
    return [BranchDatum(q * (q - 1) // 2, q), BranchDatum((q + 1) // 2)]


def genus_zero_defect(tag: GroupTag) -> Fraction:
    """|G| (-2 + sum of contributions); equals -2 for every catalog entry."""
    return tag.order * (-2 + sum((b.contribution() for b in branch_data(tag)), Fraction(0)))


def maximal_cyclic_orders(tag: GroupTag) -> Set[int]:
    """Orders of the maximal cyclic subgroups of order prime to p."""
    k, p, n = tag.kind, tag.p, tag.n
    if k == GroupKind.CYCLIC:
        return {n}
    if k == GroupKind.DIHEDRAL:
        return {n} if p == 2 else {n, 2}
    if k == GroupKind.BOREL:
        return {n}
    if k == GroupKind.TETRA:
        return {2, 3}
    if k == GroupKind.OCTA:
        return {2, 3, 4}
    if k == GroupKind.ICOSA:
        return {2, 5} if p == 3 else {2, 3, 5}
    if tag.is_projective_linear:
        return {m for m in tag.half_orders() if m > 1}
    return set()


def admissible_edge(tag: GroupTag) -> bool:
    """Edge groups are of the form E_t x| Z_n."""
    return tag.kind in EDGE_KINDS


def normal_sylow(tag: GroupTag) -> Tuple[GroupTag, GroupTag]:
    """(normal p-Sylow, cyclic quotient) of an edge-admissible tag."""
    if not admissible_edge(tag):
        raise CatalogError(f"{tag} has no normal p-Sylow with cyclic quotient")
    p = tag.p
    if tag.kind == GroupKind.CYCLIC:
        return GroupTag.trivial(p), tag
    if tag.kind == GroupKind.ELEMENTARY:
        return tag, GroupTag.trivial(p)
    if tag.kind == GroupKind.BOREL:
        return GroupTag.elementary(p, tag.t), GroupTag.cyclic(p, tag.n)
    return tag, tag


def embeds(sub: GroupTag, amb: GroupTag) -> bool:
    """Whether `amb` contains a subgroup isomorphic to `sub`."""
    if sub.p != amb.p:
        raise CatalogError(f"Characteristic mismatch: {sub} (p={sub.p}) in {amb} (p={amb.p})")
    if sub.is_trivial or sub == amb:
        return True
    if amb.order % sub.order:
        return False
    k, a, p = sub.kind, amb.kind, sub.p
    if k == GroupKind.CYCLIC:
        return any(m % sub.n == 0 for m in maximal_cyclic_orders(amb))
    if k == GroupKind.ELEMENTARY:
        return sub.t <= amb.p_rank
    if k == GroupKind.BOREL:
        if a == GroupKind.BOREL:
            return sub.t <= amb.t and amb.n % sub.n == 0
        if a == GroupKind.PGL2:
            return sub.t <= amb.t and (amb.q - 1) % sub.n == 0
        if a == GroupKind.PSL2:
            return sub.t <= amb.t and ((amb.q - 1) // 2) % sub.n == 0
        if a == GroupKind.ICOSA and p == 3:
            return (sub.t, sub.n) == (1, 2)
        return False
    if k == GroupKind.DIHEDRAL:
        if a == GroupKind.DIHEDRAL:
            return amb.n % sub.n == 0
        if amb.is_projective_linear:
            return any(m % sub.n == 0 for m in amb.half_orders() if m > 1)
        # A4 has no subgroup of order 6; its only dihedral subgroup is the Klein group
        if a == GroupKind.TETRA:
            return sub.n == 2
        return sub.n in maximal_cyclic_orders(amb) or (sub.n == 2 and a in PLATONIC)
    if k == GroupKind.TETRA:
        return a in (GroupKind.OCTA, GroupKind.ICOSA) or (amb.is_projective_linear and p != 2)
    if k == GroupKind.OCTA:
        if a == GroupKind.PGL2:
            return p != 2
        return a == GroupKind.PSL2 and (amb.q * amb.q - 1) % 16 == 0
    if k == GroupKind.ICOSA:
        return amb.is_projective_linear and (amb.q * amb.q - 1) % 5 == 0
    if k in (GroupKind.PGL2, GroupKind.PSL2):
        if a == GroupKind.ICOSA:
            return k == GroupKind.PSL2 and sub.q == 3
        if not amb.is_projective_linear or amb.t % sub.t:
            return False
        if a == GroupKind.PGL2 or k == GroupKind.PSL2 or p == 2:
            return True
        return (amb.t // sub.t) % 2 == 0
    return False


def is_maximal_cyclic(sub: GroupTag, amb: GroupTag) -> bool:
    """
    True if no strictly larger cyclic subgroup of `amb` contains `sub`.

    Raises:
        CatalogError: If `sub` is not cyclic or does not embed in `amb`
    """
    if not sub.is_cyclic:
        raise CatalogError(f"{sub} is not cyclic")
    if not embeds(sub, amb):
        raise CatalogError(f"{sub} does not embed in {amb}")
    if sub.is_trivial:
        return amb.is_trivial
    if sub.kind == GroupKind.ELEMENTARY:
        # elements of order p lie in no larger cyclic subgroup
        return True
    return sub.n in maximal_cyclic_orders(amb)


# -- explicit realizations -----------------------------------------------------

FqMat = Tuple[FqElement, FqElement, FqElement, FqElement]


def _fq_mul(x: FqMat, y: FqMat) -> FqMat:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _fq_key(x: FqMat) -> Tuple[int, ...]:
    lead = next(v for v in x if not v.is_zero())
    inv = lead.inverse()
    return tuple((v * inv).value for v in x)


def _fq_is_scalar(x: FqMat) -> bool:
    a, b, c, d = x
    return b.is_zero() and c.is_zero() and a == d


def _fq_order(x: FqMat, cap: int) -> Optional[int]:
    power = x
    for k in range(1, cap + 1):
        if _fq_is_scalar(power):
            return k
        power = _fq_mul(power, x)
    return None


def _fq_group_size(gens: List[FqMat], cap: int) -> int:
    seen = {_fq_key(g): g for g in gens}
    frontier = list(seen.values())
    while frontier and len(seen) <= cap:
        fresh = []
        for g in frontier:
            for h in gens:
                k = _fq_mul(g, h)
                key = _fq_key(k)
                if key not in seen:
                    seen[key] = k
                    fresh.append(k)
        frontier = fresh
    return len(seen)


def _pgl2_elements(spec: FqSpec) -> Iterator[FqMat]:
    """PGL(2,q) with each class normalized by its first nonzero entry."""
    zero, one = spec.zero(), spec.one()
    for b, c, d in itertools.product(spec.elements(), repeat=3):
        if not (d - b * c).is_zero():
            yield (one, b, c, d)
    for c, d in itertools.product(spec.nonzero_elements(), spec.elements()):
        yield (zero, one, c, d)


def _to_mat2(spec: FqSpec, x: FqMat) -> Mat2:
    return Mat2.of(spec, *x)


def _nonsplit_cyclic(spec: FqSpec, n: int) -> FqMat:
    """Companion matrix (0 -N; 1 T) of projective order n, least (N, T) first."""
    zero, one = spec.zero(), spec.one()
    for norm, trace in itertools.product(spec.nonzero_elements(), spec.elements()):
        candidate = (zero, -norm, one, trace)
        if _fq_order(candidate, n) == n:
            return candidate
    raise InvalidInputError(f"No element of order {n} in PGL(2,{spec.q})")


def _triangle_generators(tag: GroupTag, spec: FqSpec) -> List[FqMat]:
    ox, oy, oxy = TRIANGLE[tag.kind]
    elements = list(_pgl2_elements(spec))
    cap = max(ox, oy, oxy)
    y = next((g for g in elements if _fq_order(g, cap) == oy), None)
    if y is not None:
        for x in elements:
            if _fq_order(x, cap) != ox or _fq_order(_fq_mul(x, y), cap) != oxy:
                continue
            if _fq_group_size([x, y], tag.order) == tag.order:
                return [x, y]
    raise InvalidInputError(f"{tag} is not realized in PGL(2,{spec.q}); use a larger field")


def embed(tag: GroupTag, spec: FqSpec) -> List[Mat2]:
    """
    Generators of a copy of `tag` inside PGL(2, F_q((pi))).

    Cyclic groups use a split torus diag(zeta, 1) when n | q-1 and a non-split
    companion matrix otherwise; E and B use translations by an F_p-basis.

    Raises:
        CatalogError: On an invalid tag or characteristic mismatch
        InvalidInputError: If the session field is too small
    """
    tag.validate()
    if tag.p != spec.p:
        raise CatalogError(f"{tag} lives in characteristic {tag.p}, field has p={spec.p}")
    k, q = tag.kind, spec.q
    if k == GroupKind.TRIVIAL:
        return [Mat2.identity(spec)]

    if k in (GroupKind.CYCLIC, GroupKind.DIHEDRAL):
        n = tag.n
        if (q - 1) % n == 0:
            rotation = Mat2.diag(spec, spec.root_of_unity(n))
            if k == GroupKind.CYCLIC:
                return [rotation]
            return [rotation, Mat2.antidiag(spec)]
        companion = _nonsplit_cyclic(spec, n)
        if k == GroupKind.CYCLIC:
            return [_to_mat2(spec, companion)]
        trace = companion[3]
        involution = (spec.one(), trace, spec.zero(), -spec.one())
        return [_to_mat2(spec, companion), _to_mat2(spec, involution)]

    if k in (GroupKind.ELEMENTARY, GroupKind.BOREL):
        if tag.t > spec.t:
            raise InvalidInputError(f"{tag} needs F_q with q >= {tag.q}, session field is {spec}")
        if spec.t % tag.t == 0:
            basis = spec.subfield_basis(tag.t)
        elif k == GroupKind.ELEMENTARY:
            g = spec.generator()
            basis = [g ** i for i in range(tag.t)]
        else:
            raise InvalidInputError(f"{tag} needs F_{tag.q} as a subfield of {spec}")
        gens = [Mat2.tau(spec, b) for b in basis]
        if k == GroupKind.BOREL:
            gens.append(Mat2.diag(spec, spec.root_of_unity(tag.n)))
        return gens

    if tag.is_projective_linear:
        if spec.t % tag.t:
            raise InvalidInputError(f"{tag} needs F_{tag.q} as a subfield of {spec}")
        zeta = spec.root_of_unity(tag.q - 1)
        if k == GroupKind.PSL2:
            zeta = zeta * zeta
        return [Mat2.diag(spec, zeta), Mat2.tau(spec, 1), Mat2.antidiag(spec)]

    gens = [_to_mat2(spec, x) for x in _triangle_generators(tag, spec)]
    logger.debug(f"embed({tag}) over {spec}: triangle generators found")
    return gens


def all_tags(p: int, max_t: int = 2, max_n: int = 12) -> List[GroupTag]:
    """Every valid tag with small parameters, for sweeps and tests."""
    tags = [GroupTag.trivial(p)]
    for n in range(2, max_n + 1):
        for tag in (GroupTag.cyclic(p, n), GroupTag.dihedral(p, n)):
            try:
                tags.append(tag.validate())
            except CatalogError:
                pass
    for t in range(1, max_t + 1):
        tags.append(GroupTag.elementary(p, t))
        tags += [GroupTag.borel(p, t, n) for n in divisors(p ** t - 1) if n > 1]
        tags.append(GroupTag.pgl2(p, t))
        if p != 2:
            tags.append(GroupTag.psl2(p, t))
    for kind in PLATONIC:
        try:
            tags.append(GroupTag.make(kind, p).validate())
        except CatalogError:
            pass
    return tags
