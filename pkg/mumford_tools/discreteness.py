"""
Isometric circles, the disjointness criterion for free products of finite groups,
Schottky commutator generators and bounded word checks.

A disk is stored by its center and valuation radius r: {z : v(z - center) >= r}.
The isometric circle of g = (a b; c d) is {z : 2 v(cz + d) >= v(det g)}, which is
{|cz + d| <= 1} for unimodular g and does not depend on scaling g.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from settings import get_setting

from .bt_tree import Mat2, closure
from .framework import IndeterminateError, InvalidInputError
from .localfield import FqSpec, LocalElement, ProjPoint, make_field

logger = logging.getLogger("Mumford.discreteness")


@dataclass(frozen=True)
class Disk:
    proper: bool
    center: Optional[LocalElement] = None
    radius_val: Optional[int] = None

    def contains(self, z: ProjPoint) -> bool:
        if not self.proper:
            raise InvalidInputError("Membership in an improper disk is not defined")
        if z.is_infinity:
            return False
        diff = z.value - self.center
        return diff.is_exact_zero or diff.valuation() >= self.radius_val

    def to_dict(self) -> Dict:
        if not self.proper:
            return {"proper": False}
        return {"proper": True, "center": str(self.center), "radius_val": self.radius_val}

    def __str__(self) -> str:
        if not self.proper:
            return "improper"
        return f"{{v(z - ({self.center})) >= {self.radius_val}}}"


def isometric_circle(g: Mat2) -> Disk:
    """
    Isometric circle of g; improper when c = 0.

    Raises:
        IndeterminateError: If v(c) or v(det) is not determined
    """
    if g.c.is_exact_zero:
        return Disk(False)
    vc = g.c.valuation()
    vdet = g.det().valuation()
    center = -(g.d / g.c)
    radius = math.ceil((vdet - 2 * vc) / 2)
    return Disk(True, center, int(radius))


def _center_valuation(d1: Disk, d2: Disk) -> float:
    diff = d1.center - d2.center
    if diff.is_exact_zero:
        return math.inf
    return diff.valuation()


def disks_disjoint(d1: Disk, d2: Disk) -> bool:
    """
    Proper disks are disjoint iff their centers are farther apart than both radii.

    Raises:
        InvalidInputError: On an improper disk
    """
    if not (d1.proper and d2.proper):
        raise InvalidInputError("disks_disjoint needs proper disks")
    return _center_valuation(d1, d2) < min(d1.radius_val, d2.radius_val)


def disks_nested(d1: Disk, d2: Disk) -> bool:
    """One disk contains the other (ultrametric disks never partially overlap)."""
    return not disks_disjoint(d1, d2)


@dataclass
class DiscretenessReport:
    disjoint: bool
    witnesses: List[Tuple[str, str]] = field(default_factory=list)
    conjugator: Optional[str] = None
    pairs_checked: int = 0

    def to_dict(self) -> Dict:
        return {
            "disjoint": self.disjoint,
            "witnesses": [list(w) for w in self.witnesses],
            "conjugator": self.conjugator,
            "pairs_checked": self.pairs_checked,
        }


def _nontrivial(elements: Sequence[Mat2]) -> List[Mat2]:
    return [g for g in elements if not g.is_scalar()]


def _conjugator(spec: FqSpec, elements: Sequence[Mat2]) -> Tuple[Mat2, ProjPoint]:
    """R = (0 1; 1 -w) with w fixed by no element, so no conjugate fixes infinity."""
    candidates = [LocalElement.constant(spec, c) for c in spec.elements()]
    candidates += [LocalElement.monomial(spec, c, k) for k in (-1, 1, -2, 2) for c in spec.nonzero_elements()]
    candidates += [LocalElement.one(spec) + LocalElement.pi(spec, k) for k in (-1, 1)]
    for w in candidates:
        point = ProjPoint.finite(w)
        if all(not g.act_point(point).same_point(point) for g in elements):
            return Mat2.of(spec, 0, 1, 1, -w), point
    raise IndeterminateError("No conjugating point found among the candidates")


def free_product_discrete(gens_g: Sequence[Mat2], gens_h: Sequence[Mat2],
                          max_witnesses: int = 5) -> DiscretenessReport:
    """
    Disjointness test for the free product of two finite groups.

    Every nontrivial element of G must have an isometric circle disjoint from that
    of every nontrivial element of H.  If some element fixes infinity, both groups
    are first conjugated by R = (0 1; 1 -w).
    """
    group_g = _nontrivial(closure(gens_g)) if gens_g else []
    group_h = _nontrivial(closure(gens_h)) if gens_h else []
    if not group_g or not group_h:
        return DiscretenessReport(True)

    conjugator = None
    elements = group_g + group_h
    if any(g.c.is_exact_zero for g in elements):
        r, point = _conjugator(elements[0].spec, elements)
        r_inv = r.adjugate()
        group_g = [r * g * r_inv for g in group_g]
        group_h = [r * h * r_inv for h in group_h]
        conjugator = str(r)
        logger.info(f"Conjugating by {r} (w = {point}) to make all isometric circles proper")

    circles_g = [(g, isometric_circle(g)) for g in group_g]
    circles_h = [(h, isometric_circle(h)) for h in group_h]
    report = DiscretenessReport(True, conjugator=conjugator)
    for (g, dg), (h, dh) in itertools.product(circles_g, circles_h):
        report.pairs_checked += 1
        if not disks_disjoint(dg, dh):
            report.disjoint = False
            if len(report.witnesses) < max_witnesses:
                report.witnesses.append((str(g), str(h)))
    return report


def commutator(x: Mat2, y: Mat2) -> Mat2:
    return x * y * x.adjugate() * y.adjugate()


def schottky_commutators(gens_e: Sequence[Mat2], gamma: Mat2) -> List[Mat2]:
    """
    Generators [e, gamma e' gamma] over all pairs of nontrivial e, e' in E.

    Raises:
        InvalidInputError: If gamma is not an involution
    """
    if gamma.is_scalar() or not (gamma * gamma).is_scalar():
        raise InvalidInputError("gamma must be an involution")
    group = _nontrivial(closure(gens_e))
    conjugates = [gamma * e * gamma for e in group]
    return [commutator(e, f) for e in group for f in conjugates]


@dataclass
class WordProblemReport:
    max_length: int
    words_checked: int = 0
    violations: List[str] = field(default_factory=list)
    undecided: List[str] = field(default_factory=list)

    @property
    def free(self) -> bool:
        return not self.violations and not self.undecided

    def to_dict(self) -> Dict:
        return {
            "max_length": self.max_length,
            "words_checked": self.words_checked,
            "violations": self.violations,
            "undecided": self.undecided,
            "free": self.free,
        }


def free_words_check(gens: Sequence[Mat2], length: Optional[int] = None) -> WordProblemReport:
    """
    Evaluate every reduced word of length <= L over gens and their inverses.

    Words are walked depth first so each word costs one product with its prefix.

    Raises:
        InvalidInputError: If L < 1 or no generators are given
    """
    length = length or int(get_setting("discreteness", "word_length", 4))
    if length < 1 or not gens:
        raise InvalidInputError("free_words_check needs L >= 1 and at least one generator")
    letters = []
    for i, g in enumerate(gens):
        letters.append((i, 1, g))
        letters.append((i, -1, g.adjugate()))
    report = WordProblemReport(length)

    def walk(prefix: Mat2, word: List[Tuple[int, int]]) -> None:
        for i, sign, matrix in letters:
            if word and word[-1] == (i, -sign):
                continue
            product = prefix * matrix if word else matrix
            current = word + [(i, sign)]
            report.words_checked += 1
            text = " ".join(f"g{j}" if s > 0 else f"g{j}^-1" for j, s in current)
            try:
                if product.is_scalar():
                    report.violations.append(text)
                    continue
            except IndeterminateError:
                report.undecided.append(text)
                continue
            if len(current) < length:
                walk(product, current)

    walk(Mat2.identity(gens[0].spec), [])
    logger.debug(f"free_words_check: {report.words_checked} words, {len(report.violations)} violations")
    return report


@dataclass
class AsmConstruction:
    p: int
    t: int
    shift_val: int
    group_e: List[Mat2]
    group_h: List[Mat2]
    gamma: Mat2
    discreteness: DiscretenessReport
    generators: List[Mat2]

    def to_dict(self) -> Dict:
        return {
            "p": self.p,
            "t": self.t,
            "shift_val": self.shift_val,
            "discreteness": self.discreteness.to_dict(),
            "rank": len(self.generators),
        }


def asm_construction(p: int, t: int, shift_val: int) -> AsmConstruction:
    """
    E = {(1 0; a 1)} for a in F_q, its conjugate by Q = tau(pi^shift_val), and the
    involution gamma = (-1 s; 0 1) with gamma E gamma = Q E Q^-1.
    """
    spec = make_field(p, t)
    shift = LocalElement.pi(spec, shift_val)
    gens_e = [Mat2.tau_lower(spec, b) for b in spec.subfield_basis(t)]
    q_mat = Mat2.tau(spec, shift)
    gens_h = [q_mat * e * q_mat.adjugate() for e in gens_e]
    gamma = Mat2.of(spec, -1, shift, 0, 1)
    report = free_product_discrete(gens_e, gens_h)
    generators = schottky_commutators(gens_e, gamma)
    logger.info(f"asm_construction(p={p}, t={t}, shift={shift_val}): disjoint={report.disjoint}, "
                f"rank={len(generators)}")
    return AsmConstruction(p, t, shift_val, gens_e, gens_h, gamma, report, generators)
