"""
Riemann-Hurwitz accounting for ordinary covers of P^1 and the bound
F(g) = 2 sqrt(g) (sqrt(g) + 1)^2.

Every comparison with F is exact: square roots are eliminated by squaring with
sign bookkeeping, so "attains the bound" is decidable.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import sympy
from sympy import multiplicity

from settings import get_setting, load_data_file

from .finite_groups import BranchDatum
from .framework import GenusError, InvalidInputError

logger = logging.getLogger("Mumford.hurwitz_bounds")


class Comparison(Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


@dataclass
class CoverData:
    """A Galois cover X -> P^1 with group of order `aut_order` and its branch data."""
    aut_order: int
    branches: List[BranchDatum] = field(default_factory=list)
    base_genus: int = 0
    p: Optional[int] = None

    def validate(self) -> "CoverData":
        """
        Raises:
            InvalidInputError: If a branch is not ordinary (ep a p-power with e/ep prime to p)
        """
        if self.aut_order < 1:
            raise InvalidInputError(f"Group order must be positive, got {self.aut_order}")
        for b in self.branches:
            if b.e < 1 or b.ep < 1 or b.e % b.ep:
                raise InvalidInputError(f"Branch {b.as_tuple()}: ep must divide e")
            if self.aut_order % b.e:
                raise InvalidInputError(f"Branch {b.as_tuple()}: e does not divide |A|={self.aut_order}")
            if self.p is not None:
                if b.ep != self.p ** multiplicity(self.p, b.ep) or (b.e // b.ep) % self.p == 0:
                    raise InvalidInputError(f"Branch {b.as_tuple()} is not ordinary for p={self.p}")
        return self


def ramification_ratio(branches: Sequence[BranchDatum], base_genus: int = 0) -> Fraction:
    """(g-1)/|A| = (2h - 2 + sum (e + ep - 2)/e) / 2."""
    total = sum((b.contribution() for b in branches), Fraction(0))
    return (2 * base_genus - 2 + total) / 2


def hurwitz_genus(cover: CoverData) -> Fraction:
    """Genus from 2g - 2 = |A| (2h - 2 + sum (e + ep - 2)/e); not necessarily integral."""
    return 1 + cover.aut_order * ramification_ratio(cover.branches, cover.base_genus)


def ab_ratio(cover: CoverData) -> Tuple[int, int]:
    """
    (a, b) = ((g-1)/lambda, |A|/lambda) with lambda = gcd(g-1, |A|).

    Raises:
        GenusError: If g - 1 is not a positive integer
    """
    g_minus_1 = hurwitz_genus(cover) - 1
    if g_minus_1.denominator != 1 or g_minus_1 <= 0:
        raise GenusError(f"g - 1 = {g_minus_1} is not a positive integer")
    g1 = int(g_minus_1)
    lam = math.gcd(g1, cover.aut_order)
    return g1 // lam, cover.aut_order // lam


def F_compare(n: int, g: int) -> Comparison:
    """
    Compare n with F(g) = 4g + 2(g+1) sqrt(g) exactly.

    n > F(g) iff n > 4g and (n - 4g)^2 > 4g(g+1)^2.
    """
    d = n - 4 * g
    rhs = 4 * g * (g + 1) ** 2
    if d < 0:
        return Comparison.LESS
    if d * d > rhs:
        return Comparison.GREATER
    if d * d == rhs:
        return Comparison.EQUAL
    return Comparison.LESS


def F_expression(g: int) -> sympy.Expr:
    """F(g) as a sympy expression, for display."""
    root = sympy.sqrt(g)
    return sympy.expand(2 * root * (root + 1) ** 2)


def lambda_criterion(lambda0: int, a: int, b: int) -> bool:
    """lambda0 * b <= F(lambda0 * a + 1)."""
    return F_compare(lambda0 * b, lambda0 * a + 1) != Comparison.GREATER


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def surd_sign(a: int, b: int, m: int, c: int, n: int) -> int:
    """Sign of a + b sqrt(m) - c sqrt(n) for integers b, c, m, n >= 0."""
    p_sign = _sign(b * b * m - c * c * n)
    a_sign = _sign(a)
    if a_sign == 0:
        return p_sign
    if p_sign == 0 or p_sign == a_sign:
        return a_sign
    # opposite signs: compare a^2 with (b sqrt m - c sqrt n)^2
    e = a * a - b * b * m - c * c * n
    cross = 4 * b * b * c * c * m * n
    if e >= 0:
        diff = 1 if (e > 0 or cross > 0) else 0
    else:
        diff = _sign(cross - e * e)
    if diff == 0:
        return 0
    return a_sign if diff > 0 else p_sign


def bound_ratio_less(x: int, y: int) -> bool:
    """F(x)/(x-1) < F(y)/(y-1), decided exactly."""
    if x < 2 or y < 2:
        raise InvalidInputError("bound_ratio_less needs x, y >= 2")
    # (4x + 2(x+1)sqrt x)(y-1) - (4y + 2(y+1)sqrt y)(x-1)
    return surd_sign(4 * (y - x), 2 * (x + 1) * (y - 1), x, 2 * (y + 1) * (x - 1), y) < 0


def exceptional_genera(limit: int) -> List[int]:
    """Genera g in [2, limit] with 12(g-1) > F(g)."""
    return [g for g in range(2, limit + 1) if F_compare(12 * (g - 1), g) == Comparison.GREATER]


def attaining_orders(a: int, b: int) -> List[int]:
    """
    Integers s >= 2 with g = s^2, |A| = F(g) and (g-1)/|A| = a/b.

    These are the integer roots of 2a s^2 + (2a - b) s + b = 0.
    """
    disc = (2 * a - b) ** 2 - 8 * a * b
    if a <= 0 or disc < 0:
        return []
    root = math.isqrt(disc)
    if root * root != disc:
        return []
    roots = set()
    for num in (b - 2 * a + root, b - 2 * a - root):
        if num % (4 * a) == 0 and num // (4 * a) >= 2:
            roots.add(num // (4 * a))
    return sorted(roots)


@dataclass
class BoundReport:
    g: int
    aut_order: int
    classical_bound: int
    f_comparison: Comparison
    verdict: str

    def to_dict(self) -> Dict:
        return {
            "g": self.g,
            "aut_order": self.aut_order,
            "classical_bound": self.classical_bound,
            "F": str(F_expression(self.g)),
            "f_comparison": self.f_comparison.value,
            "verdict": self.verdict,
        }


def bound_report(g: int, aut_order: int) -> BoundReport:
    """
    Place |A| relative to 12(g-1) and F(g).

    Raises:
        GenusError: If g < 2
    """
    if g < 2:
        raise GenusError(f"Genus must be >= 2, got {g}")
    classical = 12 * (g - 1)
    comparison = F_compare(aut_order, g)
    if aut_order <= classical:
        verdict = "classical"
    elif comparison != Comparison.GREATER:
        verdict = "within F"
    else:
        verdict = "exceeds"
    return BoundReport(g, aut_order, classical, comparison, verdict)


# -- census of exceptional group orders ------------------------------------------

@dataclass
class CensusReport:
    per_genus: List[Dict] = field(default_factory=list)
    total: int = 0
    nonsolvable: List[Dict] = field(default_factory=list)
    interval: str = "F(g) < |A| <= 12(g-1)"

    def to_dict(self) -> Dict:
        return {
            "perGenus": self.per_genus,
            "total": self.total,
            "nonsolvable": self.nonsolvable,
            "interval": self.interval,
        }


def exceptional_orders(g: int) -> List[int]:
    """Orders n with F(g) < n <= 12(g-1)."""
    return [n for n in range(1, 12 * (g - 1) + 1) if F_compare(n, g) == Comparison.GREATER]


def load_group_counts(filename: str = "group_counts.yaml") -> Tuple[Dict[int, int], Dict[int, int]]:
    """(number of groups, number of non-solvable groups) per order, from the shipped data."""
    data = load_data_file(filename)
    orders = data.get("orders", {})
    groups = {int(n): int(row["groups"]) for n, row in orders.items()}
    nonsolvable = {int(n): int(row.get("nonsolvable", 0)) for n, row in orders.items()}
    logger.debug(f"Loaded group counts for {len(groups)} orders from {filename}")
    return groups, nonsolvable


def census_exceptional(
    group_counts: Dict[int, int],
    nonsolvable_counts: Dict[int, int],
    genera: Optional[Sequence[int]] = None,
) -> CensusReport:
    """
    Count the groups whose order lies strictly above F(g) and at most 12(g-1).

    Raises:
        InvalidInputError: If an order in some interval is missing from the tables
    """
    genera = list(genera) if genera is not None else list(get_setting("census", "genera", [5, 6, 7, 8]))
    report = CensusReport()
    for g in genera:
        orders = exceptional_orders(g)
        missing = [n for n in orders if n not in group_counts]
        if missing:
            raise InvalidInputError(f"Group counts missing for orders {missing}", {"g": g})
        count = sum(group_counts[n] for n in orders)
        report.per_genus.append({"g": g, "orders": orders, "count": count})
        report.total += count
        for n in orders:
            if nonsolvable_counts.get(n, 0):
                report.nonsolvable.append({"order": n, "count": nonsolvable_counts[n]})
    logger.info(f"Census over genera {genera}: {report.total} groups")
    return report
