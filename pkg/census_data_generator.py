"""Regenerate mumford_tools/data/group_counts.yaml for the exceptional-order census"""

import sys

import colorama
import yaml
from colorama import Fore, Style
from sympy import factorint
from sympy.combinatorics import AlternatingGroup
from sympy.combinatorics.group_numbers import groups_count

from mumford_tools.hurwitz_bounds import exceptional_orders
from settings import get_setting, golden_path

colorama.init()


def nonsolvable_count(n: int) -> int:
    """
    Number of non-solvable groups of order n, for n < 120.

    Burnside (p^a q^b) and odd order settle most n; below 120 the only other
    source of non-solvability is a composition factor A5, which forces n = 60.
    """
    if n >= 120:
        raise ValueError(f"Solvability filter only covers orders below 120, got {n}")
    if len(factorint(n)) <= 2 or n % 2:
        return 0
    a5 = AlternatingGroup(5)
    return 1 if n == a5.order() and not a5.is_solvable else 0


def build_counts(genera):
    orders = sorted({n for g in genera for n in exceptional_orders(g)})
    return {n: {"groups": int(groups_count(n)), "nonsolvable": nonsolvable_count(n)} for n in orders}


def main():
    genera = get_setting("census", "genera", [5, 6, 7, 8])
    counts = build_counts(genera)
    path = golden_path("group_counts.yaml")
    header = (
        "# Number of groups of order n, and how many of them are non-solvable,\n"
        f"# for the orders F(g) < n <= 12(g-1) with g in {{{', '.join(map(str, genera))}}}.\n"
        "# Regenerate with: python census_data_generator.py\n"
    )
    with open(path, "w", encoding="utf-8") as file:
        file.write(header)
        yaml.safe_dump({"orders": counts}, file, sort_keys=True, default_flow_style=None)
    print(Fore.GREEN + f"✅ Wrote {len(counts)} orders to {path}" + Style.RESET_ALL)
    return 0


if __name__ == "__main__":
    sys.exit(main())
