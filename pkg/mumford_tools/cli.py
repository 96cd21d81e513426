#!/usr/bin/env python3
"""
Mumford Tools CLI - command line interface for the automorphism-bound toolkit
"""

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

from settings import SETTINGS, get_setting

from .bt_tree import (
    Mat2,
    TreeVertex,
    Window,
    apartment,
    distance,
    geodesic,
    median,
    mirror,
    tree_of_points,
)
from .case_catalog import CaseId, case_report
from .curve_families import asm, drinfeld, henn_check, icosahedral
from .discreteness import asm_construction, free_words_check, isometric_circle
from .framework import CommandRegistry, InvalidInputError, Report, command, setup_logging
from .hurwitz_bounds import census_exceptional, load_group_counts
from .localfield import make_field, parse_local, parse_point
from .rendering import colorize, frame_to_csv, frame_to_markdown, headline, rows_frame
from .tables import MU_TABLES, TABLE_NAMES, ab_table, load_golden, regenerate_mu_table, table_diff

logger = logging.getLogger("Mumford.cli")


# -- argument parsing helpers ------------------------------------------------------

def parse_matrix(text: str, spec) -> Mat2:
    """
    Parse "tau X", "taul X", "diag X [Y]", "antidiag" or "a,b;c,d" over F_q((pi)).

    Raises:
        InvalidInputError: On malformed input
    """
    words = text.split()
    if not words:
        raise InvalidInputError("Empty matrix")
    head = words[0].lower()
    if head == "tau" and len(words) == 2:
        return Mat2.tau(spec, parse_local(words[1], spec))
    if head == "taul" and len(words) == 2:
        return Mat2.tau_lower(spec, parse_local(words[1], spec))
    if head == "diag" and len(words) in (2, 3):
        y = parse_local(words[2], spec) if len(words) == 3 else 1
        return Mat2.diag(spec, parse_local(words[1], spec), y)
    if head == "antidiag" and len(words) == 1:
        return Mat2.antidiag(spec)
    rows = text.split(";")
    entries = [x for row in rows for x in row.split(",")]
    if len(rows) != 2 or len(entries) != 4:
        raise InvalidInputError(f"Cannot parse matrix {text!r}; use 'a,b;c,d' or tau/taul/diag/antidiag")
    m = Mat2.of(spec, *(parse_local(x, spec) for x in entries))
    if not m.is_invertible():
        raise InvalidInputError(f"Matrix {text!r} is singular")
    return m


def parse_vertex(text: str, spec) -> TreeVertex:
    """Parse a vertex as "n:u", e.g. "2:1+pi"."""
    n, sep, u = text.partition(":")
    if not sep:
        raise InvalidInputError(f"Vertex must be written n:u, got {text!r}")
    try:
        level = int(n)
    except ValueError:
        raise InvalidInputError(f"Vertex level must be an integer, got {n!r}")
    return TreeVertex.make(level, parse_local(u, spec))


def _spec(params: Dict[str, Any]):
    p = params.get("p") or get_setting("field", "p", 3)
    t = params.get("t") or get_setting("field", "t", 1)
    return make_field(p, t)


# -- commands -----------------------------------------------------------------------

@command("table", "Regenerate a mu table or the (a, b) table and compare with golden data",
         {"name": list(TABLE_NAMES)})
def cmd_table(params: Dict[str, Any]) -> Report:
    name = params["name"]
    report = Report(command=f"table {name}")
    if name in MU_TABLES:
        golden = load_golden()
        frame = regenerate_mu_table(name, golden)
        report.payload = {"table": name, "rows": len(golden[name]), "entries": len(frame),
                          "loose": int((frame["status"] == "loose").sum())}
    elif name == "6.3":
        p = params.get("p") or get_setting("field", "p", 3)
        t = params.get("t") or get_setting("field", "t", 1)
        frame = ab_table(p, t)
        report.payload = {"table": name, "p": p, "t": t, "entries": len(frame)}
    else:
        raise InvalidInputError(f"Unknown table {name!r}. Available: {list(TABLE_NAMES)}")
    report.rows = frame.to_dict("records")
    for line in table_diff(frame):
        report.check(False, f"{name}: {line.get('case') or (line['v1'], line['e'], line['v0'])} "
                            f"expected {line.get('expected', line.get('table_ratio'))}, "
                            f"computed {line.get('computed', line.get('mu'))}")
    return report


@command("census", "Count groups with F(g) < |A| <= 12(g-1) for the exceptional genera", {})
def cmd_census(params: Dict[str, Any]) -> Report:
    groups, nonsolvable = load_group_counts()
    census = census_exceptional(groups, nonsolvable)
    report = Report(command="census", payload=census.to_dict(), rows=census.per_genus)
    expected = get_setting("census", "expected_total")
    if expected is not None:
        report.check(census.total == expected, f"census total {census.total} != {expected}")
    orders = sorted(row["order"] for row in census.nonsolvable)
    allowed = get_setting("census", "nonsolvable_orders")
    if allowed is not None:
        report.check(orders == sorted(allowed), f"non-solvable orders {orders} != {allowed}")
    return report


@command("case", "Tree, (a, b), lambda0 and bound verdicts of a catalog case", {"descriptor": "str"})
def cmd_case(params: Dict[str, Any]) -> Report:
    case = CaseId.parse(params["descriptor"])
    payload = case_report(case)
    report = Report(command=f"case {case}", payload=payload)
    report.check(payload["consistent"], "KPS genus and Hurwitz genus disagree")
    verdict = "attains bound" if payload.get("attains", {}).get("attains") else (
        "classical" if payload["classical"] else "below F")
    payload["verdict"] = verdict
    report.rows = [{"case": payload["case"], "tree": payload["tree_text"], "mu": payload["mu"],
                    "a": payload["a"], "b": payload["b"], "lambda0": payload["lambda0"]["value"],
                    "verdict": verdict}]
    return report


@command("family", "Explicit families: asm P T | drinfeld Q D... | icosa P | henn A0 A1",
         {"name": ["asm", "drinfeld", "icosa", "icosahedral", "henn"], "args": "ints"})
def cmd_family(params: Dict[str, Any]) -> Report:
    name, args = params["name"], list(params.get("args") or [])

    def need(count: int) -> None:
        if len(args) < count:
            raise InvalidInputError(f"family {name} needs at least {count} integer argument(s)")

    if name == "henn":
        need(2)
        holds = henn_check(args[0], args[1])
        return Report(command=f"family henn {args[0]} {args[1]}", payload={"henn": holds},
                      rows=[{"A0": args[0], "A1": args[1], "henn": holds}])
    if name == "asm":
        need(2)
        record = asm(args[0], args[1])
    elif name == "drinfeld":
        need(2)
        record = drinfeld(args[0], args[1:])
    elif name in ("icosa", "icosahedral"):
        need(1)
        record = icosahedral(args[0])
    else:
        raise InvalidInputError(f"Unknown family {name!r}")
    report = Report(command=f"family {name} {' '.join(map(str, args))}", payload=record.to_dict())
    report.rows = [{"name": record.name, "g": record.genus, "aut_order": record.aut_order,
                    "normalizer": str(record.normalizer_tree), "verdict": record.bound.verdict,
                    "stratum_dim": record.stratum_dim}]
    for check, passed in record.checks.items():
        report.check(passed, f"{record.name}: check {check} failed")
    return report


@command("tree", "Bruhat-Tits tree operations: mirror, median, apartment, span, distance",
         {"op": ["mirror", "median", "apartment", "span", "distance"], "args": "str"})
def cmd_tree(params: Dict[str, Any]) -> Report:
    spec = _spec(params)
    op, args = params["op"], list(params.get("args") or [])
    radius = params.get("window") or get_setting("tree", "window", 4)
    report = Report(command=f"tree {op}")
    if op == "mirror":
        if not args:
            raise InvalidInputError("tree mirror takes a matrix argument")
        window = mirror(parse_matrix(" ".join(args), spec), Window(spec, radius))
        levels = sorted({-v.n for v in window.vertices if v.u.is_exact_zero})
        report.payload = {"window": window.to_dict(), "apartment_levels": levels, "dot": window.to_dot("mirror")}
        report.rows = [{"vertex": str(v)} for v in window.vertices]
    elif op == "median":
        if len(args) != 3:
            raise InvalidInputError("tree median takes three points")
        v = median(*(parse_point(a, spec) for a in args))
        report.payload = {"median": str(v), "n": v.n, "u": str(v.u)}
        report.rows = [{"vertex": str(v)}]
    elif op == "apartment":
        if len(args) != 2:
            raise InvalidInputError("tree apartment takes two points")
        path = apartment(parse_point(args[0], spec), parse_point(args[1], spec), (-radius, radius))
        report.payload = {"vertices": [str(v) for v in path]}
        report.rows = [{"vertex": str(v)} for v in path]
    elif op == "span":
        window = tree_of_points([parse_point(a, spec) for a in args], Window(spec, radius))
        report.payload = {"window": window.to_dict(), "dot": window.to_dot("span")}
        report.rows = [{"vertex": str(v), "degree": window.degree(v)} for v in window.vertices]
        report.check(window.is_connected(), "span is not connected")
    elif op == "distance":
        if len(args) != 2:
            raise InvalidInputError("tree distance takes two vertices n:u")
        v, w = (parse_vertex(a, spec) for a in args)
        d = distance(v, w)
        report.payload = {"distance": d, "geodesic": [str(x) for x in geodesic(v, w)]}
        report.rows = [{"from": str(v), "to": str(w), "distance": d}]
        report.check(len(geodesic(v, w)) == d + 1, "geodesic length disagrees with distance")
    else:
        raise InvalidInputError(f"Unknown tree operation {op!r}")
    return report


@command("discrete", "Isometric circles and the ASM Schottky construction",
         {"op": ["asm", "circle"], "args": "str"})
def cmd_discrete(params: Dict[str, Any]) -> Report:
    op, args = params["op"], list(params.get("args") or [])
    if op == "circle":
        spec = _spec(params)
        if not args:
            raise InvalidInputError("discrete circle takes a matrix argument")
        disk = isometric_circle(parse_matrix(" ".join(args), spec))
        return Report(command="discrete circle", payload=disk.to_dict(), rows=[disk.to_dict()])
    if op != "asm":
        raise InvalidInputError(f"Unknown discrete operation {op!r}")
    p, t, shift, words = _asm_arguments(params, args)
    construction = asm_construction(p, t, shift)
    report = Report(command=f"discrete asm p={p} t={t} shift={shift} L={words}", payload=construction.to_dict())
    q = p ** t
    report.check(len(construction.generators) == (q - 1) ** 2,
                 f"rank {len(construction.generators)} != (q-1)^2 = {(q - 1) ** 2}")
    words_report = free_words_check(construction.generators, words)
    report.payload["freenessTo"] = words
    report.payload["words"] = words_report.to_dict()
    if construction.discreteness.disjoint:
        report.check(not words_report.violations, "relation found among the commutator generators")
    report.rows = [{"p": p, "t": t, "shift": shift, "disjoint": construction.discreteness.disjoint,
                    "rank": len(construction.generators), "freenessTo": words,
                    "violations": len(words_report.violations)}]
    return report


def _asm_arguments(params: Dict[str, Any], args: List[str]) -> Tuple[int, int, int, int]:
    """
    p, t, shift and word length from "discrete asm [p t [shift [L]]]".

    Positional values win over --p/--t/--shift/--words, which win over the settings.
    """
    try:
        values = [int(a) for a in args]
    except ValueError:
        raise InvalidInputError(f"discrete asm takes integers p t [shift [L]], got {args}")
    if len(values) == 1 or len(values) > 4:
        raise InvalidInputError("discrete asm takes p t [shift [L]]")
    p = values[0] if values else params.get("p") or get_setting("field", "p", 3)
    t = values[1] if values else params.get("t") or get_setting("field", "t", 1)
    shift = values[2] if len(values) > 2 else params.get("shift", -1)
    words = values[3] if len(values) > 3 else params.get("words") or int(get_setting("discreteness", "word_length", 4))
    if words < 1:
        raise InvalidInputError(f"Word length must be >= 1, got {words}")
    return p, t, shift, words


COMMANDS = [cmd_table, cmd_census, cmd_case, cmd_family, cmd_tree, cmd_discrete]


def build_registry() -> CommandRegistry:
    registry = CommandRegistry("cli")
    for cmd in COMMANDS:
        registry.register_command(cmd)
    return registry


# -- output -------------------------------------------------------------------------

def print_report(report: Report, output: str) -> None:
    if output == "json":
        print(report.to_json())
        return
    frame = rows_frame(report.rows)
    if output == "csv":
        print(frame_to_csv(frame), end="")
        return
    marker = "✅" if report.ok else "❌"
    print(headline(f"{marker} {report.command}", report.ok))
    if "status" in frame.columns:
        frame["status"] = [colorize(s, s) for s in frame["status"]]
    if not frame.empty:
        print(frame_to_markdown(frame))
    for failure in report.failures:
        print(colorize(f"❌ {failure}", "mismatch"))


def run_tests() -> int:
    """Run the test suite"""
    import subprocess

    tests_dir = os.path.join(os.path.dirname(__file__), '..', 'tests')

    if not os.path.exists(tests_dir):
        print(f"❌ Tests directory not found: {tests_dir}")
        return 1

    print("🧪 Running Mumford Tools test suite...")
    result = subprocess.run([sys.executable, '-m', 'pytest', tests_dir, '-v'], cwd=os.path.dirname(tests_dir))
    return result.returncode


def show_info(registry: CommandRegistry) -> None:
    """Show toolkit information"""
    from mumford_tools import __description__, __version__

    print("🔧 Mumford Tools")
    print(f"Version: {__version__}")
    print(f"Description: {__description__}")
    print("")
    print("Components:")
    print("  • localfield / bt_tree - F_q((pi)) arithmetic and the Bruhat-Tits tree")
    print("  • finite_groups / graph_of_groups - finite subgroups and trees of groups")
    print("  • case_catalog / hurwitz_bounds - normalizer cases and the bound F(g)")
    print("  • curve_families / discreteness - explicit families and Schottky checks")
    print("")
    print("Available commands:")
    for cmd in registry.list_commands():
        print(f"  {cmd['name']:<10} - {cmd['description']}")
    print(f"  {'test':<10} - Run test suite")
    print(f"  {'info':<10} - Show this information")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Mumford Tools - automorphism bounds for Mumford curves",
        prog="mumford"
    )
    parser.add_argument('--p', type=int, help='Residue characteristic')
    parser.add_argument('--t', type=int, help='Residue field degree, q = p^t')
    parser.add_argument('--precision', type=int, help='pi-digits kept by inexact series')
    parser.add_argument('--window', type=int, help='Radius of the tree window')
    parser.add_argument('--log-level', default=None, help='Logging level')
    output = parser.add_mutually_exclusive_group()
    output.add_argument('--json', action='store_const', dest='output', const='json', help='JSON output')
    output.add_argument('--csv', action='store_const', dest='output', const='csv', help='CSV output')

    # the same flags after the command; SUPPRESS keeps a value given before it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--p', type=int, default=argparse.SUPPRESS, help='Residue characteristic')
    common.add_argument('--t', type=int, default=argparse.SUPPRESS, help='Residue field degree, q = p^t')
    common.add_argument('--precision', type=int, default=argparse.SUPPRESS, help='pi-digits kept by inexact series')
    common.add_argument('--window', type=int, default=argparse.SUPPRESS, help='Radius of the tree window')
    common.add_argument('--log-level', default=argparse.SUPPRESS, help='Logging level')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')

    table_parser = subparsers.add_parser('table', parents=[common], help='Regenerate a table')
    table_parser.add_argument('name', choices=list(TABLE_NAMES), help='Table to regenerate')

    subparsers.add_parser('census', parents=[common], help='Census of exceptional group orders')

    case_parser = subparsers.add_parser('case', parents=[common], help='Report on a catalog case')
    case_parser.add_argument('descriptor', nargs='+', help='e.g. F2 p=3 t=1 n=2 t1=0 t2=0')

    family_parser = subparsers.add_parser('family', parents=[common], help='Explicit curve families')
    family_parser.add_argument('name', choices=['asm', 'drinfeld', 'icosa', 'icosahedral', 'henn'])
    family_parser.add_argument('args', nargs='*', type=int)

    tree_parser = subparsers.add_parser('tree', parents=[common], help='Bruhat-Tits tree operations')
    tree_parser.add_argument('op', choices=['mirror', 'median', 'apartment', 'span', 'distance'])
    tree_parser.add_argument('args', nargs='*', help='Matrices, points (series or inf) or vertices n:u')

    discrete_parser = subparsers.add_parser('discrete', parents=[common], help='Discreteness checks')
    discrete_parser.add_argument('op', choices=['asm', 'circle'])
    discrete_parser.add_argument('args', nargs='*')
    discrete_parser.add_argument('--shift', type=int, default=-1, help='Valuation of the translation')
    discrete_parser.add_argument('--words', type=int, default=None, help='Check reduced words up to this length')

    subparsers.add_parser('test', parents=[common], help='Run test suite')
    subparsers.add_parser('info', parents=[common], help='Show toolkit information')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; the contract reserves 2 for mismatches
        return 0 if e.code == 0 else 1

    setup_logging(args.log_level or get_setting("logging", "level", "INFO"))
    if args.precision:
        SETTINGS['field']['precision'] = args.precision

    if not args.command:
        parser.print_help()
        return 0
    if args.command == 'test':
        return run_tests()

    registry = build_registry()
    if args.command == 'info':
        show_info(registry)
        return 0

    params = vars(args).copy()
    if args.command == 'case':
        params['descriptor'] = " ".join(args.descriptor)
    if args.output is None:
        print(f"🚀 Running {args.command}...")
    report = registry.run(args.command, params)
    print_report(report, args.output or "text")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
