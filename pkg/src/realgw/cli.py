"""Command-line interface and report formatting.

Usage:

    realgw --space 3 --phi eta --degree 4

computes the degree-4 genus-one real invariant of P^3 and prints a text
report ending in "N = -15".  Formats: text (default), json, csv.  Every
flag can also be supplied through an environment variable with the
REALGW_ prefix (REALGW_SPACE, REALGW_PHI, ...); explicit flags win over
the environment, which wins over defaults.

Exit codes: 0 success, 2 constraint violation (bad space/degree/t), 3
weight dependence detected, 4 cross-check failure.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from .graphs import SpaceSpec, export_dot
from .invariants import (
    TYPE_NAMES,
    CrossCheckReport,
    DimensionConstraintError,
    InvariantResult,
    WeightDependenceError,
    compute_invariant,
    cross_eval_check,
    sign_flip_experiment,
)
from .ratfunc import rf_from_string, rf_to_string

ENV_PREFIX = "REALGW_"

EXIT_OK = 0
EXIT_CONSTRAINT = 2
EXIT_WEIGHT_DEPENDENCE = 3
EXIT_CROSS_CHECK = 4


def _env_default(name: str, fallback=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), fallback)


def _env_flag(name: str) -> bool:
    value = _env_default(name)
    return value is not None and value.lower() not in ("", "0", "false", "no")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="realgw",
        description="Exact genus-one real Gromov-Witten invariants of odd "
        "projective spaces by torus localization.",
        epilog="Environment variables with the %s prefix override defaults "
        "(flags still win): %sSPACE, %sPHI, %sDEGREE, %sT, %sFORMAT, %sSEED."
        % ((ENV_PREFIX,) * 7),
    )
    parser.add_argument(
        "--space",
        type=int,
        default=_env_default("space", "3"),
        help="complex dimension 2m-1 of the target projective space (odd, >= 3)",
    )
    parser.add_argument(
        "--phi",
        choices=("tau", "eta"),
        default=_env_default("phi", "tau"),
        help="real structure (default: tau)",
    )
    parser.add_argument(
        "--degree",
        type=int,
        default=_env_default("degree", "2"),
        help="map degree d (default: 2)",
    )
    parser.add_argument(
        "--t",
        type=int,
        default=_env_default("t"),
        help="insertion exponent (default: 2m-1, the point class)",
    )
    parser.add_argument(
        "--format",
        choices=("text", "json", "csv"),
        default=_env_default("format", "text"),
        help="output format (default: text)",
    )
    parser.add_argument(
        "--list-graphs",
        action="store_true",
        default=_env_flag("list_graphs"),
        help="include the per-graph ledger in the text report",
    )
    parser.add_argument(
        "--per-type",
        action="store_true",
        default=_env_flag("per_type"),
        help="include the c_a/c_m/c_k decomposition in the text report",
    )
    parser.add_argument(
        "--sign-flip-experiment",
        action="store_true",
        default=_env_flag("sign_flip_experiment"),
        help="also recompute with the non-separable sign negated",
    )
    parser.add_argument(
        "--cross-check",
        type=int,
        metavar="TRIALS",
        default=_env_default("cross_check"),
        help="run the substitute-first numeric cross-check with this many trials",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=_env_default("seed", "0"),
        help="random seed for the cross-check (default: 0)",
    )
    parser.add_argument(
        "--dot-export",
        metavar="PATH",
        default=_env_default("dot_export"),
        help="write the enumerated half-graphs to PATH in DOT format",
    )
    return parser


def _coerce(args: argparse.Namespace) -> argparse.Namespace:
    # values sourced from the environment arrive as strings
    for name in ("space", "degree", "t", "cross_check", "seed"):
        value = getattr(args, name)
        if isinstance(value, str):
            setattr(args, name, int(value))
    return args


def format_total_line(result: InvariantResult) -> str:
    if result.total is None:
        return "N is weight-dependent"
    line = "N = %s" % result.total
    if result.total == 0 and result.vanishing:
        line += " (vanishing: %s)" % result.vanishing
    return line


def emit_text(result: InvariantResult, list_graphs: bool, per_type: bool) -> str:
    out = io.StringIO()
    space = result.space
    print(
        "P^%d  phi=%s  degree=%d  t=%d  ell=%d"
        % (2 * space.m - 1, result.phi, result.degree, result.t, result.ell),
        file=out,
    )
    print(
        "fixed-locus half-graphs: %d  (separable %d, non-separable %d)"
        % (
            len(result.per_graph),
            sum(1 for r in result.per_graph if r.kind == "separable"),
            sum(1 for r in result.per_graph if r.kind == "non-separable"),
        ),
        file=out,
    )
    if list_graphs and result.per_graph:
        print("", file=out)
        print(
            "%-42s %-14s %3s %3s %3s  %s" % ("graph", "types", "aut", "div", "n/2", "value"),
            file=out,
        )
        for row in result.per_graph:
            types = ";".join("%s:%d" % tm for tm in row.types)
            print(
                "%-42s %-14s %3d %3d %3d  %s"
                % (
                    row.id,
                    types,
                    row.aut,
                    row.divisor,
                    row.n_halves,
                    rf_to_string(row.value),
                ),
                file=out,
            )
    if per_type:
        print("", file=out)
        for name in TYPE_NAMES:
            print("%s = %s" % (name, rf_to_string(result.per_type[name])), file=out)
    print("", file=out)
    print(format_total_line(result), file=out)
    return out.getvalue()


def result_to_json_dict(result: InvariantResult) -> dict:
    space = result.space
    return {
        "space": {"m": space.m, "dim": 2 * space.m - 1},
        "phi": result.phi,
        "degree": result.degree,
        "t": result.t,
        "ell": result.ell,
        "total": str(result.total) if result.total is not None else rf_to_string(result.total_function),
        "weight_independent": result.weight_independent,
        "per_type": {name: rf_to_string(result.per_type[name]) for name in TYPE_NAMES},
        "graphs": [
            {
                "id": row.id,
                "kind": row.kind,
                "aut": row.aut,
                "divisor": row.divisor,
                "types": [[name, mult] for name, mult in row.types],
                "value": rf_to_string(row.value),
            }
            for row in result.per_graph
        ],
    }


def emit_json(result: InvariantResult) -> str:
    return json.dumps(result_to_json_dict(result), indent=2) + "\n"


def parse_json_report(text: str) -> dict:
    """Parse an emitted JSON report; emit(parse(emit(x))) == emit(x)."""
    data = json.loads(text)
    m = data["space"]["m"]
    # validate the rational-function strings round-trip
    for name, value in data["per_type"].items():
        rf_from_string(value, m)
    for row in data["graphs"]:
        rf_from_string(row["value"], m)
    return data


def json_dict_to_text(data: dict) -> str:
    return json.dumps(data, indent=2) + "\n"


def emit_csv(result: InvariantResult) -> str:
    lines = ["id,kind,aut,divisor,types,value"]
    for row in result.per_graph:
        types = ";".join("%s:%d" % tm for tm in row.types)
        lines.append(
            '%s,%s,%d,%d,%s,"%s"'
            % (row.id, row.kind, row.aut, row.divisor, types, rf_to_string(row.value))
        )
    return "\n".join(lines) + "\n"


def emit_report(result: InvariantResult, fmt: str, list_graphs: bool = False, per_type: bool = False) -> str:
    if fmt == "json":
        return emit_json(result)
    if fmt == "csv":
        return emit_csv(result)
    return emit_text(result, list_graphs, per_type)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = _coerce(parser.parse_args(argv))

    if args.space < 3 or args.space % 2 == 0:
        print("error: --space must be an odd integer >= 3", file=sys.stderr)
        return EXIT_CONSTRAINT
    if args.degree < 1:
        print("error: --degree must be a positive integer", file=sys.stderr)
        return EXIT_CONSTRAINT
    space = SpaceSpec((args.space + 1) // 2)

    try:
        result = compute_invariant(
            space, args.degree, args.phi, t=args.t, strict=True
        )
    except DimensionConstraintError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONSTRAINT
    except WeightDependenceError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_WEIGHT_DEPENDENCE

    sys.stdout.write(
        emit_report(result, args.format, list_graphs=args.list_graphs, per_type=args.per_type)
    )

    if args.dot_export:
        with open(args.dot_export, "w") as handle:
            handle.write(export_dot([row.graph for row in result.per_graph]))

    if args.sign_flip_experiment:
        try:
            report = sign_flip_experiment(space, args.degree, args.phi, t=args.t)
        except ValueError as exc:
            print("sign-flip experiment: %s" % exc, file=sys.stderr)
            return EXIT_CONSTRAINT
        flipped = (
            str(report.flipped_constant)
            if report.flipped_constant is not None
            else "weight-dependent"
        )
        print(
            "sign-flip experiment: flipped total is %s; flip %s the result"
            % (flipped, "changes" if report.changed else "does not change")
        )

    if args.cross_check is not None:
        check = cross_eval_check(result, trials=args.cross_check, seed=args.seed)
        print(
            "cross-check: %d/%d trials agreed" % (check.agreed, check.trials)
        )
        if not check:
            return EXIT_CROSS_CHECK

    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
