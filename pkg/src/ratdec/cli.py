"""Command line front end.

Commands run the pipeline up to different depths and print a text report
by default or a JSON document with --json. Exit codes: 0 success, 1 usage,
2 parse error, 3 internal verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .decomp import complete_decompositions, minimal_decompositions_poly
from .factor import FactorError, factor_nabla
from .fields import FieldError, field_from_string, field_to_string
from .lattice import close_under_join, maximal_chains
from .oracle import OracleError, oracle_subfields
from .partition import discrete_partition, single_block_partition
from .poly import (
    ParseError,
    format_bipoly,
    format_ratfun,
    format_ratpolyx,
    format_unipoly,
    parse_ratfun,
)
from .ratfun import DecompositionError, prepare
from .subfields import (
    SubfieldError,
    find_good_ideal,
    partition_deterministic,
    partitions,
)

COMMANDS = ("decompose", "subfields", "partitions", "factor", "minimal")


class VerificationFailure(RuntimeError):
    pass


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ratdec",
        description=(
            "Subfield lattices and complete decompositions of rational "
            "functions, exactly."
        ),
    )
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("function", help="rational function in t, e.g. (t^4+1)/t^2")
    ap.add_argument("--field", default="q", help="q, fp:<p> or fp:<p>^<k>")
    ap.add_argument("--json", action="store_true", help="machine readable output")
    ap.add_argument("--det", action="store_true",
                    help="use the deterministic partition path")
    ap.add_argument("--oracle-check", action="store_true",
                    help="cross-check against the exhaustive oracle")
    ap.add_argument("--seed", type=int, default=0, help="randomness seed")
    ap.add_argument("--max-chains", type=int, default=None,
                    help="cap on enumerated maximal chains")
    ap.add_argument("--timings", action="store_true",
                    help="include per-phase wall times in the report")
    return ap


def run_pipeline(command: str, text: str, field_text: str = "q", *,
                 seed: int = 0, deterministic: bool = False,
                 oracle_check: bool = False, max_chains=None,
                 timings: bool = False) -> dict:
    """Execute the requested sub-pipeline and assemble the report."""
    times = {}

    def clock(name, fn):
        t0 = time.perf_counter()
        out = fn()
        times[name] = round((time.perf_counter() - t0) * 1000.0, 3)
        return out

    K = field_from_string(field_text)
    f = parse_ratfun(text, K)
    report = {
        "input": text,
        "field": field_to_string(K),
        "command": command,
        "seed": seed,
    }
    prep = clock("prepare", lambda: prepare(f))
    report["working"] = format_ratfun(prep.working)
    report["frobenius_exponent"] = prep.frobenius_exponent
    report["n"] = prep.working.degree
    factors = clock("factor", lambda: factor_nabla(prep.working, seed=seed))
    report["r"] = factors.r
    report["factors"] = [format_bipoly(G) for G in factors.factors]
    report["monic_factors"] = [format_ratpolyx(F) for F in factors.monic_factors]
    if command == "factor":
        if timings:
            report["times_ms"] = times
        return report
    ideal = clock("good_ideal", lambda: find_good_ideal(prep.working, factors))
    report["good_ideal"] = format_unipoly(ideal.p_poly, "x")
    report["dp"] = ideal.dp
    if deterministic:
        parts = clock(
            "partitions",
            lambda: [
                partition_deterministic(i, factors)
                for i in range(1, factors.r + 1)
            ],
        )
        c_per_i = [2 * factors.n] * factors.r
        c_count = 2 * factors.n
    else:
        parts, counts, c_count = clock(
            "partitions", lambda: partitions(factors, ideal)
        )
        c_per_i = [counts[i] for i in range(1, factors.r + 1)]
    report["partitions"] = [[list(b) for b in P] for P in parts]
    report["c_count"] = c_count
    report["c_per_i"] = c_per_i
    if command == "partitions":
        if timings:
            report["times_ms"] = times
        return report
    if command == "minimal":
        if not f.is_polynomial():
            raise DecompositionError(
                "the minimal command needs a polynomial input"
            )
        if prep.frobenius_exponent:
            raise DecompositionError(
                "minimal decompositions need a separable input; "
                "use decompose for the wild case"
            )
        pairs = clock(
            "minimal", lambda: minimal_decompositions_poly(f, parts, factors)
        )
        report["minimal_decompositions"] = [
            [format_ratfun(g), format_ratfun(h)] for g, h in pairs
        ]
        if timings:
            report["times_ms"] = times
        return report
    lat = clock("lattice", lambda: close_under_join(parts))
    report["m"] = lat.m
    report["lattice"] = [[list(b) for b in P] for P in lat.partitions]
    report["hasse"] = [list(e) for e in lat.hasse_edges]
    if command == "subfields":
        if timings:
            report["times_ms"] = times
        return report
    chains = clock("chains", lambda: maximal_chains(lat))
    if max_chains is not None:
        chains = chains[:max_chains]
    report["chains"] = [list(ch) for ch in chains]
    decs = clock(
        "decompose",
        lambda: complete_decompositions(prep, lat, factors, max_chains=max_chains),
    )
    report["decompositions"] = [
        [format_ratfun(c) for c in d.components] for d in decs
    ]
    if oracle_check:
        rep = clock("oracle", lambda: oracle_subfields(prep.working, factors))
        agree = set(rep.partitions) == set(lat.partitions)
        report["oracle"] = {"agree": agree, "m": len(rep.partitions)}
        if not agree:
            raise VerificationFailure("oracle disagrees with the main pipeline")
    if timings:
        report["times_ms"] = times
    return report


def _print_text(report: dict, out) -> None:
    w = out.write
    w(f"input      : {report['input']} over {report['field']}\n")
    if report["frobenius_exponent"]:
        w(f"frobenius  : peeled t^p {report['frobenius_exponent']} time(s) "
          f"(wild case; composite tail appended)\n")
    w(f"working    : {report['working']}  (n = {report['n']})\n")
    w(f"factors    : r = {report['r']}\n")
    for i, g in enumerate(report["factors"], start=1):
        w(f"  G_{i} = {g}\n")
    if "dp" in report:
        w(f"good ideal : p(x) = {report['good_ideal']}  (dp = {report['dp']}, "
          f"#c = {report['c_count']})\n")
    if "partitions" in report:
        w("partitions :\n")
        for i, P in enumerate(report["partitions"], start=1):
            w(f"  P_{i} = {P}\n")
    if "minimal_decompositions" in report:
        w("minimal decompositions (g, h):\n")
        for g, h in report["minimal_decompositions"]:
            w(f"  g = {g}   h = {h}\n")
    if "m" in report:
        w(f"lattice    : m = {report['m']} subfields\n")
        for i, P in enumerate(report["lattice"]):
            w(f"  L[{i}] = {P}\n")
    if "chains" in report:
        w(f"chains     : {len(report['chains'])}\n")
        for ch in report["chains"]:
            w(f"  {' < '.join(str(i) for i in ch)}\n")
    if "decompositions" in report:
        w(f"decompositions: {len(report['decompositions'])}\n")
        for comps in report["decompositions"]:
            w(f"  {' o '.join(comps)}\n")
    if "oracle" in report:
        w(f"oracle     : {'agree' if report['oracle']['agree'] else 'DISAGREE'} "
          f"(m = {report['oracle']['m']})\n")
    if "times_ms" in report:
        w("times (ms) : " + ", ".join(
            f"{k}={v}" for k, v in report["times_ms"].items()) + "\n")


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 1
    try:
        report = run_pipeline(
            args.command,
            args.function,
            args.field,
            seed=args.seed,
            deterministic=args.det,
            oracle_check=args.oracle_check,
            max_chains=args.max_chains,
            timings=args.timings,
        )
    except (ParseError, FieldError) as e:
        print(f"ratdec: parse error: {e}", file=sys.stderr)
        return 2
    except (DecompositionError, FactorError, SubfieldError, OracleError,
            VerificationFailure, ZeroDivisionError) as e:
        print(f"ratdec: {e}", file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(report))
    else:
        _print_text(report, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
