"""Command-line front end: predicted Hilbert functions, degree bounds,
bound tables, and seeded verification experiments.

Every command echoes its parameters (seed included) into the output; with
identical flags the JSON output is byte-identical across runs.  Exit codes:
0 success, 1 mathematical precondition violated, 2 usage error,
3 verification failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .arith import PreconditionError, PrimeField
from .bounds import bound_report, build_table
from .fixtures import DEFAULT_PRIME, fixture_names, make_fixture, variables_ideal
from .froeberg import (
    DegreeType,
    froeberg_series,
    initial_segment,
    smallest_zero,
)
from .macaulay import (
    froeberg_check,
    hilbert_table,
    read_form_system,
    write_form_system,
)
from .quotient import verify_theorem_b, verify_theorem_c

__all__ = ["RunConfig", "main"]

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_USAGE = 2
EXIT_FAIL = 3


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters of one invocation, echoed into every output."""

    command: str
    params: dict

    def payload(self, result: dict) -> dict:
        return {
            "schema": 1,
            "command": self.command,
            "params": self.params,
            "result": result,
        }


class UsageError(Exception):
    pass


def _parse_degrees(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}")


def _parse_n_values(text: str) -> tuple[int, ...]:
    # "3..8,10,11" -> 3,4,5,6,7,8,10,11
    out: list[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}")
    if not out:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}")
    return tuple(out)


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(f"{name} must be an integer, got {raw!r}")


def _resolve_prime(flag: int | None, fallback: int | None = DEFAULT_PRIME) -> int | None:
    if flag is not None:
        return flag
    env = _env_int("TCBOUNDS_PRIME")
    if env is not None:
        return env
    return fallback


def _resolve_workers(flag: int | None) -> int:
    if flag is not None:
        return flag
    env = _env_int("TCBOUNDS_WORKERS")
    return env if env is not None else 1


def _degree_type(args) -> DegreeType:
    if args.degrees is not None:
        if args.n is not None or args.a is not None:
            raise UsageError("pass either --degrees or --n/--a, not both")
        return DegreeType(args.d, args.degrees)
    if args.n is None or args.a is None:
        raise UsageError("need --degrees, or both --n and --a")
    return DegreeType.constant(args.d, args.n, args.a)


def _add_degree_flags(parser, d_required=True):
    parser.add_argument("--d", type=int, required=d_required,
                        help="dimension parameter (forms live in d+1 variables)")
    parser.add_argument("--n", type=int, help="number of forms (with --a)")
    parser.add_argument("--a", type=int, help="common degree (with --n)")
    parser.add_argument("--degrees", type=_parse_degrees,
                        help="explicit degree list, e.g. 10,10,3")


def _add_output_flags(parser):
    parser.add_argument("--format", choices=("json", "tsv", "pretty"),
                        default="pretty", dest="fmt", help="output format")
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--seed", type=int, default=7, help="random seed (echoed)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tcbounds",
        description="Generic degree bounds for homogeneous ideals: predicted "
        "Hilbert functions, tight/Frobenius/Koszul/semistable bounds, and "
        "finite-field verification experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fro = sub.add_parser("froeberg", help="predicted Hilbert function and first zero")
    _add_degree_flags(p_fro)
    _add_output_flags(p_fro)

    p_bounds = sub.add_parser("bounds", help="all degree bounds for one degree type")
    _add_degree_flags(p_bounds)
    p_bounds.add_argument("--ainv", type=int,
                          help="a-invariant of the target ring (enables the ideal bound)")
    _add_output_flags(p_bounds)

    p_table = sub.add_parser("table", help="bound table over a range of n at constant degree")
    p_table.add_argument("--d", type=int, required=True)
    p_table.add_argument("--a", type=int, required=True)
    p_table.add_argument("--n", type=_parse_n_values, required=True,
                         help="n values, e.g. 3..8,10,11")
    _add_output_flags(p_table)

    p_verify = sub.add_parser("verify", help="randomized verification experiments")
    vsub = p_verify.add_subparsers(dest="verify_command", required=True)

    p_hil = vsub.add_parser("hilbert", help="Hilbert functions of random ideals vs prediction")
    _add_degree_flags(p_hil, d_required=False)
    p_hil.add_argument("--p", type=int, help="prime field (default TCBOUNDS_PRIME or 32003)")
    p_hil.add_argument("--trials", type=int, default=20)
    p_hil.add_argument("--workers", type=int, help="parallel trials (default TCBOUNDS_WORKERS or 1)")
    p_hil.add_argument("--ideal-file", dest="ideal_file",
                       help="check one explicit form system instead of random trials")
    _add_output_flags(p_hil)

    p_thc = vsub.add_parser("theorem-c", help="ideal inclusion at the bound degree")
    p_thc.add_argument("--fixture", required=True, choices=fixture_names())
    _add_degree_flags(p_thc, d_required=False)
    p_thc.add_argument("--p", type=int, help="prime override for the fixture")
    p_thc.add_argument("--redraws", type=int, default=8,
                       help="maximum random draws before reporting failure")
    _add_output_flags(p_thc)

    p_thb = vsub.add_parser("theorem-b", help="Frobenius-power membership at the bound degree")
    p_thb.add_argument("--fixture", required=True, choices=fixture_names())
    _add_degree_flags(p_thb, d_required=False)
    p_thb.add_argument("--p", type=int, help="prime override for the fixture")
    p_thb.add_argument("--qmax", type=int, help="largest Frobenius power to try (default p^4)")
    p_thb.add_argument("--ideal-file", dest="ideal_file",
                       help="test this explicit ideal instead of the default")
    _add_output_flags(p_thb)

    return parser


def _scalar(x) -> str:
    # tsv cells carry JSON literals so the two formats hold the same numbers
    return json.dumps(x)


def _tsv_rows(rows: list[list]) -> str:
    return "\n".join("\t".join(_scalar(x) for x in row) for row in rows) + "\n"


def cmd_froeberg(args) -> tuple[RunConfig, dict, str, str, int]:
    dt = _degree_type(args)
    m0 = smallest_zero(dt)
    cutoff = max(dt.total - dt.d, 0)
    series = froeberg_series(dt, cutoff)
    clipped = initial_segment(series).coeffs
    config = RunConfig(
        command="froeberg",
        params={"d": dt.d, "degrees": list(dt.degrees), "seed": args.seed},
    )
    result = {
        "m0": m0,
        "rows": [[m, series[m], clipped[m]] for m in range(cutoff + 1)],
    }
    width = max(len(str(v)) for v in series.coeffs) + 2
    lines = [
        f"degree type: d={dt.d}, degrees={','.join(str(x) for x in dt.degrees)}",
        f"{'m':>4} {'F(m)':>{width + 4}} {'F+(m)':>{width + 4}}",
    ]
    for m in range(cutoff + 1):
        lines.append(f"{m:>4} {series[m]:>{width + 4}} {clipped[m]:>{width + 4}}")
    lines.append(f"m0 = {m0}")
    pretty = "\n".join(lines) + "\n"
    tsv = f"# m0={m0}\n" + _tsv_rows([["m", "f", "f_plus"]] + result["rows"])
    return config, result, pretty, tsv, EXIT_OK


_PRETTY_BOUND_NAMES = {
    "m0": "m0",
    "tight": "tight",
    "frobenius": "frobenius",
    "koszul": "koszul",
    "semistable": "semistable",
    "semistable_frobenius": "semistable-improved",
    "ideal": "ideal",
}


def cmd_bounds(args) -> tuple[RunConfig, dict, str, str, int]:
    dt = _degree_type(args)
    report = bound_report(dt, a_invariant=args.ainv)
    config = RunConfig(
        command="bounds",
        params={
            "d": dt.d,
            "degrees": list(dt.degrees),
            "ainv": args.ainv,
            "seed": args.seed,
        },
    )
    result = {
        "m0": report.m0,
        "tight": report.tight,
        "frobenius": report.frobenius,
        "koszul": report.koszul,
        "semistable": report.semistable,
        "semistable_frobenius": report.semistable_frobenius,
        "ideal": report.ideal,
        "a_invariant": report.a_invariant,
        "hypotheses": dict(report.notes),
    }
    hyp = dict(report.notes)
    lines = [f"degree type: d={dt.d}, degrees={','.join(str(x) for x in dt.degrees)}"]
    rows = []
    for key in ("m0", "tight", "frobenius", "koszul", "semistable",
                "semistable_frobenius", "ideal"):
        value = result[key]
        if value is None:
            continue
        rows.append((_PRETTY_BOUND_NAMES[key], value, hyp.get(key, "")))
    name_w = max(len(r[0]) for r in rows)
    val_w = max(len(str(r[1])) for r in rows)
    for name, value, note in rows:
        suffix = f"   ({note})" if note else ""
        lines.append(f"{name:<{name_w}}  {value:>{val_w}}{suffix}")
    pretty = "\n".join(lines) + "\n"
    tsv_table = [["name", "value"]] + [
        [key, result[key]]
        for key in ("m0", "tight", "frobenius", "koszul", "semistable",
                    "semistable_frobenius", "ideal")
        if result[key] is not None
    ]
    return config, result, pretty, _tsv_rows(tsv_table), EXIT_OK


def cmd_table(args) -> tuple[RunConfig, dict, str, str, int]:
    table = build_table(args.d, args.a, args.n)
    config = RunConfig(
        command="table",
        params={"d": args.d, "a": args.a, "n_values": list(args.n), "seed": args.seed},
    )
    result = {
        "d": table.d,
        "a": table.a,
        "n_values": list(table.n_values),
        "rows": {name: list(values) for name, values in table.rows},
        "limits": {name: value for name, value in table.limits},
    }
    header = ["bound"] + [f"n={n}" for n in table.n_values] + ["limit"]
    body = [
        [name] + [str(v) for v in values] + [str(table.limit(name))]
        for name, values in table.rows
    ]
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = [f"d={table.d}, a={table.a}"]
    for row in [header] + body:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    pretty = "\n".join(lines) + "\n"
    tsv_table = [["name"] + [str(n) for n in table.n_values] + ["limit"]] + [
        [name] + list(values) + [table.limit(name)] for name, values in table.rows
    ]
    return config, result, pretty, _tsv_rows(tsv_table), EXIT_OK


def _hilbert_single(args) -> tuple[RunConfig, dict, str, str, int]:
    try:
        with open(args.ideal_file, "r", encoding="utf-8") as fh:
            system = read_form_system(fh.read())
    except OSError as exc:
        raise PreconditionError(f"cannot read {args.ideal_file}: {exc}")
    dt = DegreeType(system.v - 1, tuple(sorted(system.degrees, reverse=True)))
    table = hilbert_table(system)
    window = len(table.values) - 1
    series = froeberg_series(dt, window)
    clipped = initial_segment(series).coeffs
    violations = [
        {"m": m, "hilbert": h, "predicted": f}
        for m, (h, f) in enumerate(zip(table.values, clipped))
        if h < f
    ]
    config = RunConfig(
        command="verify hilbert",
        params={
            "d": dt.d,
            "degrees": list(dt.degrees),
            "p": system.field.p,
            "ideal_file": args.ideal_file,
            "seed": args.seed,
        },
    )
    result = {
        "values": list(table.values),
        "first_zero": table.first_zero,
        "predicted": list(series.coeffs),
        "predicted_clipped": list(clipped),
        "equality": list(table.values) == list(clipped),
        "violations": violations,
    }
    code = EXIT_FAIL if violations else EXIT_OK
    lines = [
        f"form system from {args.ideal_file}: p={system.field.p}, "
        f"degrees={','.join(str(x) for x in system.degrees)}",
        f"hilbert   {' '.join(str(v) for v in table.values)}",
        f"predicted {' '.join(str(v) for v in clipped)}",
        f"first zero: {table.first_zero}",
        f"equality: {str(result['equality']).lower()}",
        f"violations: {len(violations)}",
    ]
    tsv = "# single system\n" + _tsv_rows(
        [["m", "hilbert", "predicted"]]
        + [[m, h, f] for m, (h, f) in enumerate(zip(table.values, clipped))]
    )
    return config, result, "\n".join(lines) + "\n", tsv, code


def cmd_verify_hilbert(args) -> tuple[RunConfig, dict, str, str, int]:
    prime = _resolve_prime(args.p)
    if args.ideal_file is not None:
        return _hilbert_single(args)
    if args.d is None:
        raise UsageError("need --d (with --n/--a or --degrees), or --ideal-file")
    dt = _degree_type(args)
    workers = _resolve_workers(args.workers)
    report = froeberg_check(
        dt.d, dt.degrees, PrimeField(prime), args.trials, args.seed, workers=workers
    )
    config = RunConfig(
        command="verify hilbert",
        params={
            "d": dt.d,
            "degrees": list(dt.degrees),
            "p": prime,
            "trials": args.trials,
            "seed": args.seed,
            "workers": workers,
        },
    )
    result = {
        "window": report.window,
        "m0": report.m0,
        "predicted": list(report.predicted),
        "predicted_clipped": list(report.predicted_clipped),
        "equality_rate": report.equality_rate,
        "violations": [dict(v) for v in report.inequality_violations],
        "trials": [
            {
                "trial": r.trial,
                "first_zero": r.first_zero,
                "equality": r.equality,
                "values": list(r.values),
            }
            for r in report.results
        ],
    }
    code = EXIT_FAIL if report.inequality_violations else EXIT_OK
    first_zeros = sorted({r.first_zero for r in report.results})
    lines = [
        f"degree type: d={dt.d}, degrees={','.join(str(x) for x in dt.degrees)}; "
        f"p={prime}, trials={args.trials}, seed={args.seed}",
        f"m0 = {report.m0}",
        f"equality_rate {report.equality_rate}",
        f"first zeros observed: {first_zeros}",
        f"inequality violations: {len(report.inequality_violations)}",
    ]
    tsv = (
        f"# equality_rate={_scalar(report.equality_rate)}\n"
        + _tsv_rows(
            [["trial", "first_zero", "equality"]]
            + [[r.trial, r.first_zero, r.equality] for r in report.results]
        )
    )
    return config, result, "\n".join(lines) + "\n", tsv, code


def _fixture_for(args):
    prime = _resolve_prime(args.p, fallback=None)
    return make_fixture(args.fixture, p=prime, d=args.d)


def cmd_verify_theorem_c(args) -> tuple[RunConfig, dict, str, str, int]:
    fixture = _fixture_for(args)
    ring = fixture.ring
    if args.d is None:
        args.d = ring.krull_dimension - 1
    dt = _degree_type(args)
    report = verify_theorem_c(
        ring, dt, fixture.a_invariant, args.seed, max_redraws=args.redraws
    )
    config = RunConfig(
        command="verify theorem-c",
        params={
            "fixture": fixture.name,
            "p": ring.field.p,
            "d": dt.d,
            "degrees": list(dt.degrees),
            "redraws": args.redraws,
            "seed": args.seed,
        },
    )
    failures = [list(exps) for exps, ok in report.element_verdicts if not ok]
    result = {
        "fixture": fixture.name,
        "description": fixture.description,
        "p": report.p,
        "a_invariant": report.a_invariant,
        "bound": report.bound,
        "draws": report.draws,
        "basis_size": len(report.element_verdicts),
        "failures": failures,
        "passed": report.passed,
        "system": write_form_system(report.system),
    }
    code = EXIT_OK if report.passed else EXIT_FAIL
    lines = [
        f"fixture {fixture.name}: {fixture.description}",
        f"degree type: d={dt.d}, degrees={','.join(str(x) for x in dt.degrees)}",
        f"inclusion degree bound: {report.bound} "
        f"(m0 + d + 1 + a-invariant, a-invariant = {report.a_invariant})",
        f"basis elements tested: {len(report.element_verdicts)}; draws: {report.draws}",
        "PASS" if report.passed else f"FAIL (missing: {failures})",
    ]
    tsv = _tsv_rows(
        [["key", "value"]]
        + [
            ["bound", report.bound],
            ["draws", report.draws],
            ["basis_size", len(report.element_verdicts)],
            ["passed", report.passed],
        ]
    )
    return config, result, "\n".join(lines) + "\n", tsv, code


def cmd_verify_theorem_b(args) -> tuple[RunConfig, dict, str, str, int]:
    fixture = _fixture_for(args)
    ring = fixture.ring
    if args.d is None:
        args.d = ring.krull_dimension - 1
    ideal = None
    if args.ideal_file is not None:
        try:
            with open(args.ideal_file, "r", encoding="utf-8") as fh:
                ideal = read_form_system(fh.read())
        except OSError as exc:
            raise PreconditionError(f"cannot read {args.ideal_file}: {exc}")
        dt = DegreeType(args.d, tuple(sorted(ideal.degrees, reverse=True)))
    elif args.degrees is None and args.n is None and args.a is None:
        # default experiment: the parameter ideal of d+1 variables
        ideal = variables_ideal(ring, ring.krull_dimension)
        dt = DegreeType(args.d, (1,) * ring.krull_dimension)
    else:
        dt = _degree_type(args)
    report = verify_theorem_b(ring, dt, q_max=args.qmax, seed=args.seed, ideal=ideal)
    config = RunConfig(
        command="verify theorem-b",
        params={
            "fixture": fixture.name,
            "p": ring.field.p,
            "d": dt.d,
            "degrees": list(dt.degrees),
            "qmax": report.q_max,
            "seed": args.seed,
            "ideal_file": args.ideal_file,
        },
    )
    result = {
        "fixture": fixture.name,
        "description": fixture.description,
        "p": report.p,
        "bound": report.bound,
        "q_max": report.q_max,
        "q_list": list(report.q_list),
        "elements": [[list(exps), q] for exps, q in report.elements],
        "all_resolved": report.all_resolved,
        "note": report.note,
        "ideal": write_form_system(report.ideal),
    }
    resolved = [q for _, q in report.elements if q is not None]
    status = (
        f"all {len(report.elements)} basis elements resolved "
        f"(largest q needed: {max(resolved) if resolved else None})"
        if report.all_resolved
        else f"{len(report.elements) - len(resolved)} of {len(report.elements)} "
        f"elements unresolved at q_max={report.q_max}"
    )
    lines = [
        f"fixture {fixture.name}: {fixture.description}",
        f"degree type: d={dt.d}, degrees={','.join(str(x) for x in dt.degrees)}",
        f"bound degree: {report.bound} (m0 + d + 1); q tried: {list(report.q_list)}",
        status,
        f"note: {report.note}",
    ]
    tsv = _tsv_rows(
        [["element", "resolved_q"]]
        + [[",".join(str(e) for e in exps), q] for exps, q in report.elements]
    )
    return config, result, "\n".join(lines) + "\n", tsv, EXIT_OK


_DISPATCH = {
    "froeberg": cmd_froeberg,
    "bounds": cmd_bounds,
    "table": cmd_table,
    ("verify", "hilbert"): cmd_verify_hilbert,
    ("verify", "theorem-c"): cmd_verify_theorem_c,
    ("verify", "theorem-b"): cmd_verify_theorem_b,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    key = (args.command, args.verify_command) if args.command == "verify" else args.command
    try:
        config, result, pretty, tsv, code = _DISPATCH[key](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.fmt == "json":
        text = json.dumps(config.payload(result), sort_keys=True,
                          separators=(",", ":")) + "\n"
    elif args.fmt == "tsv":
        text = tsv
    else:
        text = pretty
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
