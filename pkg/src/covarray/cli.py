"""Command-line interface.

Exit codes: 0 success, 1 a negative result (an array that fails to cover, a
builder that gives up), 2 usage or parameter errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import bounds as bd
from .arrays import coverage_report, coverage_sampled, verify_covering
from .builder import (
    BuilderConfig,
    build_almost_any_v,
    build_covering_any_v,
)
from .constructions import blow_up, build_a_opt, build_block, build_random
from .errors import CovarrayError, GaveUpError
from .field import field_of_order, is_prime_power
from .io import format_array, read_array, write_array
from .lagrangian import build_h, optimize_lagrangian, support_oa_check


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _emit_array(a, out, stdout):
    if out:
        write_array(a, out)
        print(f"wrote {a.n_rows}x{a.n_cols} array over {a.v} symbols to {out}", file=stdout)
    else:
        stdout.write(format_array(a))


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def cmd_construct(args, stdout) -> int:
    kind = args.kind
    if kind == "a-opt":
        _need(args, "q", "t")
        a = build_a_opt(field_of_order(args.q), args.t)
    elif kind == "block":
        _need(args, "v", "t", "k")
        a = build_block(args.v, args.t, args.k)
    elif kind == "random":
        _need(args, "v", "n", "k", "seed")
        a = build_random(args.v, args.n, args.k, args.seed)
    else:  # blow-up
        _need(args, "k")
        if args.input:
            base = read_array(args.input)
        else:
            _need(args, "q", "t")
            base = build_a_opt(field_of_order(args.q), args.t)
        if args.mode == "random":
            _need(args, "seed")
        a, plan = blow_up(base, args.k, args.mode, args.seed)
        if args.plan:
            with open(args.plan, "w", encoding="ascii") as fh:
                fh.write(_dump({"base_cols": plan.base_cols, "mode": plan.mode, "seed": plan.seed,
                                "assignment": list(plan.assignment)}) + "\n")
    _emit_array(a, args.output, stdout)
    return 0


def cmd_verify(args, stdout) -> int:
    a = read_array(args.file)
    ok, witness = verify_covering(a, args.t, threads=args.threads)
    if args.json:
        print(_dump({"n": a.n_rows, "k": a.n_cols, "v": a.v, "t": args.t, "covering": ok,
                     "witness": list(witness.indices) if witness else None}), file=stdout)
    else:
        print(f"covering: {'true' if ok else 'false'}", file=stdout)
        if witness:
            print("uncovered: " + " ".join(map(str, witness.indices)), file=stdout)
    return 0 if ok else 1


def cmd_coverage(args, stdout) -> int:
    a = read_array(args.file)
    if args.samples is not None:
        _need(args, "seed")
        report = coverage_sampled(a, args.t, args.samples, args.seed)
    else:
        cap = None if args.all_witnesses else args.witnesses
        report = coverage_report(a, args.t, witness_cap=cap, threads=args.threads)
    if args.json:
        print(_dump(report.to_json()), file=stdout)
    else:
        kind = "exact" if report.exact else f"sampled, stderr {report.stderr:.6g}"
        print(f"covered {report.covered} of {report.total} {args.t}-sets "
              f"(ratio {report.ratio:.6g}, {kind})", file=stdout)
        for w in report.uncovered_witnesses:
            print("uncovered: " + " ".join(map(str, w.indices)), file=stdout)
    return 0


def cmd_build(args, stdout) -> int:
    config = BuilderConfig(seed=args.seed, strategy=args.strategy, max_attempts=args.max_attempts,
                           max_resamples=args.max_resamples, extra_copies=args.extra_copies)
    try:
        if args.almost:
            _need(args, "epsilon")
            outcome = build_almost_any_v(args.t, args.k, args.v, Fraction(args.epsilon), config,
                                         threads=args.threads)
        else:
            outcome = build_covering_any_v(args.t, args.k, args.v, config, threads=args.threads)
    except GaveUpError as exc:
        print(f"covarray: {exc}", file=sys.stderr)
        return 1
    write_array(outcome.array, args.output)
    report = _dump(outcome.to_json(timing=args.timing))
    if args.report:
        with open(args.report, "w", encoding="ascii") as fh:
            fh.write(report + "\n")
    print(report, file=stdout)
    return 0 if outcome.verified else 1


def _leading(value: float) -> dict:
    return {"kind": "leading_term", "value": value}


def emit_bounds(t: int, k: int, v: int, epsilon: str | None = None) -> dict:
    if t < 2 or v < 2 or k < t:
        raise UsageError("bounds need t >= 2, v >= 2 and k >= t")
    pp = is_prime_power(v)
    table = bd.d_bound_table(t, v)
    lower, upper = bd.covmax_bounds(t, k, v)
    doc: dict = {
        "t": t, "k": k, "v": v,
        "prime_power": pp,
        "c_tv": bd.fraction_json(table.c_tv),
        "covmax": {"rows": v**t,
                   "lower": bd.fraction_json(lower) if lower is not None else None,
                   "upper": bd.fraction_json(upper)},
        "pb_max_columns": bd.pb_max_columns(v**t, v),
    }
    if pp:
        doc["can_new"] = bd.can_upper_new(t, k, v)
        doc["required_copies"] = bd.required_copies(t, k, v)
    else:
        doc["next_prime_power"] = bd.next_prime_power(v)
    doc["can_gss"] = _leading(bd.can_upper_gss(t, k, v))
    if t == 2 and v == 2:
        doc["can_exact_katona"] = bd.exact_can_strength2_binary(k)
    d = {"gss": _leading(table.d_gss), "fs": _leading(table.d_fs)}
    if table.d_sc is not None:
        d["sc"] = dict(_leading(table.d_sc), log_base=2)
    if table.d_new is not None:
        d["new"] = _leading(table.d_new)
        d["new_simplified"] = _leading(table.d_new_simplified)
    d["new_large_v"] = dict(_leading(table.d_new_large_v),
                            warning="valid only for v >= v0, an unspecified constant")
    if table.d_exact_t2 is not None:
        d["exact_t2"] = {"kind": "limit", "value": table.d_exact_t2}
    doc["d"] = d
    if epsilon is not None:
        ac = bd.acan_bounds(t, v, Fraction(epsilon))
        doc["acan"] = {"epsilon": bd.fraction_json(ac.epsilon), "new": ac.new,
                       "scdv": ac.scdv, "scdv_prime_power": ac.scdv_pp}
    doc["notes"] = table.notes
    return doc


def cmd_bounds(args, stdout) -> int:
    print(_dump(emit_bounds(args.t, args.k, args.v, args.epsilon)), file=stdout)
    return 0


def cmd_lagrangian(args, stdout) -> int:
    inst = build_h(args.t, args.v)
    x, value = optimize_lagrangian(inst, restarts=args.restarts, iters=args.iters, seed=args.seed)
    bound = bd.c_tv(args.t, args.v) / math.factorial(args.t)
    support = int((x > 1e-8).sum())
    doc = {
        "t": args.t, "v": args.v,
        "n_vertices": inst.n_vertices,
        "n_edges": inst.n_edges,
        "best_value": value,
        "bound": bd.fraction_json(bound),
        "within_bound": value <= float(bound) + 1e-6,
        "support_size": support,
        "support_oa": support_oa_check(inst, x) if inst.t >= 2 else None,
        "restarts": args.restarts,
        "seed": args.seed,
    }
    print(_dump(doc), file=stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="covarray", description="Construct, verify and bound covering arrays.")
    p.add_argument("--threads", type=int, default=1, help="worker threads for coverage enumeration")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build an array")
    c.add_argument("kind", choices=["a-opt", "block", "random", "blow-up"])
    for name in ("q", "v", "t", "k", "n", "seed"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--mode", choices=["balanced", "random"], default="balanced")
    c.add_argument("--input", help="base array for blow-up (default: A_opt from --q/--t)")
    c.add_argument("--plan", help="write the blow-up plan as JSON")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("verify", help="check the covering property")
    c.add_argument("file")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("coverage", help="count covered t-sets")
    c.add_argument("file")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--samples", type=int)
    c.add_argument("--seed", type=int)
    c.add_argument("--witnesses", type=int, default=16)
    c.add_argument("--all-witnesses", action="store_true")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_coverage)

    c = sub.add_parser("build", help="randomized covering / almost-covering array")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--v", type=int, required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--almost", action="store_true")
    c.add_argument("--epsilon")
    c.add_argument("--strategy", choices=["restart", "resample"], default="restart")
    c.add_argument("--extra-copies", type=int, default=0)
    c.add_argument("--max-attempts", type=int, default=64)
    c.add_argument("--max-resamples", type=int, default=10**6)
    c.add_argument("--report", help="also write the build report JSON here")
    c.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=cmd_build)

    c = sub.add_parser("bounds", help="bounds table as JSON")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--v", type=int, required=True)
    c.add_argument("--epsilon")
    c.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    c.set_defaults(func=cmd_bounds)

    c = sub.add_parser("lagrangian", help="Lagrangian of H_{t,v} at tiny scale")
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--v", type=int, required=True)
    c.add_argument("--restarts", type=int, default=100)
    c.add_argument("--iters", type=int, default=1000)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--json", action="store_true", help="accepted for symmetry; output is always JSON")
    c.set_defaults(func=cmd_lagrangian)
    return p


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("covarray: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args, stdout)
    except (UsageError, CovarrayError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"covarray: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
