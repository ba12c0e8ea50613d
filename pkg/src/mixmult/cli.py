"""Command-line interface.

    mm <table|mixed|fc|verify|hsm|free|difftest> [problem-file] [options]

Reports are JSON with exact integers only.  Exit codes: 0 success or
verified equality; 1 input error; 2 verified inequality or invariant
violation (a finding); 3 inconclusive (stabilization or search failure).
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    InconsistencyError,
    MMError,
    SearchFailureError,
    StabilizationError,
)
from .fc import build_sequence, verify_theorem43
from .ideals import IdealHandle
from .instances import RandomInstanceConfig, random_monomial_instance
from .localmodel import LocalRingModel, hilbert_samuel
from .mixed import (
    FreeAlgebraSpec,
    compositions,
    free_algebra_report,
    free_quotient_report,
    mixed_multiplicities,
)
from .problemfile import parse_problem
from .ring import GREVLEX, RingContext, derive_seed, parse_poly

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_FINDING = 2
EXIT_INCONCLUSIVE = 3

_FREE_VARS = ("x", "y", "z", "w")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits with 2 by default, which collides with "finding"
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_INPUT)


def _emit(report, path=None):
    text = json.dumps(report, indent=2)
    print(text)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def _load_instance(args):
    with open(args.problem, encoding="utf-8") as fh:
        text = fh.read()
    instance = parse_problem(text)
    overrides = {}
    if getattr(args, "base0", None) is not None:
        overrides["base0"] = args.base0
    if getattr(args, "window", None) is not None:
        overrides["window"] = args.window
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "retries", None) is not None:
        overrides["retries"] = args.retries
    if overrides:
        instance.options = instance.options.merged(**overrides)
    return instance


def _parse_type(text, axes):
    parts = [p.strip() for p in text.split(",")]
    try:
        k = tuple(int(p) for p in parts)
    except ValueError:
        raise MMError(f"bad type {text!r}") from None
    if len(k) != axes:
        raise MMError(f"type needs {axes} entries, got {len(k)}")
    return k


def _cmd_table(args):
    instance = _load_instance(args)
    table = instance.build_table()
    _emit({"command": "table", **table.as_json()}, args.json)
    return EXIT_OK


def _cmd_mixed(args):
    instance = _load_instance(args)
    table = instance.build_table()
    report = mixed_multiplicities(table)
    _emit(
        {
            "command": "mixed",
            "ell": report.ell,
            "e": report.as_json()["e"],
            "route": report.route,
            "base": list(table.base),
            "window": table.window,
        },
        args.json,
    )
    return EXIT_OK


def _cmd_fc(args):
    instance = _load_instance(args)
    k = _parse_type(args.type, instance.s + 1)
    record = build_sequence(instance, k, instance.options.seed)
    _emit(
        {
            "command": "fc",
            "type": list(k),
            "seed": instance.options.seed,
            **record.as_json(),
        },
        args.json,
    )
    return EXIT_OK


def _cmd_verify(args):
    instance = _load_instance(args)
    axes = instance.s + 1
    if args.all:
        table = instance.build_table()
        types = list(compositions(table.ell - 1, axes))
    elif args.type:
        types = [_parse_type(args.type, axes)]
    else:
        raise MMError("verify needs --type k0,k1,... or --all")
    reports = []
    worst = EXIT_OK
    for k in types:
        rep = verify_theorem43(instance, k, instance.options.seed)
        reports.append(rep.as_json())
        if rep.inconclusive:
            worst = max(worst, EXIT_INCONCLUSIVE)
        elif rep.route == "fc-reduction" and rep.equal is False:
            worst = max(worst, EXIT_FINDING)
        elif rep.route == "zero-positivity" and rep.positivity_status == "undetermined":
            worst = max(worst, EXIT_INCONCLUSIVE)
    payload = {"command": "verify", "reports": reports}
    _emit(payload, args.json)
    return worst


def _cmd_hsm(args):
    instance = _load_instance(args)
    ctx = instance.model.ctx
    if args.H:
        gens = [parse_poly(ctx, part.strip()) for part in args.H.split(",")]
        H = IdealHandle(ctx, gens)
    else:
        H = IdealHandle.zero(ctx)
    dim, mult = hilbert_samuel(instance.model, instance.J, H)
    _emit({"command": "hsm", "dim": dim, "mult": mult}, args.json)
    return EXIT_OK


def _cmd_free(args):
    d = args.d
    if not 1 <= d <= len(_FREE_VARS):
        raise MMError(f"--d must be between 1 and {len(_FREE_VARS)}")
    ctx = RingContext(_FREE_VARS[:d], args.p, GREVLEX)
    model = LocalRingModel(ctx)
    if args.J:
        J = IdealHandle(ctx, [parse_poly(ctx, part.strip()) for part in args.J.split(",")])
    else:
        J = model.maximal_ideal()
    t = tuple(int(part) for part in args.t.split(","))
    spec = FreeAlgebraSpec(model, J, t)
    report = free_algebra_report(spec)
    payload = {
        "command": "free",
        "d": d,
        "t": list(t),
        "ell": report.ell,
        "e": report.as_json()["e"],
        "route": report.route,
    }
    if args.quotient is not None:
        payload["quotient"] = free_quotient_report(spec, args.quotient)
    _emit(payload, args.json)
    return EXIT_OK


def _cmd_difftest(args):
    config = RandomInstanceConfig(max_degree=args.max_degree)
    mismatches = []
    points = 0
    for i in range(args.count):
        inst_seed = derive_seed(args.seed, 5000 + i)
        instance = random_monomial_instance(config, inst_seed)
        rng_base = 2 + derive_seed(inst_seed, 1) % 5  # base0 in 2..6
        window = 2
        axes = instance.s + 1
        import itertools

        for n in itertools.product(
            range(rng_base, rng_base + window + 1), repeat=axes
        ):
            points += 1
            a = instance.hilbert_value(n, method="staircase")
            b = instance.hilbert_value(n, method="gb")
            if a != b:
                mismatches.append(
                    {"instance": i, "seed": inst_seed, "n": list(n), "staircase": a, "gb": b}
                )
    payload = {
        "command": "difftest",
        "count": args.count,
        "seed": args.seed,
        "points": points,
        "mismatches": mismatches,
    }
    _emit(payload, args.json)
    return EXIT_OK if not mismatches else EXIT_FINDING


def _build_parser():
    parser = _Parser(prog="mm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_file=True):
        if needs_file:
            p.add_argument("problem", help="problem file")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--base0", type=int, default=None)
        p.add_argument("--window", type=int, default=None)
        p.add_argument("--retries", type=int, default=None)
        p.add_argument("--json", default=None, help="also write the report here")

    p = sub.add_parser("table", help="dump the stabilized Hilbert table")
    common(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("mixed", help="mixed multiplicities, direct route")
    common(p)
    p.set_defaults(func=_cmd_mixed)

    p = sub.add_parser("fc", help="build one weak element sequence")
    common(p)
    p.add_argument("--type", required=True, help="k0,k1,...")
    p.set_defaults(func=_cmd_fc)

    p = sub.add_parser("verify", help="two-route verification")
    common(p)
    p.add_argument("--type", default=None, help="k0,k1,...")
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("hsm", help="Hilbert-Samuel multiplicity of J on A/H")
    common(p)
    p.add_argument("--H", default=None, help="comma list of generators")
    p.set_defaults(func=_cmd_hsm)

    p = sub.add_parser("free", help="free multigraded extension, closed form")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", required=True, help="comma list of direction arities")
    p.add_argument("--J", default=None, help="comma list of generators (default m)")
    p.add_argument("--p", type=int, default=32003)
    p.add_argument("--quotient", type=int, default=None, help="direction to quotient")
    p.add_argument("--json", default=None)
    p.set_defaults(func=_cmd_free)

    p = sub.add_parser("difftest", help="dual-path differential test")
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-degree", type=int, default=3, dest="max_degree")
    p.add_argument("--json", default=None)
    p.set_defaults(func=_cmd_difftest)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (StabilizationError, SearchFailureError) as exc:
        payload = {"error": {"code": exc.code, "message": str(exc)}}
        if isinstance(exc, StabilizationError) and exc.table is not None:
            table = exc.table
            payload["table"] = table.as_json() if hasattr(table, "as_json") else {
                str(k): v for k, v in table.items()
            }
        if isinstance(exc, SearchFailureError) and exc.record is not None:
            payload["partial"] = exc.record.as_json()
        _emit(payload)
        return EXIT_INCONCLUSIVE
    except InconsistencyError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}})
        return EXIT_FINDING
    except MMError as exc:
        _emit({"error": {"code": exc.code, "message": str(exc)}})
        return EXIT_INPUT
    except OSError as exc:
        _emit({"error": {"code": "IO", "message": str(exc)}})
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
