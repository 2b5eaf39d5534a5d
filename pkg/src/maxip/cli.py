"""Command-line harness: instance files, pipeline runs, verification, reports.

Exit codes: 0 success, 1 verification mismatch, 2 invalid input or usage.
Instance files are JSON with a type tag; integer entries are decimal strings
(no precision ceiling) and real entries are "numerator/denominator" strings.
Reports are JSON with sorted keys, or CSV with cost tables flattened; the
wall_clock_sec field is the only one that varies between identical runs.
Thread count for verification sweeps comes from MAXIP_THREADS (default 1)
and never changes any reported value.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import core, crt, geometry, orpoly, powersum, protocol, sampling
from .sweeps import SWEEPS


class InputError(Exception):
    """Malformed file or argument set; maps to exit code 2."""


# --- instance files ---


def _encode_entry(kind: str, entry):
    if kind == core.BOOLEAN:
        return int(entry)
    if kind == core.INTEGER:
        return str(entry)
    f = Fraction(entry)
    return f"{f.numerator}/{f.denominator}"


def _decode_entry(kind: str, raw):
    try:
        if kind == core.BOOLEAN:
            if isinstance(raw, bool) or raw not in (0, 1):
                raise InputError(f"boolean entry must be 0 or 1, got {raw!r}")
            return int(raw)
        if kind == core.INTEGER:
            if isinstance(raw, int):
                return raw
            return int(str(raw), 10)
        return Fraction(str(raw))
    except (ValueError, TypeError) as exc:
        raise InputError(f"bad {kind} entry {raw!r}: {exc}") from exc


def instance_to_dict(instance: core.Instance) -> dict:
    kind = instance.kind
    return {
        "type": kind,
        "d": instance.d,
        "A": [[_encode_entry(kind, e) for e in row] for row in instance.a.rows],
        "B": [[_encode_entry(kind, e) for e in row] for row in instance.b.rows],
    }


def instance_from_dict(data: dict) -> core.Instance:
    try:
        kind = data["type"]
        d = int(data["d"])
        rows_a = data["A"]
        rows_b = data["B"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed instance file: {exc}") from exc
    if kind not in (core.BOOLEAN, core.INTEGER, core.REAL):
        raise InputError(f"unknown instance type {kind!r}")
    builder = {
        core.BOOLEAN: core.boolean_set,
        core.INTEGER: core.integer_set,
        core.REAL: core.rational_set,
    }[kind]
    try:
        side_a = builder([[_decode_entry(kind, e) for e in row] for row in rows_a], d=d)
        side_b = builder([[_decode_entry(kind, e) for e in row] for row in rows_b], d=d)
        return core.Instance(side_a, side_b)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def read_instance(path: str) -> core.Instance:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return instance_from_dict(data)


def write_instance(instance: core.Instance, path: str):
    with open(path, "w") as fh:
        json.dump(instance_to_dict(instance), fh, sort_keys=True, indent=1)
        fh.write("\n")


def geometry_to_dict(geom: geometry.GeometryInstance) -> dict:
    def points(pts):
        return [
            {
                "head": [str(h) for h in p.head],
                "tail_a": str(p.tail_a),
                "tail_b": str(p.tail_b),
            }
            for p in pts
        ]

    return {
        "mode": geom.mode,
        "W": str(geom.w),
        "k": geom.k,
        "A": points(geom.a_points),
        "B": points(geom.b_points),
    }


# --- reports ---


def emit_report(report: dict, fmt: str = "json", path: str | None = None) -> str:
    """Serialize a report with stable field order; returns the text."""
    if fmt == "json":
        text = json.dumps(report, sort_keys=True, indent=1, default=str) + "\n"
    elif fmt == "csv":
        rows = report.get("rows", [])
        header = report.get("columns")
        if header is None:
            header = sorted({k for row in rows for k in row})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in header})
        text = buf.getvalue()
    else:
        raise InputError(f"unknown report format {fmt!r}")
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def _finish(report: dict, args, started: float) -> None:
    report["wall_clock_sec"] = round(time.time() - started, 6)
    text = emit_report(report, getattr(args, "format", "json"),
                       getattr(args, "report", None))
    if not getattr(args, "report", None):
        sys.stdout.write(text)


# --- subcommands ---


def _cmd_gen(args, started):
    if args.planted:
        inst = core.gen_planted_orthogonal(args.n, args.d, args.seed)
    else:
        inst = core.gen_random_instance(args.n, args.d, args.density, args.seed)
    write_instance(inst, args.out)
    _finish(
        {
            "command": "gen",
            "parameters": {
                "n": args.n, "d": args.d, "density": args.density,
                "planted": args.planted,
            },
            "seed": args.seed,
            "outputs": {"path": args.out},
        },
        args, started,
    )
    return 0


def _cmd_solve(args, started):
    inst = read_instance(args.infile)
    outputs: dict = {}
    if args.mode == "exact":
        value, pair = core.max_ip_exact(inst)
        yes, witness = (None, None)
        if inst.kind in (core.BOOLEAN, core.INTEGER):
            yes, witness = core.orthogonal_decide(inst)
        outputs = {
            "value": str(value),
            "argmax": list(pair),
            "orthogonal": yes,
            "witness": list(witness) if witness else None,
        }
    elif args.mode == "mult":
        if args.t is None:
            raise InputError("solve mult requires --t")
        value = powersum.approx_mult(inst, Fraction(args.t), r=args.r)
        outputs = {"value": str(value), "value_float": float(value)}
    else:
        if args.t is None:
            raise InputError("solve add requires --t")
        value = sampling.approx_additive(inst, Fraction(args.t), args.seed)
        outputs = {"value": str(value), "value_float": float(value)}
    _finish(
        {
            "command": f"solve {args.mode}",
            "parameters": {"in": args.infile, "t": args.t, "r": args.r},
            "seed": args.seed,
            "outputs": outputs,
        },
        args, started,
    )
    return 0


def _cmd_reduce(args, started):
    inst = read_instance(args.infile)
    outputs: dict = {}
    if args.kind == "ov2zov":
        emitted = crt.ov_to_zov(inst, args.ell)
        payload = {
            "ell": args.ell,
            "count": len(emitted),
            "instances": [instance_to_dict(e) for e in emitted],
        }
        outputs = {"count": len(emitted), "dimension": args.ell + 1}
    elif args.kind == "zov2zmaxip":
        emitted = geometry.zov_to_zmaxip_tensor(inst)
        payload = instance_to_dict(emitted)
        outputs = {"dimension": emitted.d}
    elif args.kind == "zmaxip2geom":
        geom = geometry.zmaxip_to_geometry(inst, args.mode)
        payload = geometry_to_dict(geom)
        outputs = {"W": str(geom.w), "k": geom.k, "mode": geom.mode}
    elif args.kind == "ov2gap":
        gap = protocol.ov_to_maxip_gap(inst, Fraction(args.eps), reps=args.reps)
        payload = {
            "threshold": gap.threshold,
            "ratio": str(gap.ratio),
            "soundness": str(gap.soundness),
            "coin_bits": gap.coin_bits,
            "advice_bits": gap.advice_bits,
            "count": len(gap.instances),
            "instances": [instance_to_dict(g) for g in gap.instances],
        }
        outputs = {
            "count": len(gap.instances),
            "threshold": gap.threshold,
            "soundness": str(gap.soundness),
        }
    elif args.kind == "ov2pm1":
        gi = orpoly.ov_to_pm1_gap(inst, Fraction(args.eps))
        payload = {
            "dimension": gi.dimension,
            "threshold": str(gi.threshold),
            "ratio": str(gi.ratio),
            "explicit": instance_to_dict(gi.explicit) if gi.explicit else None,
            "pair_dots": [
                [str(gi.pair_dot(i, j)) for j in range(inst.b.n)]
                for i in range(inst.a.n)
            ],
        }
        outputs = {"dimension": gi.dimension, "threshold": str(gi.threshold)}
    else:
        raise InputError(f"unknown reduction {args.kind!r}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1, default=str)
            fh.write("\n")
        outputs["path"] = args.out
    _finish(
        {
            "command": f"reduce {args.kind}",
            "parameters": {"in": args.infile, "ell": args.ell, "eps": args.eps,
                           "reps": args.reps, "mode": args.mode},
            "seed": None,
            "outputs": outputs,
        },
        args, started,
    )
    return 0


def _cmd_proto(args, started):
    import random

    outputs: dict = {}
    if args.mode == "cost":
        cost = protocol.protocol_cost(args.n, args.T, seed=args.seed)
        outputs = {"n": args.n, **cost.as_dict()}
    elif args.mode == "run":
        rng = random.Random(args.seed)
        x = tuple(rng.randrange(2) for _ in range(args.n))
        y = tuple(rng.randrange(2) for _ in range(args.n))
        accepted = 0
        cost = None
        for trial in range(args.trials):
            result, cost = protocol.ma_disj_improved(x, y, seed=args.seed + trial)
            accepted += result.accepted
        outputs = {
            "n": args.n,
            "trials": args.trials,
            "accept_rate": accepted / args.trials,
            "claimed": result.claimed,
            **cost.as_dict(),
        }
    else:  # soundness
        rng = random.Random(args.seed)
        x = tuple(rng.randrange(2) for _ in range(args.n))
        y = list(x)
        if sum(a * b for a, b in zip(x, y)) == 0:
            x = tuple(1 for _ in range(args.n))
            y = tuple(1 for _ in range(args.n))
        params = protocol.wrapper_params(args.n, args.T)
        truth = sum(a * b for a, b in zip(x, y))
        fake = 0 if truth != 0 else 1
        package = protocol.cheating_package(x, tuple(y), fake, params)
        rejected = 0
        for trial in range(args.trials):
            result, _ = protocol.ma_disj_improved(
                x, tuple(y), advice=package, seed=args.seed + trial
            )
            rejected += not result.accepted
        outputs = {
            "n": args.n,
            "trials": args.trials,
            "rejection_rate": rejected / args.trials,
            "bad_prime_fraction": str(
                protocol.bad_prime_fraction(truth - fake, params.primes)
            ),
            "extended_range": params.extended_range,
        }
    _finish(
        {
            "command": f"proto {args.mode}",
            "parameters": {"n": args.n, "T": args.T, "trials": args.trials},
            "seed": args.seed,
            "outputs": outputs,
        },
        args, started,
    )
    return 0


def _threads() -> int:
    raw = os.environ.get("MAXIP_THREADS", "1")
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"MAXIP_THREADS must be an integer, got {raw!r}") from exc
    if value < 1:
        raise InputError("MAXIP_THREADS must be >= 1")
    return value


def _cmd_verify(args, started):
    sweep = SWEEPS.get(args.pipeline)
    if sweep is None:
        raise InputError(f"unknown pipeline {args.pipeline!r}")
    kwargs = {"seed": args.seed, "threads": _threads()}
    if args.trials is not None:
        kwargs["trials"] = args.trials
    for name in ("n", "d", "ell"):
        value = getattr(args, name)
        if value is not None:
            kwargs[name] = value
    if args.t is not None and args.pipeline in ("mult", "additive"):
        kwargs["t"] = args.t
    if args.eps is not None and args.pipeline in ("gap", "pm1"):
        kwargs["eps"] = args.eps
    try:
        verdict = sweep(**kwargs)
    except TypeError as exc:
        raise InputError(f"bad arguments for pipeline {args.pipeline}: {exc}") from exc
    _finish(
        {
            "command": f"verify {args.pipeline}",
            "parameters": {k: v for k, v in kwargs.items() if k != "threads"},
            "seed": args.seed,
            "outputs": verdict,
            "verdict": "pass" if verdict["ok"] else "fail",
        },
        args, started,
    )
    return 0 if verdict["ok"] else 1


def _cmd_bench(args, started):
    sizes = [int(s) for s in args.sizes.split(",") if s]
    rows = []
    for n in sizes:
        cost = protocol.protocol_cost(n, seed=args.seed)
        params = protocol.wrapper_params(n)
        rows.append(
            {
                "n": n,
                "t_blocks": params.t_blocks,
                "primes": len(params.primes),
                "extended_range": int(params.extended_range),
                **cost.as_dict(),
            }
        )
    report = {
        "command": "bench",
        "parameters": {"sizes": sizes},
        "seed": args.seed,
        "columns": [
            "n", "t_blocks", "primes", "extended_range",
            "advice_bits", "coin_bits", "message_bits", "rounds",
        ],
        "rows": rows,
    }
    _finish(report, args, started)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxip",
        description="maximum inner product search: oracles, approximations, "
        "reductions, and protocol experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--planted", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("solve", help="solve an instance exactly or approximately")
    p.add_argument("mode", choices=("exact", "mult", "add"))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--t")
    p.add_argument("--r", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("reduce", help="run one reduction step")
    p.add_argument("kind", choices=("ov2zov", "zov2zmaxip", "zmaxip2geom",
                                    "ov2gap", "ov2pm1"))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--ell", type=int, default=3)
    p.add_argument("--eps", default="1/3")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--mode", choices=("furthest", "closest"), default="furthest")
    p.add_argument("--out")
    p.add_argument("--report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("proto", help="protocol runs, costs, and soundness")
    p.add_argument("mode", choices=("run", "cost", "soundness"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--T", type=int, default=None)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_proto)

    p = sub.add_parser("verify", help="pipeline sweeps against the oracles")
    p.add_argument("--pipeline", required=True, choices=sorted(SWEEPS))
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--t")
    p.add_argument("--eps")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bench", help="protocol cost sweep over input sizes")
    p.add_argument("--sizes", default="256,512,1024,2048")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.set_defaults(func=_cmd_bench)

    return parser


def run_command(argv) -> int:
    """Parse and execute; returns the exit code (0 ok, 1 mismatch, 2 bad input)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    started = time.time()
    try:
        return args.func(args, started)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
