"""Command line front end.

    ldo solve   [INPUT] [--engine ldo|saldo|mask|oracle]
    ldo models  [INPUT] [--max-models N]
    ldo trace   [INPUT] [--engine ldo|saldo]
    ldo report  [INPUT] [--engine ldo|saldo] [--output text|kv|json]
    ldo convert [INPUT] [--to word|dimacs]
    ldo parse   [INPUT]

INPUT is a path or ``-`` for stdin (the default). ``--random SEED`` replaces
the input by a generated instance. ``solve`` exits 10 for SAT, 20 for UNSAT;
every command exits 1 on error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass

from .errors import LdoError
from .formula import CnfFormula, decode_assignment, random_cnf
from .machine import LogicalDiskOperator, RunResult
from .masks import DEFAULT_N_MAX, cnf_mask_direct, models_of_mask
from .oracle import brute_force
from .saldo import DEFAULT_ANGLE_THRESHOLD, SelfAssemblingLDO, decode_model_saldo, precision_report
from .words import detect_format, emit_dimacs, encode_word, read_formula

ENGINES = ("ldo", "saldo", "mask", "oracle")
EXIT_SAT, EXIT_UNSAT, EXIT_ERROR = 10, 20, 1


@dataclass
class RunConfig:
    input: str = "-"
    format: str = "auto"
    engine: str = "ldo"
    n: int | None = None
    n_max: int = DEFAULT_N_MAX
    photocell: str = "scan"
    protection: str = "fix"
    return_to_storage: bool = True
    output: str = "text"


class Outcome:
    """What one engine produced: verdict, models and, for machines, the run."""

    def __init__(self, engine, sat, models, n, run=None, machine=None):
        self.engine = engine
        self.sat = sat
        self.models = models
        self.n = n
        self.run: RunResult | None = run
        self.machine = machine

    @property
    def verdict(self) -> str:
        return "SAT" if self.sat else "UNSAT"

    def decode(self, j: int) -> dict[int, bool]:
        if self.engine == "saldo":
            return decode_model_saldo(self.machine.registry, j)
        return decode_assignment(j, self.n)


def execute(f: CnfFormula, cfg: RunConfig) -> Outcome:
    n = f.n if cfg.n is None else cfg.n
    if cfg.engine == "mask":
        mask = cnf_mask_direct(f, n, n_max=cfg.n_max)
        models = models_of_mask(mask)
        return Outcome("mask", bool(models), models, n)
    if cfg.engine == "oracle":
        res = brute_force(f, n, cap=cfg.n_max)
        return Outcome("oracle", res.sat, set(res.models), n)
    options = dict(photocell=cfg.photocell, protection=cfg.protection,
                   return_to_storage=cfg.return_to_storage, n_max=cfg.n_max)
    if cfg.engine == "ldo":
        machine = LogicalDiskOperator(n, **options)
    elif cfg.engine == "saldo":
        machine = SelfAssemblingLDO(**options)
    else:
        raise ValueError(f"unknown engine {cfg.engine!r}")
    result = machine.run(f)
    return Outcome(cfg.engine, result.sat, machine.models(), n, result, machine)


def _load(args) -> tuple[CnfFormula, str]:
    if args.random is not None:
        rng = random.Random(args.random)
        return random_cnf(rng, args.random_n, args.random_m, (1, args.random_width)), "word"
    if args.input == "-":
        text = sys.stdin.read()
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    fmt = detect_format(text) if args.format == "auto" else args.format
    return read_formula(text, fmt, args.n), fmt


def _config(args) -> RunConfig:
    return RunConfig(
        input=args.input,
        format=args.format,
        engine=getattr(args, "engine", "ldo"),
        n=args.n,
        n_max=args.n_max,
        photocell=args.photocell,
        protection=args.protection,
        return_to_storage=not args.no_return,
        output=args.output,
    )


def _assignment_text(asg: dict[int, bool]) -> str:
    return " ".join(f"a{k}={int(v)}" for k, v in asg.items())


def cmd_solve(args, out) -> int:
    f, _ = _load(args)
    outcome = execute(f, _config(args))
    if args.output == "json":
        print(json.dumps({"engine": outcome.engine, "verdict": outcome.verdict}, sort_keys=True), file=out)
    else:
        print(outcome.verdict, file=out)
    return EXIT_SAT if outcome.sat else EXIT_UNSAT


def cmd_models(args, out) -> int:
    f, _ = _load(args)
    outcome = execute(f, _config(args))
    ordered = sorted(outcome.models)
    cap = args.max_models
    truncated = bool(cap) and len(ordered) > cap
    if truncated:
        ordered = ordered[:cap]
        print(f"note: {len(outcome.models)} models, listing the first {cap} (--max-models)", file=sys.stderr)
    if args.output == "json":
        payload = {
            "engine": outcome.engine,
            "count": len(outcome.models),
            "truncated": truncated,
            "models": [{"index": j, "assignment": {f"a{k}": v for k, v in outcome.decode(j).items()}}
                       for j in ordered],
        }
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        for j in ordered:
            line = f"j={j}"
            text = _assignment_text(outcome.decode(j))
            print(f"{line} {text}" if text else line, file=out)
    return 0


def cmd_trace(args, out) -> int:
    f, _ = _load(args)
    cfg = _config(args)
    if cfg.engine not in ("ldo", "saldo"):
        raise LdoError("trace needs a machine engine (ldo or saldo)")
    outcome = execute(f, cfg)
    for event in outcome.run.trace:
        print(event.to_json() if args.output == "json" else event.to_line(), file=out)
    return 0


def cmd_report(args, out) -> int:
    f, _ = _load(args)
    cfg = _config(args)
    if cfg.engine not in ("ldo", "saldo"):
        raise LdoError("report needs a machine engine (ldo or saldo)")
    outcome = execute(f, cfg)
    run = outcome.run
    report = precision_report(run.ledger, args.angle_threshold)
    ledger = run.ledger.as_dict()
    if args.output == "json":
        payload = {
            "engine": outcome.engine,
            "verdict": outcome.verdict,
            "tokens": run.consumed + run.unconsumed,
            "consumed": run.consumed,
            "clauses": f.m,
            "literals": f.num_literals,
            "ledger": ledger,
            "precision": report.as_dict(),
        }
        print(json.dumps(payload, sort_keys=True), file=out)
    elif args.output == "kv":
        print(f"engine={outcome.engine}", file=out)
        print(f"verdict={outcome.verdict}", file=out)
        print(f"tokens={run.consumed + run.unconsumed}", file=out)
        print(f"consumed={run.consumed}", file=out)
        for key, value in ledger.items():
            print(f"{key}={value}", file=out)
        if report.warning:
            print(f"warning={report.warning}", file=out)
    else:
        print(f"{outcome.engine}: {outcome.verdict} after {run.consumed} of "
              f"{run.consumed + run.unconsumed} tokens (stopped by rule {run.halt_rule})", file=out)
        print(report.to_text(), file=out)
    return 0


def cmd_convert(args, out) -> int:
    f, fmt = _load(args)
    target = args.to or ("word" if fmt == "dimacs" else "dimacs")
    out.write(emit_dimacs(f) if target == "dimacs" else encode_word(f) + "\n")
    return 0


def cmd_parse(args, out) -> int:
    f, fmt = _load(args)
    if args.output == "json":
        payload = {
            "format": fmt,
            "n": f.n,
            "m": f.m,
            "literals": f.num_literals,
            "clauses": [[lit.to_int() for lit in c] for c in f.clauses],
        }
        print(json.dumps(payload, sort_keys=True), file=out)
    else:
        print(f"format={fmt} n={f.n} m={f.m} literals={f.num_literals}", file=out)
        print(encode_word(f), file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ldo", description="Logical disk operator SAT simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", default="-", help="input file, '-' for stdin")
    common.add_argument("--format", choices=("auto", "word", "dimacs"), default="auto")
    common.add_argument("--n", type=int, default=None, help="override the variable count")
    common.add_argument("--n-max", type=int, default=DEFAULT_N_MAX, help="largest n a mask or disk may have")
    common.add_argument("--photocell", choices=("scan", "analog"), default="scan")
    common.add_argument("--protection", choices=("fix", "inert", "none"), default="fix",
                        help="how WA2 disks are kept from blackening further")
    common.add_argument("--no-return", action="store_true", help="skip command iii (do not restock SA)")
    common.add_argument("--random", type=int, metavar="SEED", default=None,
                        help="ignore INPUT and generate a random instance")
    common.add_argument("--random-n", type=int, default=4)
    common.add_argument("--random-m", type=int, default=6)
    common.add_argument("--random-width", type=int, default=3)

    def add(name, func, engines=ENGINES, outputs=("text", "json"), **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        if engines:
            p.add_argument("--engine", choices=engines, default="ldo")
        p.add_argument("--output", choices=outputs, default="text")
        p.set_defaults(func=func)
        return p

    add("solve", cmd_solve, help="print SAT or UNSAT")
    p = add("models", cmd_models, help="list satisfying assignments")
    p.add_argument("--max-models", type=int, default=10000, help="listing cap, 0 for none")
    add("trace", cmd_trace, engines=("ldo", "saldo"), help="print the transition trace")
    p = add("report", cmd_report, engines=("ldo", "saldo"), outputs=("text", "kv", "json"),
            help="cost ledger and precision report")
    p.add_argument("--angle-threshold", type=float, default=DEFAULT_ANGLE_THRESHOLD)
    p = add("convert", cmd_convert, engines=None, help="word <-> DIMACS")
    p.add_argument("--to", choices=("word", "dimacs"), default=None)
    add("parse", cmd_parse, engines=None, help="parse and summarise the input")
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (LdoError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
