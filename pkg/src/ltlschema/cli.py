"""Command-line entry point.

Output is line keyed (``status:``, ``witness:``, ``bound:`` ...) so that it is
easy to consume from scripts.  Exit codes: 0 for success / SAT / holds /
true, 1 for UNSAT / violation / false, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ceil import CeilOptions, ceil_size_report, ceil_translate, direct_translate, finite_translate
from .floor import FloorOptions, floor_size_report, floor_translate
from .interp import parse_interp, render_schema_interp, render_up
from .ltl import UPInterpretation, eval_ltl, next_depth, parse_ltl, render_ltl
from .modelcheck import check_safety, parse_ts
from .oracle import ltl_sat_bounded, schema_sat_bounded
from .schema import (
    classify_sps,
    eval_schema,
    instantiate,
    parse_schema,
    render_schema,
    size_metrics,
)
from .syntax import ParseError


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _one_line(text: str) -> str:
    return " ".join(line.strip() for line in text.splitlines() if line.strip())


def _emit(out, args, fields: dict):
    if getattr(args, "json", False):
        out.write(json.dumps(fields) + "\n")
        return
    for key, value in fields.items():
        out.write(f"{key}: {value}\n")


def _formula_arg(args) -> str:
    if args.formula_file:
        if args.formula is not None:
            raise InputError("give either FORMULA or --formula-file, not both")
        return _read(args.formula_file)
    if args.formula is None:
        raise InputError("missing FORMULA")
    return args.formula


# -- subcommands ---------------------------------------------------------------------

def cmd_translate(args, out, err) -> int:
    text = _read(args.file)
    if args.to == "ltl":
        s = parse_schema(text)
        phi = floor_translate(s, FloorOptions(nnf_first=args.nnf, inline_sugar=not args.no_sugar))
        _emit(out, args, {"formula": render_ltl(phi)})
        return 0
    phi = parse_ltl(text)
    if args.method == "ceil":
        opts = CeilOptions(args.invert_time, args.fg, args.inline_prop)
        s = ceil_translate(phi, opts)
    elif args.method == "direct":
        s = direct_translate(phi)
    else:
        s = finite_translate(phi)
    verdict = classify_sps(s)
    _emit(out, args, {"schema": render_schema(s), "sps": "yes" if verdict.is_sps else "no"})
    return 0


def cmd_sat(args, out, err) -> int:
    text = _read(args.file)
    if args.side == "sps":
        bound = 8 if args.bound is None else args.bound
        verdict = schema_sat_bounded(parse_schema(text), bound)
        if verdict.sat:
            _emit(out, args, {
                "status": "SAT",
                "bound": bound,
                "witness": _one_line(render_schema_interp(verdict.witness)),
            })
            return 0
        _emit(out, args, {"status": f"UNSAT up to n={bound}", "bound": bound})
        return 1
    bound = 6 if args.bound is None else args.bound
    verdict = ltl_sat_bounded(parse_ltl(text), bound)
    if verdict.sat:
        _emit(out, args, {"status": "SAT", "bound": bound, "witness": render_up(verdict.witness)})
        return 0
    _emit(out, args, {"status": f"UNSAT up to k+l={bound}", "bound": bound})
    return 1


def cmd_eval(args, out, err) -> int:
    interp = parse_interp(_read(args.interp))
    text = _formula_arg(args)
    if isinstance(interp, UPInterpretation):
        value = eval_ltl(interp, args.at, parse_ltl(text))
    else:
        if args.at:
            raise InputError("--at applies to lasso interpretations only")
        value = eval_schema(interp, parse_schema(text))
    _emit(out, args, {"value": "true" if value else "false"})
    return 0 if value else 1


def cmd_instantiate(args, out, err) -> int:
    if args.n < 0:
        raise InputError("--n must be a natural number")
    s = parse_schema(_read(args.file))
    _emit(out, args, {"instance": render_schema(instantiate(s, args.n))})
    return 0


def cmd_mc(args, out, err) -> int:
    ts = parse_ts(_read(args.ts))
    phi = parse_ltl(_formula_arg(args))
    if next_depth(phi) > 0:
        err.write("warning: X obligations are checked on a path extended by "
                  f"{next_depth(phi)} step(s) past the bound\n")
    verdict = check_safety(ts, phi, args.bound)
    if verdict.holds:
        _emit(out, args, {"status": f"holds up to n={args.bound}", "bound": args.bound})
        return 0
    _emit(out, args, {
        "status": "violated",
        "bound": args.bound,
        "time": verdict.time,
        "path": " ".join(verdict.path),
        "actions": " ".join(verdict.actions),
    })
    return 1


def cmd_size(args, out, err) -> int:
    text = _read(args.file)
    side = args.side
    if side == "auto":
        try:
            parse_schema(text)
            side = "sps"
        except ParseError:
            side = "ltl"
    if side == "sps":
        s = parse_schema(text)
        fields = dict(size_metrics(s))
        if classify_sps(s).is_sps:
            rep = floor_size_report(s)
            fields.update(output_size=rep["output_size"], ratio=f"{float(rep['ratio']):.4f}")
        _emit(out, args, fields)
        return 0
    rep = ceil_size_report(parse_ltl(text))
    _emit(out, args, {
        "input_size": rep["input_size"],
        "output_size": rep["output_size"],
        "ratio": f"{float(rep['ratio']):.4f}",
    })
    return 0


# -- argument parsing ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ltlschema",
        description="Translate between LTL and sequential propositional schemata.",
    )
    parser.add_argument("--json", action="store_true", help="print one JSON object instead of key: value lines")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("translate", help="translate a schema to LTL or an LTL formula to a schema")
    p.add_argument("--to", choices=["ltl", "sps"], required=True)
    p.add_argument("--nnf", action="store_true", help="schema to LTL: polarity-aware variant")
    p.add_argument("--no-sugar", action="store_true", help="schema to LTL: expand |, ->, <->")
    p.add_argument("--invert-time", action="store_true", help="LTL to schema: reverse indices")
    p.add_argument("--fg", action="store_true", help="LTL to schema: dedicated F/G axioms")
    p.add_argument("--inline-prop", action="store_true", help="LTL to schema: no variables for boolean connectives")
    p.add_argument("--method", choices=["ceil", "direct", "finite"], default="ceil")
    p.add_argument("file")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("sat", help="bounded satisfiability")
    p.add_argument("--side", choices=["ltl", "sps"], required=True)
    p.add_argument("--bound", type=int, help="n_max for schemata (default 8), k+l for LTL (default 6)")
    p.add_argument("file")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("eval", help="evaluate a formula in an interpretation")
    p.add_argument("--interp", required=True)
    p.add_argument("--at", type=int, default=0)
    p.add_argument("--formula-file")
    p.add_argument("formula", nargs="?")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("instantiate", help="print the instance of a schema")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_instantiate)

    p = sub.add_parser("mc", help="bounded safety check of a transition system")
    p.add_argument("--ts", required=True)
    p.add_argument("--prop", dest="formula")
    p.add_argument("--formula-file")
    p.add_argument("--bound", type=int, default=8)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("size", help="size measurements")
    p.add_argument("--side", choices=["auto", "ltl", "sps"], default="auto")
    p.add_argument("file")
    p.set_defaults(func=cmd_size)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(args, "bound", None) is not None and args.bound < 0:
        err.write("error: --bound must be a natural number\n")
        return 2
    try:
        return args.func(args, out, err)
    except (InputError, ParseError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
