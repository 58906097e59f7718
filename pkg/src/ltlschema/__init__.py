"""Translations between linear temporal logic and sequential propositional
schemata, with bounded satisfiability oracles for both sides."""

from .ltl import (
    Always, Eventually, Next, Prop, UPInterpretation, Until, eval_ltl, labeling,
    ltl_nnf, parse_ltl, render_ltl,
)
from .schema import (
    Atom, BigAnd, BigAndIncl, BigOr, Index, Iter, PropInterpretation,
    SchemaInterpretation, Var, classify_sps, eval_prop, eval_schema, instantiate,
    parse_schema, render_schema, size_metrics,
)
from .syntax import FALSE, TRUE, And, Iff, Implies, Not, Or, ParseError, Top
from .interp import (
    ceil_interp, ceil_interp_inv, floor_interp, floor_interp_inv, invert_interp,
    parse_interp, render_schema_interp, render_up, segment_report,
)
from .floor import FloorOptions, floor_size_report, floor_translate
from .ceil import (
    CeilOptions, ceil_size_report, ceil_translate, direct_translate,
    finite_translate, invert_time,
)
from .oracle import enumerate_up, ltl_sat_bounded, prop_sat, schema_sat_bounded
from .modelcheck import TransitionSystem, check_safety, encode_ts, parse_ts

__version__ = "0.1.0"

__all__ = [
    "Always", "Eventually", "Next", "Prop", "UPInterpretation", "Until", "eval_ltl",
    "labeling", "ltl_nnf", "parse_ltl", "render_ltl", "Atom", "BigAnd", "BigAndIncl",
    "BigOr", "Index", "Iter", "PropInterpretation", "SchemaInterpretation", "Var",
    "classify_sps", "eval_prop", "eval_schema", "instantiate", "parse_schema",
    "render_schema", "size_metrics", "FALSE", "TRUE", "And", "Iff", "Implies", "Not",
    "Or", "ParseError", "Top", "ceil_interp", "ceil_interp_inv", "floor_interp",
    "floor_interp_inv", "invert_interp", "parse_interp", "render_schema_interp",
    "render_up", "segment_report", "FloorOptions", "floor_size_report",
    "floor_translate", "CeilOptions", "ceil_size_report", "ceil_translate",
    "direct_translate", "finite_translate", "invert_time", "enumerate_up",
    "ltl_sat_bounded", "prop_sat", "schema_sat_bounded", "TransitionSystem",
    "check_safety", "encode_ts", "parse_ts",
]
