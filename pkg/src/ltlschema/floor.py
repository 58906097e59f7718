"""Translation of sequential schemata into LTL.

Time plays the role of the iteration index: ``p[k]`` becomes ``X^k p``, an
iteration becomes ``G(lt_n -> ...)`` and atoms indexed by ``n+k`` are read at
the unique instant where ``eq_n`` holds.  Two fixed axioms force ``lt_n`` to
be an initial segment and ``eq_n`` to mark its end.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from .interp import EQ_N, LT_N
from .ltl import Always, Next, Prop, Until, X
from .schema import (
    N,
    PARAM,
    Atom,
    BigAnd,
    BigOr,
    Index,
    classify_sps,
    expand_incl,
    schema_props,
    size_metrics,
)
from .syntax import FALSE, TRUE, And, Iff, Implies, Node, Not, Or, Top, conj, node_count, walk

LT = Prop(LT_N)
EQ = Prop(EQ_N)


@dataclass(frozen=True)
class FloorOptions:
    nnf_first: bool = False
    inline_sugar: bool = True


def phi_lt() -> Node:
    """``lt_n U G !lt_n``: lt_n holds exactly on an initial segment."""
    return Until(LT, Always(Not(LT)))


def ax_t_eq_n() -> Node:
    """``eq_n`` holds exactly at the first instant where ``lt_n`` fails."""
    return And(
        Always(Iff(And(LT, Not(Next(LT))), Next(EQ))),
        Iff(Not(LT), EQ),
    )


def _check(s: Node):
    verdict = classify_sps(s)
    if not verdict.is_sps:
        detail = "; ".join(f"{rule} at {loc}" for loc, rule in verdict.violations)
        raise ValueError(f"not a sequential schema: {detail}")
    bad = sorted(p for p in schema_props(s) if p in (LT_N, EQ_N) or p.startswith("evq_"))
    if bad:
        raise ValueError(f"reserved variable name(s) in use: {', '.join(bad)}")


def _atom(a: Atom) -> Node:
    k = a.index.offset
    if a.index.base == PARAM:
        return Always(Implies(EQ, X(Prop(a.prop), k)))
    return X(Prop(a.prop), k)


def floor_prop(s: Node, opts: FloorOptions | None = None) -> Node:
    """The propositional part of the translation (no axioms)."""
    opts = opts or FloorOptions()
    s = expand_incl(s)
    if opts.nnf_first:
        polar = _Polar()
        core = polar.pos(s)
        return conj([core, *polar.axioms])
    return _plain(s, opts.inline_sugar)


def floor_translate(s: Node, opts: FloorOptions | None = None) -> Node:
    """``floor_prop(s) & phi_lt() & ax_t_eq_n()`` for a sequential schema ``s``."""
    _check(s)
    return And(And(floor_prop(s, opts), phi_lt()), ax_t_eq_n())


def _plain(s: Node, sugar: bool) -> Node:
    if isinstance(s, Top):
        return TRUE
    if isinstance(s, Atom):
        return _atom(s)
    if isinstance(s, Not):
        return Not(_plain(s.arg, sugar))
    if isinstance(s, And):
        return And(_plain(s.left, sugar), _plain(s.right, sugar))
    if isinstance(s, (Or, Implies, Iff)):
        a, b = _plain(s.left, sugar), _plain(s.right, sugar)
        if sugar:
            return type(s)(a, b)
        if isinstance(s, Or):
            return Not(And(Not(a), Not(b)))
        if isinstance(s, Implies):
            return Not(And(a, Not(b)))
        return And(Not(And(a, Not(b))), Not(And(b, Not(a))))
    if isinstance(s, BigAnd):
        return Always(Implies(LT, _plain(s.body, sugar)))
    if isinstance(s, BigOr):
        return Not(Always(Implies(LT, Not(_plain(s.body, sugar)))))
    raise TypeError(f"unsupported schema node {type(s).__name__}")


def _local(s: Node) -> bool:
    # translation only refers to the current instant and its successors
    for node in walk(s):
        if isinstance(node, (BigAnd, BigOr)):
            return False
        if isinstance(node, Atom) and node.index.base == PARAM:
            return False
    return True


class _Polar:
    """Polarity-aware variant: negation is pushed to the atoms first,
    ``!p[n+k]`` reads ``G(eq_n -> X^k !p)`` and every iterated disjunction is
    replaced by a fresh ``evq_<c>`` accumulator, so ``phi_lt`` stays the only
    eventuality."""

    def __init__(self):
        self.fresh = count()
        self.axioms: list[Node] = []

    def pos(self, s: Node) -> Node:
        if isinstance(s, Top):
            return TRUE
        if isinstance(s, Atom):
            return _atom(s)
        if isinstance(s, Not):
            return self.neg(s.arg)
        if isinstance(s, And):
            return And(self.pos(s.left), self.pos(s.right))
        if isinstance(s, Or):
            return Or(self.pos(s.left), self.pos(s.right))
        if isinstance(s, Implies):
            if _local(s.left):
                return Implies(self.pos(s.left), self.pos(s.right))
            return Or(self.neg(s.left), self.pos(s.right))
        if isinstance(s, Iff):
            if _local(s.left) and _local(s.right):
                return Iff(self.pos(s.left), self.pos(s.right))
            return Or(
                And(self.pos(s.left), self.pos(s.right)),
                And(self.neg(s.left), self.neg(s.right)),
            )
        if isinstance(s, BigAnd):
            return Always(Implies(LT, self.pos(s.body)))
        if isinstance(s, BigOr):
            return self.accumulate(s.var, s.body)
        raise TypeError(f"unsupported schema node {type(s).__name__}")

    def neg(self, s: Node) -> Node:
        if isinstance(s, Top):
            return FALSE
        if isinstance(s, Atom):
            k = s.index.offset
            if s.index.base == PARAM:
                return Always(Implies(EQ, X(Not(Prop(s.prop)), k)))
            return Not(X(Prop(s.prop), k))
        if isinstance(s, Not):
            return self.pos(s.arg)
        if isinstance(s, And):
            return Or(self.neg(s.left), self.neg(s.right))
        if isinstance(s, Or):
            return And(self.neg(s.left), self.neg(s.right))
        if isinstance(s, Implies):
            return And(self.pos(s.left), self.neg(s.right))
        if isinstance(s, Iff):
            if _local(s.left) and _local(s.right):
                return Not(Iff(self.pos(s.left), self.pos(s.right)))
            return Or(
                And(self.pos(s.left), self.neg(s.right)),
                And(self.neg(s.left), self.pos(s.right)),
            )
        if isinstance(s, BigAnd):
            return self.accumulate(s.var, Not(s.body))
        if isinstance(s, BigOr):
            return Always(Implies(LT, self.neg(s.body)))
        raise TypeError(f"unsupported schema node {type(s).__name__}")

    def accumulate(self, var: str, disjunct: Node) -> Node:
        # q[0] false, q[i+1] <-> (disjunct | q[i]); the disjunction is q[n]
        q = f"evq_{next(self.fresh)}"
        here, succ = Atom(q, Index(var, 0)), Atom(q, Index(var, 1))
        self.axioms.append(self.pos(Not(Atom(q, Index(None, 0)))))
        self.axioms.append(self.pos(BigAnd(var, Iff(succ, Or(disjunct, here)))))
        return self.pos(Atom(q, N))


def floor_size_report(s: Node, opts: FloorOptions | None = None) -> dict:
    """Sizes before and after translation.

    ``ratio`` is ``output_size / (sym_size * (1 + max_int))``, the constant
    of the size bound measured on this input.
    """
    metrics = size_metrics(s)
    out = node_count(floor_translate(s, opts))
    scale = metrics["sym_size"] * (1 + metrics["max_int"])
    return {"input": metrics, "output_size": out, "ratio": Fraction(out, scale)}


__all__ = [
    "FloorOptions", "phi_lt", "ax_t_eq_n", "floor_prop", "floor_translate",
    "floor_size_report",
]
