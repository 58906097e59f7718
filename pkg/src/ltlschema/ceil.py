"""Translations of LTL formulas into schemata.

Indices ``0..n`` of a schema model stand for the positions of a lasso,
``pfx`` marks the prefix and ``eq_k`` the first loop position.  Three
translations are provided:

* :func:`ceil_translate`, structure preserving, with one variable per
  subformula; its output is always sequential.
* :func:`direct_translate`, which unfolds the semantics with general
  iterations (correct, but outside the sequential fragment).
* :func:`finite_translate`, the naive unfolding over ``0..n`` read as a
  finite trace.  It is *not* satisfiability preserving for LTL and is kept
  for finite-horizon uses such as safety checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .interp import EQ_K, PFX
from .ltl import (
    Always,
    Eventually,
    Next,
    Prop,
    Until,
    props,
    subformulas,
)
from .schema import (
    N,
    Atom,
    BigAnd,
    BigAndIncl,
    BigOr,
    Index,
    Iter,
    simplify,
)
from .syntax import BINARY, BOOLEAN, TRUE, And, Iff, Implies, Node, Not, Or, Top, conj, node_count

I = "i"
ZERO = Index(None, 0)
HERE = Index(I, 0)
NEXT = Index(I, 1)


def _pfx(e: Index) -> Node:
    return Atom(PFX, e)


def _eqk(e: Index) -> Node:
    return Atom(EQ_K, e)


def s_leq_pfx() -> Node:
    """``!pfx[n] & bigand i . (pfx[i+1] -> pfx[i])``: pfx is a 2-initial segment."""
    return And(Not(_pfx(N)), BigAnd(I, Implies(_pfx(NEXT), _pfx(HERE))))


def ax_i_eq_k() -> Node:
    """``eq_k`` holds exactly at the short length of ``pfx``."""
    return And(
        Iff(Not(_pfx(ZERO)), _eqk(ZERO)),
        BigAnd(I, Iff(And(_pfx(HERE), Not(_pfx(NEXT))), _eqk(NEXT))),
    )


def _check_names(phi: Node):
    bad = sorted(
        p for p in props(phi)
        if p in (PFX, EQ_K) or p.startswith(("sub_", "subp_"))
    )
    if bad:
        raise ValueError(f"reserved variable name(s) in use: {', '.join(bad)}")


# -- structure-preserving translation --------------------------------------------

@dataclass(frozen=True)
class CeilOptions:
    invert_time: bool = False
    specialize_fg: bool = False
    inline_propositional: bool = False


def desugar_fg(phi: Node) -> Node:
    """``F a`` as ``true U a`` and ``G a`` as ``!(true U !a)``."""
    if isinstance(phi, (Top, Prop)):
        return phi
    if isinstance(phi, Eventually):
        return Until(TRUE, desugar_fg(phi.arg))
    if isinstance(phi, Always):
        return Not(Until(TRUE, Not(desugar_fg(phi.arg))))
    if isinstance(phi, (Not, Next)):
        return type(phi)(desugar_fg(phi.arg))
    return type(phi)(desugar_fg(phi.left), desugar_fg(phi.right))


@dataclass
class SubformulaTable:
    """Variable names of the subformulas of ``formula`` (after desugaring).

    ``order`` lists subformulas bottom-up; atoms and, when propositional
    connectives are inlined, boolean subformulas have no entry in ``names``.
    """

    formula: Node
    order: list
    names: dict
    primed: dict
    inline: bool

    def term(self, psi: Node, e: Index) -> Node:
        """The schema standing for ``psi`` at index ``e``."""
        if isinstance(psi, Prop):
            return Atom(psi.name, e)
        name = self.names.get(psi)
        if name is not None:
            return Atom(name, e)
        if isinstance(psi, Top):
            return TRUE
        if isinstance(psi, Not):
            return Not(self.term(psi.arg, e))
        return type(psi)(self.term(psi.left, e), self.term(psi.right, e))


def subformula_table(phi: Node, opts: CeilOptions | None = None) -> SubformulaTable:
    opts = opts or CeilOptions()
    formula = phi if opts.specialize_fg else desugar_fg(phi)
    order = subformulas(formula)
    names, primed = {}, {}
    ordinal = 0
    for psi in order:
        if isinstance(psi, Prop) or (opts.inline_propositional and isinstance(psi, BOOLEAN)):
            continue
        names[psi] = f"sub_{ordinal}"
        if isinstance(psi, (Until, Eventually, Always)):
            primed[psi] = f"subp_{ordinal}"
        ordinal += 1
    return SubformulaTable(formula, order, names, primed, opts.inline_propositional)


def _loop_start(body) -> Node:
    # bigand_incl i . (eq_k[i] -> body(i)): body at the first loop position
    return BigAndIncl(I, Implies(_eqk(HERE), body(HERE)))


def _axiom(table: SubformulaTable, psi: Node) -> Node | None:
    name = table.names.get(psi)
    if name is None:
        return None
    v = lambda e: Atom(name, e)  # noqa: E731
    t = table.term
    if isinstance(psi, Top):
        return BigAndIncl(I, v(HERE))
    if isinstance(psi, Not):
        return BigAndIncl(I, Iff(v(HERE), Not(t(psi.arg, HERE))))
    if isinstance(psi, BINARY):
        op = type(psi)
        return BigAndIncl(I, Iff(v(HERE), op(t(psi.left, HERE), t(psi.right, HERE))))
    if isinstance(psi, Next):
        return And(
            BigAnd(I, Iff(v(HERE), t(psi.arg, NEXT))),
            Iff(v(N), _loop_start(lambda e: t(psi.arg, e))),
        )
    primed = table.primed[psi]
    w = lambda e: Atom(primed, e)  # noqa: E731
    if isinstance(psi, Until):
        a = lambda e: t(psi.left, e)  # noqa: E731
        b = lambda e: t(psi.right, e)  # noqa: E731
        return conj([
            BigAnd(I, Iff(v(HERE), Or(b(HERE), And(a(HERE), v(NEXT))))),
            Iff(v(N), Or(b(N), And(a(N), _loop_start(w)))),
            BigAnd(I, Iff(w(HERE), Or(b(HERE), And(a(HERE), w(NEXT))))),
            Iff(w(N), b(N)),
        ])
    a = lambda e: t(psi.arg, e)  # noqa: E731
    if isinstance(psi, Eventually):
        return conj([
            BigAnd(I, Iff(v(HERE), Or(a(HERE), v(NEXT)))),
            Iff(v(N), Or(a(N), _loop_start(w))),
            BigAnd(I, Iff(w(HERE), Or(a(HERE), w(NEXT)))),
            Iff(w(N), a(N)),
        ])
    if isinstance(psi, Always):
        # the primed variable says "a holds from here up to n"; it closes the
        # loop so that an all-false valuation of |G a| cannot be chosen
        return conj([
            BigAnd(I, Iff(v(HERE), And(a(HERE), v(NEXT)))),
            Iff(v(N), And(a(N), _loop_start(w))),
            BigAnd(I, Iff(w(HERE), And(a(HERE), w(NEXT)))),
            Iff(w(N), a(N)),
        ])
    raise TypeError(f"not an LTL formula: {psi!r}")


def ceil_axioms(phi: Node, opts: CeilOptions | None = None) -> list[Node]:
    """The subformula axioms, one entry per subformula that has a variable."""
    table = subformula_table(phi, opts)
    return [ax for ax in (_axiom(table, psi) for psi in table.order) if ax is not None]


def ceil_translate(phi: Node, opts: CeilOptions | None = None) -> Node:
    """``|phi|[0]`` and the subformula axioms, ``s_leq_pfx`` and ``ax_i_eq_k``."""
    opts = opts or CeilOptions()
    _check_names(phi)
    table = subformula_table(phi, opts)
    axioms = [ax for ax in (_axiom(table, psi) for psi in table.order) if ax is not None]
    parts = [table.term(table.formula, ZERO)]
    if axioms:
        parts.append(conj(axioms))
    parts += [s_leq_pfx(), ax_i_eq_k()]
    out = conj(parts)
    return invert_time(out) if opts.invert_time else out


def invert_time(s: Node) -> Node:
    """Re-index a sequential schema by ``j -> n-j``.

    Outer indices ``0`` and ``n`` are swapped; inside ``bigand``/``bigor``
    the indices ``i`` and ``i+1`` are swapped; ``bigand_incl`` bodies over
    ``i`` alone are unchanged.  Models of the result are exactly the
    reversed models of ``s`` (see :func:`ltlschema.interp.invert_interp`).
    """
    return _invert(s, None)


def _invert(s, ctx):
    if isinstance(s, Top):
        return s
    if isinstance(s, Atom):
        e = s.index
        if ctx is None:
            if e == ZERO:
                return Atom(s.prop, N)
            if e == N:
                return Atom(s.prop, ZERO)
            raise ValueError(f"cannot invert outer index {e}")
        var, incl = ctx
        if e.base != var or e.offset > (0 if incl else 1):
            raise ValueError(f"cannot invert index {e} under iteration over {var}")
        return s if incl else Atom(s.prop, Index(var, 1 - e.offset))
    if isinstance(s, Not):
        return Not(_invert(s.arg, ctx))
    if isinstance(s, BINARY):
        return type(s)(_invert(s.left, ctx), _invert(s.right, ctx))
    if isinstance(s, (BigAnd, BigOr, BigAndIncl)):
        if ctx is not None:
            raise ValueError("cannot invert nested iterations")
        return type(s)(s.var, _invert(s.body, (s.var, isinstance(s, BigAndIncl))))
    raise ValueError(f"cannot invert {type(s).__name__} nodes")


def ceil_size_report(phi: Node, opts: CeilOptions | None = None) -> dict:
    inp = node_count(phi)
    out = node_count(ceil_translate(phi, opts))
    return {"input_size": inp, "output_size": out, "ratio": Fraction(out, inp)}


# -- semantic unfoldings ---------------------------------------------------------

def _var(depth: int) -> str:
    return ("i", "j")[depth] if depth < 2 else f"i{depth}"


def _le_n(e: Index, depth: int) -> Node:
    # bigor over e..n of true: holds iff e <= n
    return Iter("or", _var(depth), e, N, TRUE)


def _loop(e: Index, depth: int) -> Node:
    return And(Not(_pfx(e)), _le_n(e, depth))


def _direct(phi: Node, e: Index, d: int) -> Node:
    if isinstance(phi, Top):
        return TRUE
    if isinstance(phi, Prop):
        return Atom(phi.name, e)
    if isinstance(phi, Not):
        return Not(_direct(phi.arg, e, d))
    if isinstance(phi, BINARY):
        return type(phi)(_direct(phi.left, e, d), _direct(phi.right, e, d))
    if isinstance(phi, Next):
        i = _var(d)
        here = Index(i, 0)
        lt = _le_n(e + 1, d)
        eq = And(_le_n(e, d), Not(_le_n(e + 1, d)))
        wrap = Iter("and", i, ZERO, N, Implies(_eqk(here), _direct(phi.arg, here, d + 1)))
        return Or(And(lt, _direct(phi.arg, e + 1, d)), And(eq, wrap))
    if isinstance(phi, Until):
        i, j = _var(d), _var(d + 1)
        hi, hj = Index(i, 0), Index(j, 0)
        a = lambda x, dd: _direct(phi.left, x, dd)  # noqa: E731
        b = lambda x, dd: _direct(phi.right, x, dd)  # noqa: E731
        ahead = Iter("or", i, e, N, And(
            Iter("and", j, e, hi, a(hj, d + 2), strict=True),
            b(hi, d + 1),
        ))
        around = Iter("or", i, ZERO, e, And(
            And(_loop(hi, d + 1), Iter("and", j, ZERO, hi, Implies(_loop(hj, d + 2), a(hj, d + 2)), strict=True)),
            b(hi, d + 1),
        ))
        wrapped = And(And(_loop(e, d), Iter("and", i, e, N, a(hi, d + 1))), around)
        return Or(ahead, wrapped)
    raise TypeError(f"not an LTL formula: {phi!r}")


def direct_translate(phi: Node) -> Node:
    """Unfolded translation with general iterations, plus the pfx axioms.

    ``F`` and ``G`` are first rewritten with ``U``.  The result is correct
    for lassos but not sequential; :func:`ltlschema.schema.classify_sps`
    reports the general iterations.
    """
    _check_names(phi)
    body = _direct(desugar_fg(phi), ZERO, 0)
    return And(And(body, s_leq_pfx()), ax_i_eq_k())


def direct_unfold(phi: Node, e: Index = ZERO) -> Node:
    """Just the unfolded part at index ``e``, without the pfx axioms."""
    return _direct(desugar_fg(phi), e, 0)


def _finite(phi: Node, e: Index, d: int) -> Node:
    if isinstance(phi, Top):
        return TRUE
    if isinstance(phi, Prop):
        return Atom(phi.name, e)
    if isinstance(phi, Not):
        return Not(_finite(phi.arg, e, d))
    if isinstance(phi, BINARY):
        return type(phi)(_finite(phi.left, e, d), _finite(phi.right, e, d))
    if isinstance(phi, Next):
        return _finite(phi.arg, e + 1, d)
    i = _var(d)
    hi = Index(i, 0)
    if isinstance(phi, Eventually):
        return Iter("or", i, e, N, _finite(phi.arg, hi, d + 1))
    if isinstance(phi, Always):
        return Iter("and", i, e, N, _finite(phi.arg, hi, d + 1))
    if isinstance(phi, Until):
        j = _var(d + 1)
        return Iter("or", i, e, N, And(
            _finite(phi.right, hi, d + 1),
            Iter("and", j, e, hi, _finite(phi.left, Index(j, 0), d + 2), strict=True),
        ))
    raise TypeError(f"not an LTL formula: {phi!r}")


def finite_translate(phi: Node) -> Node:
    """Naive unfolding over the finite trace ``0..n``, lightly simplified.

    ``X`` moves to the next index, ``F``/``G``/``U`` quantify over indices up
    to ``n``.  Valid LTL formulas need not translate to valid schemata (the
    loop is ignored).
    """
    return simplify(_finite(phi, ZERO, 0))


__all__ = [
    "CeilOptions", "SubformulaTable", "subformula_table", "desugar_fg",
    "s_leq_pfx", "ax_i_eq_k", "ceil_axioms", "ceil_translate", "invert_time",
    "ceil_size_report", "direct_translate", "direct_unfold", "finite_translate",
]
