"""Propositional schemata: syntax, instances and propositional evaluation.

A schema is a propositional formula whose atoms carry arithmetic indices
over a single parameter ``n``, with iterated conjunctions and disjunctions
ranging over ``i = 0 .. n-1``.  Instantiating ``n`` with a natural number
yields an ordinary propositional formula over indexed variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .syntax import (
    BINARY,
    FALSE,
    PRECEDENCE,
    RIGHT_ASSOC,
    SYMBOL,
    TRUE,
    And,
    Iff,
    Implies,
    Node,
    Not,
    Or,
    ParseError,
    Parser,
    Top,
    conj,
    disj,
    position,
    walk,
    wrap,
)

PARAM = "n"


@dataclass(frozen=True, slots=True)
class Index:
    """Linear index ``base + offset``; ``base`` is None, ``"n"`` or a bound variable."""

    base: str | None = None
    offset: int = 0

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("index offsets must be natural numbers")

    def __add__(self, k: int) -> "Index":
        return Index(self.base, self.offset + k)

    @property
    def is_ground(self) -> bool:
        return self.base is None

    def __str__(self):
        if self.base is None:
            return str(self.offset)
        return f"{self.base}+{self.offset}" if self.offset else self.base


def idx(spec) -> Index:
    """Coerce an int, an Index or a string such as ``"n"``, ``"i+1"``, ``"3"``."""
    if isinstance(spec, Index):
        return spec
    if isinstance(spec, int):
        return Index(None, spec)
    base, offset = None, 0
    for part in spec.replace(" ", "").split("+"):
        if part.isdigit():
            offset += int(part)
        elif part.isidentifier() and base is None:
            base = part
        else:
            raise ValueError(f"bad index {spec!r}")
    return Index(base, offset)


N = Index(PARAM, 0)


def eval_arith(e: Index, n_value: int, bound_value=None) -> int:
    """Value of ``e`` with ``n = n_value``.

    ``bound_value`` is the value of the bound variable, or a mapping from
    variable names to values when several are in scope.
    """
    if e.base is None:
        return e.offset
    if e.base == PARAM:
        return n_value + e.offset
    if isinstance(bound_value, dict):
        if e.base not in bound_value:
            raise KeyError(f"no value for index variable {e.base!r}")
        return bound_value[e.base] + e.offset
    if bound_value is None:
        raise KeyError(f"no value for index variable {e.base!r}")
    return bound_value + e.offset


# -- nodes -------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Atom(Node):
    """Indexed proposition ``prop[index]`` inside a schema."""

    prop: str
    index: Index


@dataclass(frozen=True, slots=True)
class Var(Node):
    """Ground indexed proposition of a propositional instance."""

    prop: str
    index: int


@dataclass(frozen=True, slots=True)
class BigAnd(Node):
    """Conjunction of ``body`` for ``var = 0 .. n-1``."""

    var: str
    body: Node

    def children(self):
        return (self.body,)


@dataclass(frozen=True, slots=True)
class BigOr(Node):
    var: str
    body: Node

    def children(self):
        return (self.body,)


@dataclass(frozen=True, slots=True)
class BigAndIncl(Node):
    """Conjunction of ``body`` for ``var = 0 .. n``."""

    var: str
    body: Node

    def children(self):
        return (self.body,)


@dataclass(frozen=True, slots=True)
class Iter(Node):
    """General iteration over ``lo .. hi`` (``hi - 1`` when ``strict``).

    Only needed for translations whose output leaves the sequential
    fragment; bounds may mention ``n`` and enclosing index variables.
    """

    kind: str  # "and" | "or"
    var: str
    lo: Index
    hi: Index
    body: Node
    strict: bool = False

    def children(self):
        return (self.body,)


ITERATIONS = (BigAnd, BigOr, BigAndIncl, Iter)


def big(kind: str, var: str, lo, hi, body: Node, strict: bool = False) -> Iter:
    return Iter(kind, var, idx(lo), idx(hi), body, strict)


# -- interpretations ------------------------------------------------------------

@dataclass(frozen=True)
class PropInterpretation:
    """Set of ``(prop, index)`` pairs that are true; everything else is false."""

    true: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "true", frozenset((p, int(i)) for p, i in self.true))

    def __contains__(self, pair) -> bool:
        return pair in self.true

    def __iter__(self):
        return iter(sorted(self.true))

    def __len__(self):
        return len(self.true)

    def restrict(self, keep) -> "PropInterpretation":
        return PropInterpretation(frozenset(a for a in self.true if keep(a)))


@dataclass(frozen=True)
class SchemaInterpretation:
    base: PropInterpretation = field(default_factory=PropInterpretation)
    n: int = 0

    def __post_init__(self):
        if not isinstance(self.base, PropInterpretation):
            object.__setattr__(self, "base", PropInterpretation(frozenset(self.base)))
        if self.n < 0:
            raise ValueError("n must be a natural number")

    def __str__(self):
        from .interp import render_schema_interp

        return render_schema_interp(self)


# -- concrete syntax -----------------------------------------------------------

KEYWORDS = frozenset({"true", "false", "bigand", "bigor", "bigand_incl"})
_FRAGMENT = "beyond SPS/regular fragment"


class _SchemaParser(Parser):
    keywords = KEYWORDS

    def __init__(self, text):
        super().__init__(text)
        self.scope: list[str] = []

    def parse_unary(self):
        tok = self.tok
        if self.at("!"):
            self.advance()
            return Not(self.parse_unary())
        if self.at("("):
            return self.parse_group()
        if self.at("true"):
            self.advance()
            return TRUE
        if self.at("false"):
            self.advance()
            return FALSE
        if tok.kind == "ident" and tok.text in ("bigand", "bigor", "bigand_incl"):
            return self.parse_iteration()
        if tok.kind == "ident":
            name = self.identifier()
            self.expect("[")
            index = self.parse_index()
            self.expect("]")
            return Atom(name, index)
        self.error(
            f"unexpected {tok.text or 'end of input'!r}",
            ["identifier", "true", "false", "!", "(", "bigand", "bigor", "bigand_incl"],
        )

    def parse_iteration(self):
        head = self.advance().text
        var_tok = self.tok
        var = self.identifier()
        if var == PARAM:
            self.error("the parameter n cannot be used as an index variable", tok=var_tok)
        general = None
        if self.at("="):
            if head == "bigand_incl":
                self.error("bigand_incl ranges over 0 .. n only", ["."])
            self.advance()
            lo = self.parse_index()
            if self.at(".."):
                strict = False
            elif self.at("..<"):
                strict = True
            else:
                self.error(f"unexpected {self.tok.text!r}", ["..", "..<"])
            self.advance()
            hi = self.parse_index()
            general = (lo, hi, strict)
        self.expect(".")
        self.scope.append(var)
        try:
            # "(s)" or a single unary-level operand such as "p[i]"
            body = self.parse_unary()
        finally:
            self.scope.pop()
        if general is not None:
            lo, hi, strict = general
            return Iter("and" if head == "bigand" else "or", var, lo, hi, body, strict)
        return {"bigand": BigAnd, "bigor": BigOr, "bigand_incl": BigAndIncl}[head](var, body)

    def parse_index(self) -> Index:
        base = None
        offset = 0
        while True:
            tok = self.tok
            if tok.kind == "int":
                self.advance()
                nxt = self.tok
                if nxt.kind == "ident" or (nxt.kind == "op" and nxt.text in ("*", "(")):
                    self.error(f"index term {tok.text}{nxt.text} is {_FRAGMENT}", tok=tok)
                offset += int(tok.text)
            elif tok.kind == "ident" and tok.text not in KEYWORDS:
                self.advance()
                if tok.text != PARAM and tok.text not in self.scope:
                    self.error(f"unbound index variable {tok.text!r}", tok=tok)
                if base is not None:
                    self.error(f"index {base}+{tok.text} is {_FRAGMENT}", tok=tok)
                base = tok.text
            else:
                self.error(f"unexpected {tok.text or 'end of input'!r} in index", ["integer", "n", "index variable"])
            if self.at("*"):
                self.error(f"multiplication in indices is {_FRAGMENT}")
            if self.at("-"):
                self.error("subtraction in indices is not supported (indices are natural numbers)")
            if not self.at("+"):
                return Index(base, offset)
            self.advance()


def parse_schema(text: str) -> Node:
    """Parse a schema.

    >>> render_schema(parse_schema("p[0] & bigand i . (p[i] -> p[i+1]) & !p[n]"))
    'p[0] & bigand i . (p[i] -> p[i+1]) & !p[n]'
    """
    return _SchemaParser(text).parse()


_UNARY_PREC = 6
_ATOM_PREC = 7
_HEAD = {BigAnd: "bigand", BigOr: "bigor", BigAndIncl: "bigand_incl"}


def _render(s: Node) -> tuple[str, int]:
    if isinstance(s, Top):
        return "true", _ATOM_PREC
    if isinstance(s, Atom):
        return f"{s.prop}[{s.index}]", _ATOM_PREC
    if isinstance(s, Var):
        return f"{s.prop}[{s.index}]", _ATOM_PREC
    if isinstance(s, Not):
        if isinstance(s.arg, Top):
            return "false", _ATOM_PREC
        text, prec = _render(s.arg)
        return "!" + wrap(text, prec, _UNARY_PREC), _UNARY_PREC
    if isinstance(s, (BigAnd, BigOr, BigAndIncl)):
        return f"{_HEAD[type(s)]} {s.var} . ({_render(s.body)[0]})", _ATOM_PREC
    if isinstance(s, Iter):
        head = "bigand" if s.kind == "and" else "bigor"
        dots = "..<" if s.strict else ".."
        return f"{head} {s.var} = {s.lo} {dots} {s.hi} . ({_render(s.body)[0]})", _ATOM_PREC
    if isinstance(s, BINARY):
        kind = type(s)
        prec = PRECEDENCE[kind]
        right_assoc = kind in RIGHT_ASSOC
        left, lp = _render(s.left)
        right, rp = _render(s.right)
        left = wrap(left, lp, prec, right_side=False, assoc_right=right_assoc)
        right = wrap(right, rp, prec, right_side=True, assoc_right=right_assoc)
        return f"{left} {SYMBOL[kind]} {right}", prec
    raise TypeError(f"not a schema: {s!r}")


def render_schema(s: Node) -> str:
    return _render(s)[0]


# -- classification ------------------------------------------------------------

class SpsVerdict(NamedTuple):
    is_sps: bool
    violations: list  # (location, rule)


def classify_sps(s: Node) -> SpsVerdict:
    """Check the sequential fragment: no nested iterations, outer indices
    ``k`` / ``n+k``, indices ``i+k`` inside an iteration over ``i``."""
    violations = []

    def visit(node, binder):
        if isinstance(node, Iter):
            violations.append((render_schema(node), "non-sequential-iteration"))
        if isinstance(node, ITERATIONS):
            if binder is not None:
                violations.append((render_schema(node), "nested-iteration"))
            visit(node.body, node.var if binder is None else binder)
            return
        if isinstance(node, (Atom, Var)):
            index = node.index if isinstance(node, Atom) else Index(None, node.index)
            if binder is None and index.base not in (None, PARAM):
                violations.append((render_schema(node), "bad-outer-index"))
            if binder is not None and index.base != binder:
                violations.append((render_schema(node), "bad-inner-index"))
            return
        for child in node.children():
            visit(child, binder)

    visit(s, None)
    return SpsVerdict(not violations, violations)


# -- instances -----------------------------------------------------------------

def instantiate(s: Node, m: int) -> Node:
    """The propositional instance of ``s`` for ``n = m``.

    Iterations unfold into left-nested conjunctions (disjunctions); an empty
    conjunction is ``true`` and an empty disjunction ``false``.
    """
    if m < 0:
        raise ValueError("the parameter value must be a natural number")
    return _inst(s, m, {})


def _inst(s, m, env):
    if isinstance(s, Atom):
        return Var(s.prop, eval_arith(s.index, m, env))
    if isinstance(s, (Top, Var)):
        return s
    if isinstance(s, Not):
        return Not(_inst(s.arg, m, env))
    if isinstance(s, BINARY):
        return type(s)(_inst(s.left, m, env), _inst(s.right, m, env))
    if isinstance(s, BigAnd):
        return conj(_inst(s.body, m, {**env, s.var: i}) for i in range(m))
    if isinstance(s, BigOr):
        return disj(_inst(s.body, m, {**env, s.var: i}) for i in range(m))
    if isinstance(s, BigAndIncl):
        # the shortcut for bigand i . (s) & s[n/i], kept node-for-node
        last = _inst(s.body, m, {**env, s.var: m})
        head = conj(_inst(s.body, m, {**env, s.var: i}) for i in range(m))
        return And(head, last)
    if isinstance(s, Iter):
        lo = eval_arith(s.lo, m, env)
        hi = eval_arith(s.hi, m, env) - (1 if s.strict else 0)
        parts = (_inst(s.body, m, {**env, s.var: i}) for i in range(lo, hi + 1))
        return conj(parts) if s.kind == "and" else disj(parts)
    raise TypeError(f"not a schema: {s!r}")


def substitute(s: Node, var: str, e: Index) -> Node:
    """``s[e/var]``."""
    if isinstance(s, Atom):
        if s.index.base == var:
            return Atom(s.prop, Index(e.base, e.offset + s.index.offset))
        return s
    if isinstance(s, (Top, Var)):
        return s
    if isinstance(s, Not):
        return Not(substitute(s.arg, var, e))
    if isinstance(s, BINARY):
        return type(s)(substitute(s.left, var, e), substitute(s.right, var, e))
    if isinstance(s, (BigAnd, BigOr, BigAndIncl)):
        if s.var == var:
            return s
        return type(s)(s.var, substitute(s.body, var, e))
    if isinstance(s, Iter):
        lo = Index(e.base, e.offset + s.lo.offset) if s.lo.base == var else s.lo
        hi = Index(e.base, e.offset + s.hi.offset) if s.hi.base == var else s.hi
        body = s.body if s.var == var else substitute(s.body, var, e)
        return Iter(s.kind, s.var, lo, hi, body, s.strict)
    raise TypeError(f"not a schema: {s!r}")


def expand_incl(s: Node) -> Node:
    """Replace every ``bigand_incl i . (b)`` by ``bigand i . (b) & b[n/i]``."""
    if isinstance(s, BigAndIncl):
        body = expand_incl(s.body)
        return And(BigAnd(s.var, body), substitute(body, s.var, N))
    if isinstance(s, (Top, Atom, Var)):
        return s
    if isinstance(s, Not):
        return Not(expand_incl(s.arg))
    if isinstance(s, BINARY):
        return type(s)(expand_incl(s.left), expand_incl(s.right))
    if isinstance(s, (BigAnd, BigOr)):
        return type(s)(s.var, expand_incl(s.body))
    if isinstance(s, Iter):
        return Iter(s.kind, s.var, s.lo, s.hi, expand_incl(s.body), s.strict)
    raise TypeError(f"not a schema: {s!r}")


def eval_prop(sigma: PropInterpretation, f: Node) -> bool:
    if isinstance(f, Var):
        return (f.prop, f.index) in sigma.true
    if isinstance(f, Top):
        return True
    if isinstance(f, Not):
        return not eval_prop(sigma, f.arg)
    if isinstance(f, And):
        return eval_prop(sigma, f.left) and eval_prop(sigma, f.right)
    if isinstance(f, Or):
        return eval_prop(sigma, f.left) or eval_prop(sigma, f.right)
    if isinstance(f, Implies):
        return (not eval_prop(sigma, f.left)) or eval_prop(sigma, f.right)
    if isinstance(f, Iff):
        return eval_prop(sigma, f.left) == eval_prop(sigma, f.right)
    raise TypeError(f"not a ground formula: {f!r}")


def eval_schema(interp: SchemaInterpretation, s: Node) -> bool:
    """``interp |= s``, through the instance for ``interp.n``."""
    return eval_prop(interp.base, instantiate(s, interp.n))


def atoms(f: Node) -> set[tuple[str, int]]:
    """``(prop, index)`` pairs occurring in a ground formula."""
    return {(v.prop, v.index) for v in walk(f) if isinstance(v, Var)}


def schema_props(s: Node) -> set[str]:
    return {a.prop for a in walk(s) if isinstance(a, (Atom, Var))}


# -- sizes ---------------------------------------------------------------------

def _indices(s: Node) -> Iterable[Index]:
    for node in walk(s):
        if isinstance(node, Atom):
            yield node.index
        elif isinstance(node, Var):
            yield Index(None, node.index)
        elif isinstance(node, Iter):
            yield node.lo
            yield node.hi


def size_metrics(s: Node) -> dict:
    """Symbol count and the cost of the integer constants in two encodings.

    ``sym_size`` counts nodes, bound variables of iterations and the symbols
    of every index term (1 for ``n``/a variable, 1 for a constant).  The unary
    and binary sizes add, for each constant ``c``, ``c`` resp. its bit length.
    """
    sym = 0
    for node in walk(s):
        sym += 1
        if isinstance(node, ITERATIONS):
            sym += 1
    max_int = 0
    unary = binary = 0
    for e in _indices(s):
        if e.base is not None:
            sym += 1
        if e.base is None or e.offset:
            sym += 1
        max_int = max(max_int, e.offset)
        unary += e.offset
        binary += e.offset.bit_length()
    return {
        "sym_size": sym,
        "max_int": max_int,
        "unary_size": sym + unary,
        "binary_size": sym + binary,
    }


# -- light simplification ---------------------------------------------------------

def _free_bases(s: Node, bound=()) -> set:
    out = set()
    for node in walk(s):
        if isinstance(node, Atom) and node.index.base not in (None, PARAM):
            out.add(node.index.base)
        elif isinstance(node, Iter):
            out |= {e.base for e in (node.lo, node.hi) if e.base not in (None, PARAM)}
    return out


def simplify(s: Node) -> Node:
    """Fold ``true``/``false`` and turn general iterations with standard
    bounds back into ``bigand``/``bigor``/``bigand_incl``."""
    if isinstance(s, (Top, Atom, Var)):
        return s
    if isinstance(s, Not):
        a = simplify(s.arg)
        if isinstance(a, Not) and isinstance(a.arg, Top):
            return TRUE
        return Not(a)
    if isinstance(s, BINARY):
        a, b = simplify(s.left), simplify(s.right)
        t_a, t_b = a == TRUE, b == TRUE
        f_a, f_b = a == FALSE, b == FALSE
        if isinstance(s, And):
            if f_a or f_b:
                return FALSE
            return b if t_a else a if t_b else And(a, b)
        if isinstance(s, Or):
            if t_a or t_b:
                return TRUE
            return b if f_a else a if f_b else Or(a, b)
        if isinstance(s, Implies):
            if f_a or t_b:
                return TRUE
            if t_a:
                return b
            return Implies(a, b)
        if t_a:
            return b
        if t_b:
            return a
        return Iff(a, b)
    if isinstance(s, (BigAnd, BigOr, BigAndIncl)):
        body = simplify(s.body)
        if isinstance(s, (BigAnd, BigAndIncl)) and body == TRUE:
            return TRUE
        if isinstance(s, BigOr) and body == FALSE:
            return FALSE
        return type(s)(s.var, body)
    if isinstance(s, Iter):
        body = simplify(s.body)
        if s.kind == "and" and body == TRUE:
            return TRUE
        if s.kind == "or" and body == FALSE:
            return FALSE
        others = _free_bases(body) - {s.var}
        if s.lo == Index(None, 0) and not others and not _has_iteration(body):
            if s.hi == N and s.strict:
                return (BigAnd if s.kind == "and" else BigOr)(s.var, body)
            if s.hi == N and not s.strict and s.kind == "and":
                return BigAndIncl(s.var, body)
        return Iter(s.kind, s.var, s.lo, s.hi, body, s.strict)
    raise TypeError(f"not a schema: {s!r}")


def _has_iteration(s: Node) -> bool:
    return any(isinstance(node, ITERATIONS) for node in walk(s))


__all__ = [
    "Index", "N", "PARAM", "idx", "eval_arith", "Atom", "Var", "BigAnd", "BigOr",
    "BigAndIncl", "Iter", "big", "PropInterpretation", "SchemaInterpretation",
    "parse_schema", "render_schema", "classify_sps", "SpsVerdict", "instantiate",
    "substitute", "expand_incl", "eval_prop", "eval_schema", "atoms",
    "schema_props", "size_metrics", "simplify", "ParseError", "position",
]
