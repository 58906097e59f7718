"""LTL formulas: syntax, concrete grammar, NNF and evaluation on lassos."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

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
    Parser,
    Top,
    walk,
    wrap,
)

__all__ = [
    "Top", "Prop", "Not", "And", "Or", "Implies", "Iff",
    "Next", "Until", "Eventually", "Always", "TRUE", "FALSE",
    "UPInterpretation", "parse_ltl", "render_ltl", "ltl_nnf", "is_nnf",
    "subformulas", "eval_ltl", "labeling", "props", "until_depth", "next_depth",
    "X", "size",
]


@dataclass(frozen=True, slots=True)
class Prop(Node):
    name: str


@dataclass(frozen=True, slots=True)
class Next(Node):
    arg: Node

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class Until(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Eventually(Node):
    arg: Node

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class Always(Node):
    arg: Node

    def children(self):
        return (self.arg,)


UNARY = (Not, Next, Eventually, Always)
TEMPORAL = (Next, Until, Eventually, Always)


def X(phi: Node, k: int = 1) -> Node:
    """``phi`` under ``k`` nested Next operators."""
    for _ in range(k):
        phi = Next(phi)
    return phi


# -- concrete syntax ---------------------------------------------------------

KEYWORDS = frozenset({"true", "false", "X", "F", "G", "U"})
_UNARY_KW = {"X": Next, "F": Eventually, "G": Always}


class _LtlParser(Parser):
    keywords = KEYWORDS
    continuations = ("U", *Parser.continuations)

    def parse_temporal(self):
        left = self.parse_unary()
        if self.at("U"):
            self.advance()
            return Until(left, self.parse_temporal())
        return left

    def parse_unary(self):
        tok = self.tok
        if self.at("!"):
            self.advance()
            return Not(self.parse_unary())
        if tok.kind == "ident" and tok.text in _UNARY_KW:
            self.advance()
            return _UNARY_KW[tok.text](self.parse_unary())
        if self.at("("):
            return self.parse_group()
        if self.at("true"):
            self.advance()
            return TRUE
        if self.at("false"):
            self.advance()
            return FALSE
        if tok.kind == "ident" and tok.text not in KEYWORDS:
            self.advance()
            return Prop(tok.text)
        self.error(
            f"unexpected {tok.text or 'end of input'!r}",
            ["identifier", "true", "false", "!", "X", "F", "G", "("],
        )


def parse_ltl(text: str) -> Node:
    """Parse the ASCII LTL grammar.

    >>> parse_ltl("p U q U r") == Until(Prop("p"), Until(Prop("q"), Prop("r")))
    True
    """
    return _LtlParser(text).parse()


_UNTIL_PREC = 5
_UNARY_PREC = 6
_ATOM_PREC = 7
_UNARY_SYM = {Next: "X ", Eventually: "F ", Always: "G "}


def _render(phi: Node) -> tuple[str, int]:
    if isinstance(phi, Top):
        return "true", _ATOM_PREC
    if isinstance(phi, Prop):
        return phi.name, _ATOM_PREC
    if isinstance(phi, Not):
        if isinstance(phi.arg, Top):
            return "false", _ATOM_PREC
        text, prec = _render(phi.arg)
        return "!" + wrap(text, prec, _UNARY_PREC), _UNARY_PREC
    if isinstance(phi, (Next, Eventually, Always)):
        text, prec = _render(phi.arg)
        return _UNARY_SYM[type(phi)] + wrap(text, prec, _UNARY_PREC), _UNARY_PREC
    if isinstance(phi, Until):
        return _render_binary(phi, "U", _UNTIL_PREC, right_assoc=True)
    if isinstance(phi, BINARY):
        kind = type(phi)
        return _render_binary(phi, SYMBOL[kind], PRECEDENCE[kind], kind in RIGHT_ASSOC)
    raise TypeError(f"not an LTL formula: {phi!r}")


def _render_binary(phi, symbol, prec, right_assoc):
    left, lp = _render(phi.left)
    right, rp = _render(phi.right)
    left = wrap(left, lp, prec, right_side=False, assoc_right=right_assoc)
    right = wrap(right, rp, prec, right_side=True, assoc_right=right_assoc)
    return f"{left} {symbol} {right}", prec


def render_ltl(phi: Node) -> str:
    """Minimally parenthesized rendering; ``parse_ltl`` inverts it exactly."""
    return _render(phi)[0]


# -- structural helpers --------------------------------------------------------

def subformulas(phi: Node) -> list[Node]:
    """Distinct subformulas in post-order (children before parents), ``phi`` last."""
    seen: dict[Node, None] = {}

    def visit(node):
        if node in seen:
            return
        for child in node.children():
            visit(child)
        seen.setdefault(node, None)

    visit(phi)
    return list(seen)


def props(phi: Node) -> set[str]:
    return {node.name for node in walk(phi) if isinstance(node, Prop)}


def size(phi: Node) -> int:
    return sum(1 for _ in walk(phi))


def until_depth(phi: Node) -> int:
    """Nesting depth of eventuality-carrying operators (U, F, G)."""
    inner = max((until_depth(c) for c in phi.children()), default=0)
    return inner + 1 if isinstance(phi, (Until, Eventually, Always)) else inner


def next_depth(phi: Node) -> int:
    inner = max((next_depth(c) for c in phi.children()), default=0)
    return inner + 1 if isinstance(phi, Next) else inner


# -- negation normal form ----------------------------------------------------

def ltl_nnf(phi: Node) -> Node:
    """Push negations down to propositions.

    Implications and biconditionals are eliminated. There is no release
    operator, so a negated Until is kept as ``Not(Until(...))`` over NNF
    operands; :func:`is_nnf` reports whether the result is fully in NNF.
    """
    return _nnf(phi, False)


def _nnf(phi: Node, neg: bool) -> Node:
    if isinstance(phi, Top):
        return FALSE if neg else TRUE
    if isinstance(phi, Prop):
        return Not(phi) if neg else phi
    if isinstance(phi, Not):
        return _nnf(phi.arg, not neg)
    if isinstance(phi, And):
        kind = Or if neg else And
        return kind(_nnf(phi.left, neg), _nnf(phi.right, neg))
    if isinstance(phi, Or):
        kind = And if neg else Or
        return kind(_nnf(phi.left, neg), _nnf(phi.right, neg))
    if isinstance(phi, Implies):
        if neg:
            return And(_nnf(phi.left, False), _nnf(phi.right, True))
        return Or(_nnf(phi.left, True), _nnf(phi.right, False))
    if isinstance(phi, Iff):
        a, b = phi.left, phi.right
        if neg:
            return Or(And(_nnf(a, False), _nnf(b, True)), And(_nnf(a, True), _nnf(b, False)))
        return Or(And(_nnf(a, False), _nnf(b, False)), And(_nnf(a, True), _nnf(b, True)))
    if isinstance(phi, Next):
        return Next(_nnf(phi.arg, neg))
    if isinstance(phi, Eventually):
        return Always(_nnf(phi.arg, True)) if neg else Eventually(_nnf(phi.arg, False))
    if isinstance(phi, Always):
        return Eventually(_nnf(phi.arg, True)) if neg else Always(_nnf(phi.arg, False))
    if isinstance(phi, Until):
        body = Until(_nnf(phi.left, False), _nnf(phi.right, False))
        return Not(body) if neg else body
    raise TypeError(f"not an LTL formula: {phi!r}")


def is_nnf(phi: Node) -> bool:
    """True iff negation only occurs on propositions or ``true``, and no ->/<-> remain."""
    for node in walk(phi):
        if isinstance(node, (Implies, Iff)):
            return False
        if isinstance(node, Not) and not isinstance(node.arg, (Prop, Top)):
            return False
    return True


# -- ultimately periodic interpretations ---------------------------------------

@dataclass(frozen=True)
class UPInterpretation:
    """A lasso: ``prefix`` states followed by ``loop`` repeated forever.

    Each state is a frozenset of the propositions true in it.
    """

    prefix: tuple
    loop: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(frozenset(s) for s in self.prefix))
        object.__setattr__(self, "loop", tuple(frozenset(s) for s in self.loop))
        if not self.loop:
            raise ValueError("a lasso needs a nonempty loop")

    @property
    def k(self) -> int:
        return len(self.prefix)

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.loop)

    @property
    def states(self) -> tuple:
        return self.prefix + self.loop

    def position(self, t: int) -> int:
        """Index into :attr:`states` of the state at time ``t``."""
        if t < self.k + self.l:
            return t
        return self.k + (t - self.k) % self.l

    def state(self, t: int) -> frozenset:
        return self.states[self.position(t)]

    def variables(self) -> set[str]:
        return set().union(*self.states)

    def __str__(self):
        from .interp import render_up  # local: interp imports this module

        return render_up(self)


def _succ_mask(m: int, k: int, last: int) -> int:
    # bit j of the result is bit succ(j) of m, succ(last) = k
    return (m >> 1) | (((m >> k) & 1) << last)


def _lasso_masks(sigma: UPInterpretation, phi: Node, memo: dict) -> int:
    # memo is keyed by node identity: hashing deep frozen trees is the slow part
    k, n_pos = sigma.k, sigma.k + sigma.l
    last = n_pos - 1
    full = (1 << n_pos) - 1
    states = sigma.states

    def nxt(m):
        return _succ_mask(m, k, last)

    def fix(step, z):
        while True:
            z2 = step(z)
            if z2 == z:
                return z
            z = z2

    def ev(node):
        key = id(node)
        if key in memo:
            return memo[key][1]
        if isinstance(node, Top):
            value = full
        elif isinstance(node, Prop):
            value = sum(1 << j for j, s in enumerate(states) if node.name in s)
        elif isinstance(node, Not):
            value = full & ~ev(node.arg)
        elif isinstance(node, And):
            value = ev(node.left) & ev(node.right)
        elif isinstance(node, Or):
            value = ev(node.left) | ev(node.right)
        elif isinstance(node, Implies):
            value = (full & ~ev(node.left)) | ev(node.right)
        elif isinstance(node, Iff):
            value = full & ~(ev(node.left) ^ ev(node.right))
        elif isinstance(node, Next):
            value = nxt(ev(node.arg))
        elif isinstance(node, Until):
            a, b = ev(node.left), ev(node.right)
            value = fix(lambda z: b | (a & nxt(z)), 0)
        elif isinstance(node, Eventually):
            a = ev(node.arg)
            value = fix(lambda z: a | nxt(z), 0)
        elif isinstance(node, Always):
            a = ev(node.arg)
            value = fix(lambda z: a & nxt(z), full)
        else:
            raise TypeError(f"not an LTL formula: {node!r}")
        memo[key] = (node, value)  # keep node alive so its id stays unique
        return value

    return ev(phi)


def labeling(sigma: UPInterpretation, phi: Node) -> dict[Node, int]:
    """Truth of every subformula over one lasso unrolling.

    The value for a subformula is a bitmask over positions ``0 .. k+l-1``.
    Until/Eventually are least fixpoints and Always a greatest fixpoint of
    their one-step unfoldings along the lasso successor relation.
    """
    memo: dict = {}
    _lasso_masks(sigma, phi, memo)
    return {node: value for node, value in memo.values()}


def eval_ltl(sigma: UPInterpretation, t: int, phi: Node) -> bool:
    """``sigma, t |= phi``."""
    if t < 0:
        raise ValueError("time must be a natural number")
    return bool((_lasso_masks(sigma, phi, {}) >> sigma.position(t)) & 1)


def conjunction(items: Iterable[Node]) -> Node:
    items = list(items)
    return reduce(And, items) if items else TRUE
