"""Boolean connectives shared by LTL formulas and schemata, plus the lexer.

Both concrete grammars use the same boolean layer, so the node classes and
the tokenizer live here. Language-specific leaves and operators are defined
in :mod:`ltlschema.ltl` and :mod:`ltlschema.schema`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple


class Node:
    """Base class of every AST node (LTL, schema and ground formulas)."""

    __slots__ = ()

    def children(self) -> tuple:
        return ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __rshift__(self, other):
        return Implies(self, other)


@dataclass(frozen=True, slots=True)
class Top(Node):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, slots=True)
class Not(Node):
    arg: Node

    def children(self):
        return (self.arg,)


@dataclass(frozen=True, slots=True)
class And(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Or(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Implies(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True, slots=True)
class Iff(Node):
    left: Node
    right: Node

    def children(self):
        return (self.left, self.right)


TRUE = Top()
FALSE = Not(TRUE)

BINARY = (And, Or, Implies, Iff)
BOOLEAN = (Top, Not, And, Or, Implies, Iff)

# binding strength of binary connectives, tightest first in the grammar:
# unary > U > & > | > -> > <->
PRECEDENCE = {Iff: 1, Implies: 2, Or: 3, And: 4}
SYMBOL = {And: "&", Or: "|", Implies: "->", Iff: "<->"}
RIGHT_ASSOC = {Implies}


def conj(items, empty: Node = TRUE) -> Node:
    """Left-nested conjunction of ``items``; ``empty`` when there are none."""
    result = None
    for item in items:
        result = item if result is None else And(result, item)
    return empty if result is None else result


def disj(items, empty: Node = FALSE) -> Node:
    result = None
    for item in items:
        result = item if result is None else Or(result, item)
    return empty if result is None else result


def flatten(node: Node, kind=And) -> list[Node]:
    """Operands of a maximal ``kind`` chain, left to right."""
    if isinstance(node, kind):
        return flatten(node.left, kind) + flatten(node.right, kind)
    return [node]


def walk(node: Node) -> Iterator[Node]:
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(current.children()))


def node_count(node: Node) -> int:
    return sum(1 for _ in walk(node))


class ParseError(ValueError):
    """Syntax error with a 1-based line/column and the expected tokens."""

    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{detail}")


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<op><->|->|\.\.<|\.\.|[!&|()\[\]+.=*\-])
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            line, col = position(text, pos)
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


def position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column


class Parser:
    """Recursive-descent core for the shared boolean layer.

    Subclasses implement :meth:`parse_unary` (and may override
    :meth:`parse_temporal` to slot a binary temporal operator between the
    unary level and ``&``).
    """

    keywords: frozenset = frozenset()
    # what may follow a complete operand, for error messages
    continuations: tuple = ("&", "|", "->", "<->")

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.tok
        return tok.kind in ("op", "ident") and tok.text == text

    def error(self, message: str, expected=(), tok: Token | None = None):
        tok = tok or self.tok
        line, col = position(self.text, tok.pos)
        raise ParseError(message, line, col, expected)

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            self.error(f"unexpected {found!r}", [text])
        return self.advance()

    def identifier(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.text in self.keywords:
            self.error(f"unexpected {tok.text or 'end of input'!r}", ["identifier"])
        self.advance()
        return tok.text

    # grammar
    def parse(self):
        node = self.parse_iff()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}", [*self.continuations, "end of input"])
        return node

    def parse_iff(self):
        node = self.parse_implies()
        while self.at("<->"):
            self.advance()
            node = Iff(node, self.parse_implies())
        return node

    def parse_implies(self):
        node = self.parse_or()
        if self.at("->"):
            self.advance()
            return Implies(node, self.parse_implies())
        return node

    def parse_or(self):
        node = self.parse_and()
        while self.at("|"):
            self.advance()
            node = Or(node, self.parse_and())
        return node

    def parse_and(self):
        node = self.parse_temporal()
        while self.at("&"):
            self.advance()
            node = And(node, self.parse_temporal())
        return node

    def parse_temporal(self):
        return self.parse_unary()

    def parse_unary(self):  # pragma: no cover - abstract
        raise NotImplementedError

    def parse_group(self):
        self.expect("(")
        node = self.parse_iff()
        self.expect(")")
        return node


def wrap(text: str, inner: int, outer: int, right_side: bool = False, assoc_right: bool = False) -> str:
    """Parenthesize ``text`` (of binding strength ``inner``) inside a context of strength ``outer``."""
    if inner > outer:
        return text
    if inner == outer and assoc_right == right_side:
        return text
    return f"({text})"
