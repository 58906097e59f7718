"""Bit-parallel evaluation over many interpretations at once.

Each Python int is used as a bit vector with one bit per interpretation.
A propositional formula then evaluates to a single mask, and an LTL formula
over lassos of a fixed shape ``(k, l)`` to one mask per position.  This is
what makes the exhaustive sweeps in the test suite and the bounded LTL
oracle fast enough to be run often.
"""

from __future__ import annotations

from itertools import product

from .ltl import (
    Always,
    Eventually,
    Next,
    Prop,
    UPInterpretation,
    Until,
    subformulas,
)
from .schema import PropInterpretation, Var
from .syntax import And, Iff, Implies, Not, Or, Top


def bit_pattern(b: int, width: int) -> int:
    """Mask whose bit ``x`` (``x < width``) is bit ``b`` of ``x``; ``width`` a power of two."""
    half = 1 << b
    if 2 * half > width:
        return ((1 << width) - 1) & ~((1 << half) - 1) if half < width else 0
    m = ((1 << half) - 1) << half
    size = 2 * half
    while size < width:
        m |= m << size
        size *= 2
    return m


# -- propositional ---------------------------------------------------------------

def assignment_columns(atoms) -> tuple[dict, int]:
    """Columns enumerating every assignment of ``atoms``.

    Assignment number ``x`` makes the j-th atom (in the given order) true iff
    bit ``j`` of ``x`` is set.
    """
    atoms = list(atoms)
    width = 1 << len(atoms)
    return {a: bit_pattern(j, width) for j, a in enumerate(atoms)}, width


def assignment(atoms, x: int) -> PropInterpretation:
    atoms = list(atoms)
    return PropInterpretation(frozenset(a for j, a in enumerate(atoms) if (x >> j) & 1))


def interpretation_columns(interps, atoms) -> tuple[dict, int]:
    """Columns for an explicit list of interpretations (bit ``x`` = ``interps[x]``)."""
    cols = {a: 0 for a in atoms}
    for x, sigma in enumerate(interps):
        for a in sigma.true:
            if a in cols:
                cols[a] |= 1 << x
    return cols, len(interps)


def eval_prop_batch(f, columns: dict, width: int) -> int:
    """Mask of the interpretations (columns) satisfying the ground formula ``f``.

    Atoms missing from ``columns`` are false everywhere.
    """
    full = (1 << width) - 1
    memo: dict[int, int] = {}

    def ev(node):
        key = id(node)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            value = columns.get((node.prop, node.index), 0)
        elif isinstance(node, Top):
            value = full
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
        else:
            raise TypeError(f"not a ground formula: {node!r}")
        memo[key] = value
        return value

    return ev(f)


# -- LTL over lassos -------------------------------------------------------------

def lasso_columns(variables, k: int, l: int) -> tuple[dict, int]:
    """Per-position columns enumerating every lasso of shape ``(k, l)``.

    Lasso number ``x`` has its states in lexicographic order of
    :func:`ltlschema.oracle.enumerate_up`: position 0 is the most significant
    digit, and within a state the first variable is the most significant bit.
    """
    variables = sorted(variables)
    v, m = len(variables), k + l
    width = 1 << (v * m)
    cols = {}
    for j, name in enumerate(variables):
        cols[name] = [bit_pattern((m - 1 - t) * v + (v - 1 - j), width) for t in range(m)]
    return cols, width


def decode_lasso(variables, k: int, l: int, x: int) -> UPInterpretation:
    variables = sorted(variables)
    v, m = len(variables), k + l
    states = []
    for t in range(m):
        digit = (x >> ((m - 1 - t) * v)) & ((1 << v) - 1)
        states.append({name for j, name in enumerate(variables) if (digit >> (v - 1 - j)) & 1})
    return UPInterpretation(states[:k], states[k:])


def lasso_labeling(phi, columns: dict, k: int, l: int, width: int) -> dict:
    """Per-position masks for every subformula, over all lassos in ``columns``.

    ``columns[p][t]`` holds the lassos where ``p`` is true at position ``t``;
    the successor of the last position is ``k``.
    """
    m = k + l
    full = (1 << width) - 1
    zero = [0] * m
    succ = list(range(1, m)) + [k]
    table: dict = {}

    def fix(step, start):
        z = [start] * m
        while True:
            z2 = step(z)
            if z2 == z:
                return z
            z = z2

    for node in subformulas(phi):
        if isinstance(node, Top):
            value = [full] * m
        elif isinstance(node, Prop):
            value = list(columns.get(node.name, zero))
        elif isinstance(node, Not):
            value = [full & ~a for a in table[node.arg]]
        elif isinstance(node, And):
            value = [a & b for a, b in zip(table[node.left], table[node.right])]
        elif isinstance(node, Or):
            value = [a | b for a, b in zip(table[node.left], table[node.right])]
        elif isinstance(node, Implies):
            value = [(full & ~a) | b for a, b in zip(table[node.left], table[node.right])]
        elif isinstance(node, Iff):
            value = [full & ~(a ^ b) for a, b in zip(table[node.left], table[node.right])]
        elif isinstance(node, Next):
            a = table[node.arg]
            value = [a[succ[t]] for t in range(m)]
        elif isinstance(node, Until):
            a, b = table[node.left], table[node.right]
            value = fix(lambda z: [b[t] | (a[t] & z[succ[t]]) for t in range(m)], 0)
        elif isinstance(node, Eventually):
            a = table[node.arg]
            value = fix(lambda z: [a[t] | z[succ[t]] for t in range(m)], 0)
        elif isinstance(node, Always):
            a = table[node.arg]
            value = fix(lambda z: [a[t] & z[succ[t]] for t in range(m)], full)
        else:
            raise TypeError(f"not an LTL formula: {node!r}")
        table[node] = value
    return table


def lasso_shapes(kl_max: int):
    """``(k, l)`` pairs with ``k + l <= kl_max``, ``l >= 1``: k ascending, then l."""
    for k in range(kl_max):
        for l in range(1, kl_max - k + 1):
            yield k, l


def models_by_shape(phi, variables, k: int, l: int, t: int = 0) -> int:
    """Mask of the lassos of shape ``(k, l)`` satisfying ``phi`` at time ``t``."""
    cols, width = lasso_columns(variables, k, l)
    pos = t if t < k + l else k + (t - k) % l
    return lasso_labeling(phi, cols, k, l, width)[phi][pos]


def explicit_lassos(variables, k: int, l: int):
    """The lassos of one shape as objects, in the same order as the masks."""
    variables = sorted(variables)
    states = [frozenset(v for v, bit in zip(variables, bits) if bit)
              for bits in product([False, True], repeat=len(variables))]
    for seq in product(states, repeat=k + l):
        yield UPInterpretation(seq[:k], seq[k:])


__all__ = [
    "bit_pattern", "assignment_columns", "assignment", "interpretation_columns",
    "eval_prop_batch", "lasso_columns", "decode_lasso", "lasso_labeling",
    "lasso_shapes", "models_by_shape", "explicit_lassos",
]
