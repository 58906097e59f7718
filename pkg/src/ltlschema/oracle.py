"""Bounded satisfiability oracles for both sides.

Schemata are checked instance by instance with a small CDCL solver over a
Tseitin encoding; LTL formulas by exhaustive lasso enumeration.  Neither
can certify unsatisfiability, so a negative answer is always reported as
"unsatisfiable up to the bound".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .batch import bit_pattern, decode_lasso, lasso_columns, lasso_labeling, lasso_shapes
from .ltl import UPInterpretation, eval_ltl, props
from .schema import PropInterpretation, SchemaInterpretation, Var, eval_prop, instantiate
from .syntax import And, Iff, Implies, Not, Or, Top

SAT = "SAT"
UNSAT = "UNSAT_UP_TO_BOUND"


@dataclass(frozen=True)
class BoundedVerdict:
    status: str
    bound: int
    witness: object = None  # SchemaInterpretation or UPInterpretation

    @property
    def sat(self) -> bool:
        return self.status == SAT


# -- CNF -------------------------------------------------------------------------

class Cnf:
    """Tseitin encoding of a ground formula.

    Literals are ints: ``2*v`` is variable ``v`` and ``2*v+1`` its negation.
    Constants are folded away, so the encoding may be trivially true
    (``root is True``) or false (``root is False``).
    """

    def __init__(self, f):
        self.atoms: dict[tuple, int] = {}
        self.nvars = 0
        self.clauses: list[list[int]] = []
        memo: dict[int, object] = {}
        self.root = self._encode(f, memo)
        if self.root is False:
            self.clauses.append([])
        elif self.root is not True:
            self.clauses.append([self.root])

    def _new(self) -> int:
        self.nvars += 1
        return 2 * self.nvars

    def _encode(self, node, memo):
        key = id(node)
        if key in memo:
            return memo[key]
        out = self._gate(node, memo)
        memo[key] = out
        return out

    def _gate(self, node, memo):
        if isinstance(node, Var):
            atom = (node.prop, node.index)
            if atom not in self.atoms:
                self.atoms[atom] = self._new()
            return self.atoms[atom]
        if isinstance(node, Top):
            return True
        if isinstance(node, Not):
            a = self._encode(node.arg, memo)
            return (not a) if isinstance(a, bool) else a ^ 1
        a = self._encode(node.left, memo)
        b = self._encode(node.right, memo)
        if isinstance(node, Implies):
            a = (not a) if isinstance(a, bool) else a ^ 1
            return self._or(a, b)
        if isinstance(node, Or):
            return self._or(a, b)
        if isinstance(node, And):
            return self._and(a, b)
        if isinstance(node, Iff):
            return self._iff(a, b)
        raise TypeError(f"not a ground formula: {node!r}")

    def _and(self, a, b):
        if a is False or b is False:
            return False
        if a is True:
            return b
        if b is True:
            return a
        if a == b:
            return a
        if a == b ^ 1:
            return False
        g = self._new()
        self.clauses += [[g ^ 1, a], [g ^ 1, b], [g, a ^ 1, b ^ 1]]
        return g

    def _or(self, a, b):
        na = (not a) if isinstance(a, bool) else a ^ 1
        nb = (not b) if isinstance(b, bool) else b ^ 1
        g = self._and(na, nb)
        return (not g) if isinstance(g, bool) else g ^ 1

    def _iff(self, a, b):
        if isinstance(a, bool) and isinstance(b, bool):
            return a == b
        if isinstance(a, bool):
            return b if a else b ^ 1
        if isinstance(b, bool):
            return a if b else a ^ 1
        if a == b:
            return True
        if a == b ^ 1:
            return False
        g = self._new()
        self.clauses += [
            [g ^ 1, a ^ 1, b], [g ^ 1, a, b ^ 1],
            [g, a, b], [g, a ^ 1, b ^ 1],
        ]
        return g


# -- solver ------------------------------------------------------------------------

class Solver:
    """CDCL with two watched literals and first-UIP learning.

    Decisions follow a fixed variable order, true first, and there are no
    restarts, so results are reproducible.  :meth:`models` is a separate
    plain DPLL enumeration (no learning) projected on chosen variables.
    """

    def __init__(self, nvars: int, clauses, order):
        self.nvars = nvars
        self.value = [-1] * (2 * nvars + 2)  # per literal: 1 true, 0 false, -1 unset
        self.level = [0] * (nvars + 1)
        self.reason: list = [None] * (nvars + 1)
        self.trail: list[int] = []
        self.limits: list[int] = []
        self.qhead = 0
        self.watches: list[list[int]] = [[] for _ in range(2 * nvars + 2)]
        self.clauses: list[list[int]] = []
        self.order = list(order)
        seen = set(self.order)
        self.order += [v for v in range(1, nvars + 1) if v not in seen]
        self.ok = True
        for c in clauses:
            self._add(list(dict.fromkeys(c)))

    # assignment
    def _assign(self, lit, reason):
        self.value[lit] = 1
        self.value[lit ^ 1] = 0
        v = lit >> 1
        self.level[v] = len(self.limits)
        self.reason[v] = reason
        self.trail.append(lit)

    def _add(self, c):
        if not self.ok:
            return
        if any(c[i] == c[j] ^ 1 for i in range(len(c)) for j in range(i)):
            return
        if not c:
            self.ok = False
            return
        if len(c) == 1:
            val = self.value[c[0]]
            if val == 0:
                self.ok = False
            elif val == -1:
                self._assign(c[0], None)
            return
        idx = len(self.clauses)
        self.clauses.append(c)
        self.watches[c[0]].append(idx)
        self.watches[c[1]].append(idx)

    def _propagate(self):
        value, watches, clauses = self.value, self.watches, self.clauses
        trail = self.trail
        while self.qhead < len(trail):
            false_lit = trail[self.qhead] ^ 1
            self.qhead += 1
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                if value[first] == 1:
                    ws[j] = ci
                    j += 1
                    continue
                for k in range(2, len(c)):
                    if value[c[k]] != 0:
                        c[1], c[k] = c[k], false_lit
                        watches[c[1]].append(ci)
                        break
                else:
                    ws[j] = ci
                    j += 1
                    if value[first] == 0:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.qhead = len(trail)
                        return ci
                    self._assign(first, ci)
            del ws[j:]
        return None

    def _backtrack(self, lvl):
        if len(self.limits) <= lvl:
            return
        limit = self.limits[lvl]
        value = self.value
        for lit in self.trail[limit:]:
            value[lit] = -1
            value[lit ^ 1] = -1
            self.reason[lit >> 1] = None
        del self.trail[limit:]
        del self.limits[lvl:]
        self.qhead = len(self.trail)

    def _decide(self, lit):
        self.limits.append(len(self.trail))
        self._assign(lit, None)

    def _analyze(self, confl):
        learnt = [0]
        seen = set()
        counter = 0
        p = None
        idx = len(self.trail) - 1
        cur = len(self.limits)
        while True:
            for q in self.clauses[confl]:
                if p is not None and q == p:
                    continue
                v = q >> 1
                if v in seen or self.level[v] == 0:
                    continue
                seen.add(v)
                if self.level[v] == cur:
                    counter += 1
                else:
                    learnt.append(q)
            while (self.trail[idx] >> 1) not in seen:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            counter -= 1
            seen.discard(p >> 1)
            if counter == 0:
                break
            confl = self.reason[p >> 1]
        learnt[0] = p ^ 1
        back = max((self.level[q >> 1] for q in learnt[1:]), default=0)
        if len(learnt) > 1:
            # put a literal of the backjump level in the second watch slot
            k = max(range(1, len(learnt)), key=lambda x: self.level[learnt[x] >> 1])
            learnt[1], learnt[k] = learnt[k], learnt[1]
        return learnt, back

    def solve(self) -> bool:
        if not self.ok:
            return False
        if self._propagate() is not None:
            self.ok = False
            return False
        pos = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                if not self.limits:
                    self.ok = False
                    return False
                learnt, back = self._analyze(confl)
                self._backtrack(back)
                if len(learnt) == 1:
                    self._assign(learnt[0], None)
                else:
                    idx = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[learnt[0]].append(idx)
                    self.watches[learnt[1]].append(idx)
                    self._assign(learnt[0], idx)
                pos = 0
                continue
            while pos < len(self.order) and self.value[2 * self.order[pos]] != -1:
                pos += 1
            if pos == len(self.order):
                return True
            self._decide(2 * self.order[pos])

    def true_vars(self) -> set[int]:
        return {v for v in range(1, self.nvars + 1) if self.value[2 * v] == 1}

    def models(self, projection) -> Iterator[set[int]]:
        """Distinct projections (sets of true projection variables) of all models.

        Depth-first over ``projection`` in order, true first; once every
        projection variable is set the rest is completed by the same search.
        """
        if not self.ok or self._propagate() is not None:
            return
        proj = list(projection)
        rest = [v for v in self.order if v not in set(proj)]
        yield from self._dfs(proj, 0, rest)

    def _dfs(self, proj, i, rest):
        while i < len(proj) and self.value[2 * proj[i]] != -1:
            i += 1
        if i == len(proj):
            if self._complete(rest, 0):
                yield {v for v in proj if self.value[2 * v] == 1}
            return
        v = proj[i]
        for lit in (2 * v, 2 * v + 1):
            lvl = len(self.limits)
            self._decide(lit)
            if self._propagate() is None:
                yield from self._dfs(proj, i + 1, rest)
            self._backtrack(lvl)

    def _complete(self, rest, i) -> bool:
        lvl = len(self.limits)
        while i < len(rest) and self.value[2 * rest[i]] != -1:
            i += 1
        if i == len(rest):
            return True
        v = rest[i]
        for lit in (2 * v, 2 * v + 1):
            self._decide(lit)
            if self._propagate() is None and self._complete(rest, i + 1):
                self._backtrack(lvl)
                return True
            self._backtrack(lvl)
        return False


def _solver(f):
    cnf = Cnf(f)
    order = [cnf.atoms[a] >> 1 for a in sorted(cnf.atoms)]
    return cnf, Solver(cnf.nvars, cnf.clauses, order)


# -- propositional oracle ------------------------------------------------------------

def prop_sat(f) -> PropInterpretation | None:
    """A model of the ground formula ``f`` (its true atoms), or None."""
    cnf, solver = _solver(f)
    if not solver.solve():
        return None
    true = solver.true_vars()
    model = PropInterpretation(frozenset(a for a, lit in cnf.atoms.items() if lit >> 1 in true))
    assert eval_prop(model, f), "solver returned a non-model"
    return model


def iter_models(f, projection=None) -> Iterator[PropInterpretation]:
    """Every model of ``f`` restricted to ``projection`` (default: all its atoms).

    Each projected assignment that extends to a model is reported once; atoms
    in ``projection`` that do not occur in ``f`` are left false.
    """
    cnf, solver = _solver(f)
    if projection is None:
        wanted = sorted(cnf.atoms)
    else:
        wanted = sorted(a for a in projection if a in cnf.atoms)
    proj = [cnf.atoms[a] >> 1 for a in wanted]
    back = {cnf.atoms[a] >> 1: a for a in wanted}
    for true in solver.models(proj):
        yield PropInterpretation(frozenset(back[v] for v in true))


def schema_sat_bounded(s, n_max: int = 8) -> BoundedVerdict:
    """First ``n <= n_max`` whose instance is satisfiable, with a model."""
    for n in range(n_max + 1):
        f = instantiate(s, n)
        model = prop_sat(f)
        if model is not None:
            witness = SchemaInterpretation(model, n)
            assert eval_prop(model, f)
            return BoundedVerdict(SAT, n_max, witness)
    return BoundedVerdict(UNSAT, n_max)


# -- LTL oracle ------------------------------------------------------------------------

def enumerate_up(variables, kl_max: int) -> Iterator[UPInterpretation]:
    """All lassos with ``k + l <= kl_max`` over ``variables``.

    Order: ``k`` ascending, then ``l``, then the state sequence
    lexicographically (a state is a tuple of booleans over the sorted
    variables, false before true).
    """
    if kl_max < 1:
        raise ValueError("kl_max must be at least 1")
    names = sorted(variables)
    states = [frozenset(v for v, bit in zip(names, bits) if bit)
              for bits in product([False, True], repeat=len(names))]
    for k, l in lasso_shapes(kl_max):
        for seq in product(states, repeat=k + l):
            yield UPInterpretation(seq[:k], seq[k:])


_CHUNK_BITS = 16


def ltl_sat_bounded(phi, kl_max: int = 6, variables=None) -> BoundedVerdict:
    """The first lasso of :func:`enumerate_up` satisfying ``phi`` at time 0.

    Lassos of one shape are evaluated together with bit masks; large shapes
    are split on their leading states so the first witness is still the one
    of the sequential order.
    """
    names = sorted(props(phi) if variables is None else variables)
    for k, l in lasso_shapes(kl_max):
        witness = _first_model(phi, names, k, l)
        if witness is not None:
            assert eval_ltl(witness, 0, phi)
            return BoundedVerdict(SAT, kl_max, witness)
    return BoundedVerdict(UNSAT, kl_max)


def _first_model(phi, names, k, l):
    v, m = len(names), k + l
    total = v * m
    if total <= _CHUNK_BITS:
        cols, width = lasso_columns(names, k, l)
        mask = lasso_labeling(phi, cols, k, l, width)[phi][0]
        if mask:
            x = (mask & -mask).bit_length() - 1
            return decode_lasso(names, k, l, x)
        return None
    # fix the high bits (leading states) chunk by chunk, in increasing order
    low = _CHUNK_BITS
    high = total - low
    width = 1 << low
    full = (1 << width) - 1
    for prefix in range(1 << high):
        cols = {}
        for j, name in enumerate(names):
            per = []
            for t in range(m):
                b = (m - 1 - t) * v + (v - 1 - j)
                if b >= low:
                    per.append(full if (prefix >> (b - low)) & 1 else 0)
                else:
                    per.append(bit_pattern(b, width))
            cols[name] = per
        mask = lasso_labeling(phi, cols, k, l, width)[phi][0]
        if mask:
            x = (prefix << low) | ((mask & -mask).bit_length() - 1)
            return decode_lasso(names, k, l, x)
    return None


__all__ = [
    "SAT", "UNSAT", "BoundedVerdict", "Cnf", "Solver", "prop_sat", "iter_models",
    "schema_sat_bounded", "enumerate_up", "ltl_sat_bounded",
]
