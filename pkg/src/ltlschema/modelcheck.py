"""Safety checking of finite transition systems through schemata.

A system is encoded as a schema ``s_T`` whose models of parameter ``n`` are
the paths of length ``n`` (variables ``st_<state>`` and ``act_<action>`` pick
one state and one action per index).  A property built from literals, ``&``,
``|``, ``X`` and ``G`` holds on every path up to the bound iff
``s_T & finite_translate(not property)`` has no instance satisfiable for
``n <= n_max``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ceil import finite_translate
from .ltl import Always, Next, Prop, ltl_nnf, next_depth, props
from .oracle import schema_sat_bounded
from .schema import Atom, BigAndIncl, Index
from .syntax import And, Iff, Implies, Not, Or, Top, conj, disj, walk

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_LABEL = r"[A-Za-z0-9_]+"  # state/action names end up inside st_<name>


@dataclass(frozen=True)
class TransitionSystem:
    states: tuple
    actions: tuple
    delta: dict  # (state, action) -> state
    labels: dict  # state -> frozenset of true props
    initial: tuple | None = None
    # props mentioned anywhere, including ones only listed as false
    declared: frozenset = field(default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "actions", tuple(self.actions))
        object.__setattr__(self, "labels", {s: frozenset(self.labels.get(s, ())) for s in self.states})
        if self.initial is not None:
            object.__setattr__(self, "initial", tuple(self.initial))
        object.__setattr__(self, "declared", frozenset(self.declared) | self.props_in_labels())
        self.validate()

    def props_in_labels(self) -> frozenset:
        return frozenset().union(*self.labels.values()) if self.labels else frozenset()

    @property
    def props(self) -> frozenset:
        return self.declared

    def validate(self):
        if not self.states:
            raise ValueError("a transition system needs at least one state")
        if not self.actions:
            raise ValueError("a transition system needs at least one action")
        for where, names in (("state", self.states), ("action", self.actions)):
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate {where} names")
        known_s, known_a = set(self.states), set(self.actions)
        for (s, a), t in self.delta.items():
            if s not in known_s or t not in known_s:
                raise ValueError(f"transition {s} {a} {t} mentions an unknown state")
            if a not in known_a:
                raise ValueError(f"transition {s} {a} {t} mentions an unknown action")
        missing = [(s, a) for s in self.states for a in self.actions if (s, a) not in self.delta]
        if missing:
            s, a = missing[0]
            raise ValueError(f"transition function is not total: no entry for state {s} and action {a}")
        for s in self.initial or ():
            if s not in known_s:
                raise ValueError(f"unknown initial state {s}")

    def successor(self, state, action):
        return self.delta[(state, action)]


# -- text format -----------------------------------------------------------------

def parse_ts(text: str) -> TransitionSystem:
    """Read the line format ``states:``, ``actions:``, ``label s: p !q``,
    ``trans s a t`` and optional ``initial:``; ``#`` starts a comment."""
    import re

    states = actions = None
    initial = None
    labels: dict = {}
    negated: set = set()
    delta: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        def fail(msg):
            raise ValueError(f"line {lineno}: {msg}")

        def names(chunk):
            items = chunk.split()
            for item in items:
                if not re.fullmatch(_LABEL, item):
                    fail(f"bad name {item!r}")
            return items

        head, _, rest = line.partition(":") if not line.startswith("trans") else ("trans", "", line[5:])
        head = head.strip()
        if head == "states":
            states = names(rest)
        elif head == "actions":
            actions = names(rest)
        elif head == "initial":
            initial = names(rest)
        elif head.startswith("label"):
            parts = head.split()
            if len(parts) != 2:
                fail("expected 'label <state>: <props>'")
            pos = set()
            for item in rest.split():
                name = item[1:] if item.startswith("!") else item
                if not re.fullmatch(_NAME, name):
                    fail(f"bad proposition {item!r}")
                if item.startswith("!"):
                    negated.add(name)
                else:
                    pos.add(name)
            if pos & {item[1:] for item in rest.split() if item.startswith("!")}:
                fail("a proposition is listed both true and false")
            labels[parts[1]] = pos
        elif head == "trans":
            parts = names(rest)
            if len(parts) != 3:
                fail("expected 'trans <state> <action> <state>'")
            key = (parts[0], parts[1])
            if key in delta and delta[key] != parts[2]:
                fail(f"two transitions for state {parts[0]} and action {parts[1]}")
            delta[key] = parts[2]
        else:
            fail(f"unknown entry {head!r}")
    if states is None or actions is None:
        raise ValueError("missing 'states:' or 'actions:' line")
    unknown = set(labels) - set(states)
    if unknown:
        raise ValueError(f"label for unknown state {sorted(unknown)[0]}")
    return TransitionSystem(states, actions, delta, labels, initial, frozenset(negated))


def render_ts(ts: TransitionSystem) -> str:
    lines = [f"states: {' '.join(ts.states)}", f"actions: {' '.join(ts.actions)}"]
    if ts.initial is not None:
        lines.append(f"initial: {' '.join(ts.initial)}")
    for s in ts.states:
        items = [p if p in ts.labels[s] else "!" + p for p in sorted(ts.props)]
        lines.append(f"label {s}: {' '.join(items)}".rstrip())
    for s in ts.states:
        for a in ts.actions:
            lines.append(f"trans {s} {a} {ts.delta[(s, a)]}")
    return "\n".join(lines) + "\n"


# -- encoding --------------------------------------------------------------------

def st(state: str, e: Index) -> Atom:
    return Atom(f"st_{state}", e)


def act(action: str, e: Index) -> Atom:
    return Atom(f"act_{action}", e)


def _step_clauses(ts: TransitionSystem, props_all, c: int) -> list:
    here, nxt = Index("i", c), Index("i", c + 1)
    clauses = []
    for s in ts.states:
        for a in ts.actions:
            clauses.append(Implies(And(st(s, here), act(a, here)), st(ts.delta[(s, a)], nxt)))
    for s in ts.states:
        lits = [Atom(p, here) if p in ts.labels[s] else Not(Atom(p, here)) for p in props_all]
        clauses.append(Implies(st(s, here), conj(lits)))
    for s in ts.states:
        clauses.append(Iff(st(s, here), conj(Not(st(t, here)) for t in ts.states if t != s)))
    for a in ts.actions:
        clauses.append(Iff(act(a, here), conj(Not(act(b, here)) for b in ts.actions if b != a)))
    return clauses


def encode_ts(ts: TransitionSystem, extra_props=(), lookahead: int = 0):
    """The schema ``s_T``: one ``bigand_incl`` over transition, label and
    exclusivity clauses, plus an initial-state disjunction at index 0.

    Props of ``extra_props`` that no label mentions are false everywhere.
    ``lookahead`` repeats the clauses at the ``lookahead`` following indices,
    so that ``X`` obligations at index ``n`` still refer to path states.
    """
    props_all = sorted(set(ts.props) | set(extra_props))
    bad = [p for p in props_all if p.startswith(("st_", "act_"))]
    if bad:
        raise ValueError(f"reserved variable name(s) in use: {', '.join(sorted(bad))}")
    clauses = []
    for c in range(lookahead + 1):
        clauses += _step_clauses(ts, props_all, c)
    s = BigAndIncl("i", conj(clauses))
    if ts.initial is not None:
        s = And(s, disj(st(q, Index(None, 0)) for q in ts.initial))
    return s


# -- checking --------------------------------------------------------------------

@dataclass(frozen=True)
class McVerdict:
    holds: bool
    bound: int
    path: tuple = ()
    actions: tuple = ()
    time: int | None = None

    def __str__(self):
        if self.holds:
            return f"holds up to n={self.bound}"
        return f"counterexample at time {self.time}: {' '.join(self.path)}"


def in_safety_fragment(phi) -> bool:
    """NNF built from true/false, literals, &, |, X and G only."""
    for node in walk(phi):
        if isinstance(node, Not):
            if not isinstance(node.arg, (Prop, Top)):
                return False
        elif not isinstance(node, (Top, Prop, And, Or, Next, Always)):
            return False
    return True


def check_safety(ts: TransitionSystem, phi, n_max: int = 8) -> McVerdict:
    """Search a path of length ``n <= n_max`` violating ``phi`` at its start."""
    nnf = ltl_nnf(phi)
    if not in_safety_fragment(nnf):
        raise ValueError("property must use only literals, &, |, X and G (after NNF)")
    depth = next_depth(nnf)
    bad = ltl_nnf(Not(phi))
    s = And(encode_ts(ts, props(phi), lookahead=depth), finite_translate(bad))
    verdict = schema_sat_bounded(s, n_max)
    if not verdict.sat:
        return McVerdict(True, n_max)
    model, n = verdict.witness.base, verdict.witness.n
    path, actions = [], []
    for j in range(n + depth + 1):
        here = [q for q in ts.states if (f"st_{q}", j) in model]
        if len(here) != 1:
            raise RuntimeError(f"path decoding failed at index {j}: states {here}")
        path.append(here[0])
        if j < n + depth:
            acts = [a for a in ts.actions if (f"act_{a}", j) in model]
            if len(acts) != 1:
                raise RuntimeError(f"path decoding failed at index {j}: actions {acts}")
            actions.append(acts[0])
    return McVerdict(False, n_max, tuple(path), tuple(actions), n)


def holds_on_path(ts: TransitionSystem, path, phi, t: int, horizon: int) -> bool:
    """Finite-trace reading of a fragment formula: ``G`` ranges over
    ``t..horizon`` and ``X`` moves one step along ``path``."""
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Prop):
        return phi.name in ts.labels[path[t]]
    if isinstance(phi, Not):
        return not holds_on_path(ts, path, phi.arg, t, horizon)
    if isinstance(phi, And):
        return holds_on_path(ts, path, phi.left, t, horizon) and holds_on_path(ts, path, phi.right, t, horizon)
    if isinstance(phi, Or):
        return holds_on_path(ts, path, phi.left, t, horizon) or holds_on_path(ts, path, phi.right, t, horizon)
    if isinstance(phi, Next):
        return holds_on_path(ts, path, phi.arg, t + 1, horizon)
    if isinstance(phi, Always):
        return all(holds_on_path(ts, path, phi.arg, j, horizon) for j in range(t, horizon + 1))
    raise ValueError(f"operator outside the safety fragment: {type(phi).__name__}")


__all__ = [
    "TransitionSystem", "parse_ts", "render_ts", "encode_ts", "McVerdict",
    "check_safety", "holds_on_path", "in_safety_fragment",
]
