"""Deterministic formula generators shared by the sweeps and a few
hypothesis strategies for the property tests."""

import random

from hypothesis import strategies as st

from ltlschema.ltl import Always, Eventually, Next, Prop, Until
from ltlschema.schema import Atom, BigAnd, BigAndIncl, BigOr, Index
from ltlschema.syntax import FALSE, TRUE, And, Iff, Implies, Not, Or, node_count
from ltlschema.ltl import render_ltl
from ltlschema.schema import render_schema

PROPS = ("p", "q")
BINARY_LTL = (And, Or, Implies, Iff, Until)
UNARY_LTL = (Not, Next, Eventually, Always)
BINARY_BOOL = (And, Or, Implies, Iff)


# -- random generation with a node budget -------------------------------------------

def random_ltl(rng, nodes, props=PROPS):
    """A formula with exactly ``nodes`` nodes."""
    if nodes == 1:
        r = rng.random()
        if r < 0.1:
            return TRUE
        return Prop(rng.choice(props))
    if nodes == 2 or rng.random() < 0.4:
        return rng.choice(UNARY_LTL)(random_ltl(rng, nodes - 1, props))
    left = rng.randint(1, nodes - 2)
    op = rng.choice(BINARY_LTL)
    return op(random_ltl(rng, left, props), random_ltl(rng, nodes - 1 - left, props))


def ltl_corpus(count=220, max_nodes=10, seed=7, props=PROPS):
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < count:
        phi = random_ltl(rng, rng.randint(1, max_nodes), props)
        key = render_ltl(phi)
        if key not in seen:
            seen.add(key)
            out.append(phi)
    return out


def _atom(rng, props, binder, max_const):
    k = rng.randint(0, max_const)
    if binder is not None:
        return Atom(rng.choice(props), Index(binder, k))
    return Atom(rng.choice(props), Index(rng.choice((None, "n")), k))


def random_sps(rng, nodes, props=PROPS, max_const=2, binder=None):
    """A sequential schema with exactly ``nodes`` nodes; iterations only at
    the outer level, their bodies indexed by ``i+k``."""
    if nodes == 1:
        if rng.random() < 0.08:
            return TRUE
        return _atom(rng, props, binder, max_const)
    if binder is None and rng.random() < 0.35:
        kind = rng.choice((BigAnd, BigOr, BigAndIncl))
        if kind is BigAndIncl:
            # the bound-n shortcut is only used with plain i indices here
            body = random_sps(rng, nodes - 1, props, 0, "i")
        else:
            body = random_sps(rng, nodes - 1, props, max_const, "i")
        return kind("i", body)
    if nodes == 2 or rng.random() < 0.25:
        return Not(random_sps(rng, nodes - 1, props, max_const, binder))
    left = rng.randint(1, nodes - 2)
    op = rng.choice(BINARY_BOOL)
    return op(
        random_sps(rng, left, props, max_const, binder),
        random_sps(rng, nodes - 1 - left, props, max_const, binder),
    )


def sps_corpus(count=220, max_nodes=12, seed=11, props=PROPS, max_const=2):
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < count:
        s = random_sps(rng, rng.randint(1, max_nodes), props, max_const)
        key = render_schema(s)
        if key not in seen and node_count(s) <= max_nodes:
            seen.add(key)
            out.append(s)
    return out


# -- hypothesis strategies ---------------------------------------------------------

def ltl_formulas(props=PROPS, max_leaves=6):
    leaves = st.sampled_from([Prop(p) for p in props] + [TRUE, FALSE])

    def extend(children):
        unary = st.tuples(st.sampled_from(UNARY_LTL), children).map(lambda t: t[0](t[1]))
        binary = st.tuples(st.sampled_from(BINARY_LTL), children, children).map(lambda t: t[0](t[1], t[2]))
        return unary | binary

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def _sps_body(props, binder, max_const, max_leaves):
    if binder is None:
        bases = st.sampled_from((None, "n"))
    else:
        bases = st.just(binder)
    atom = st.builds(
        lambda p, b, k: Atom(p, Index(b, k)),
        st.sampled_from(props), bases, st.integers(0, max_const),
    )
    leaves = atom | st.just(TRUE)

    def extend(children):
        unary = children.map(Not)
        binary = st.tuples(st.sampled_from(BINARY_BOOL), children, children).map(lambda t: t[0](t[1], t[2]))
        return unary | binary

    return st.recursive(leaves, extend, max_leaves=max_leaves)


def sps_schemata(props=PROPS, max_const=2, max_leaves=5):
    outer = _sps_body(props, None, max_const, max_leaves)
    body = _sps_body(props, "i", max_const, 3)
    iteration = st.tuples(st.sampled_from((BigAnd, BigOr)), body).map(lambda t: t[0]("i", t[1]))
    incl = _sps_body(props, "i", 0, 3).map(lambda b: BigAndIncl("i", b))
    piece = outer | iteration | incl
    return st.recursive(
        piece,
        lambda c: st.tuples(st.sampled_from(BINARY_BOOL), c, c).map(lambda t: t[0](t[1], t[2])) | c.map(Not),
        max_leaves=3,
    )
