import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import sps_schemata
from naive import eval_ground, ground_atoms, truth_table

from ltlschema.schema import (
    Atom, BigAnd, BigAndIncl, BigOr, Index, Iter, PropInterpretation, SchemaInterpretation, Var,
    atoms, classify_sps, eval_arith, eval_prop, eval_schema, expand_incl, idx, instantiate,
    parse_schema, render_schema, schema_props, simplify, size_metrics, substitute,
)
from ltlschema.syntax import FALSE, TRUE, And, Iff, Implies, Not, Or, ParseError, flatten

RUNNING = "p[0] & bigand i . (p[i] -> p[i+1]) & !p[n]"


def a(p, base, k=0):
    return Atom(p, Index(base, k))


# -- syntax ----------------------------------------------------------------------

def test_parse_running_schema():
    s = parse_schema(RUNNING)
    assert s == And(
        And(a("p", None), BigAnd("i", Implies(a("p", "i"), a("p", "i", 1)))),
        Not(a("p", "n")),
    )
    assert render_schema(s) == RUNNING


@pytest.mark.parametrize("text, tree", [
    ("bigor i . (q[i+2])", BigOr("i", a("q", "i", 2))),
    ("bigand_incl i . (p[i])", BigAndIncl("i", a("p", "i"))),
    ("p[n+1+2]", a("p", "n", 3)),
    ("p[1+n]", a("p", "n", 1)),
    ("bigand i . p[i] & q[0]", And(BigAnd("i", a("p", "i")), a("q", None))),
    ("bigand j = 1 .. n . (p[j])", Iter("and", "j", Index(None, 1), Index("n", 0), a("p", "j"))),
    ("bigor j = 0 ..< n . (p[j])", Iter("or", "j", Index(None, 0), Index("n", 0), a("p", "j"), True)),
])
def test_parse_forms(text, tree):
    assert parse_schema(text) == tree


def test_nested_iteration_parses_then_is_rejected():
    s = parse_schema("bigand i . (bigand j . p[j])")
    verdict = classify_sps(s)
    assert not verdict.is_sps
    assert "nested-iteration" in {rule for _, rule in verdict.violations}


@pytest.mark.parametrize("text, message", [
    ("p[i]", "unbound index variable"),
    ("p[2n]", "beyond SPS/regular fragment"),
    ("bigand i . (p[2i])", "beyond SPS/regular fragment"),
    ("bigand i . (p[i*2])", "beyond SPS/regular fragment"),
    ("bigand i . (p[n+i])", "beyond SPS/regular fragment"),
    ("p[n-1]", "subtraction"),
    ("bigand n . (p[n])", "parameter"),
    ("p[0", "expected one of: ]"),
    ("lt_n", "expected one of: ["),
])
def test_parse_errors(text, message):
    with pytest.raises(ParseError) as info:
        parse_schema(text)
    assert message in str(info.value)


@settings(max_examples=300, deadline=None)
@given(sps_schemata())
def test_render_parse_round_trip(s):
    assert parse_schema(render_schema(s)) == s


# -- fragment --------------------------------------------------------------------

@pytest.mark.parametrize("text, ok", [
    (RUNNING, True),
    ("true", True),
    ("bigand i . (p[i] -> p[i+1]) & bigor i . (q[i+2])", True),
    ("bigand_incl i . (p[i] | q[i+1])", True),
    ("bigand i . (p[0])", False),
    ("bigand i . (p[n])", False),
    ("bigand j = 0 .. n . (p[j])", False),
])
def test_classify(text, ok):
    assert classify_sps(parse_schema(text)).is_sps is ok


def test_classify_reports_rules():
    verdict = classify_sps(parse_schema("bigand i . (p[n]) & bigor j = 1 ..< n . (p[j])"))
    rules = {rule for _, rule in verdict.violations}
    assert rules == {"bad-inner-index", "non-sequential-iteration"}


# -- arithmetic and instances --------------------------------------------------------

def test_eval_arith():
    assert eval_arith(Index("n", 2), 3) == 5
    assert eval_arith(Index(None, 7), 0) == 7
    assert eval_arith(Index("i", 1), 0, 4) == 5
    assert eval_arith(Index("j", 0), 0, {"j": 2}) == 2
    with pytest.raises(KeyError):
        eval_arith(Index("i", 0), 0)
    assert idx("n+2") == Index("n", 2)


def v(p, i):
    return Var(p, i)


def test_running_instances():
    s = parse_schema(RUNNING)
    assert flatten(instantiate(s, 0)) == [v("p", 0), TRUE, Not(v("p", 0))]
    assert flatten(instantiate(s, 1)) == [v("p", 0), Implies(v("p", 0), v("p", 1)), Not(v("p", 1))]
    assert flatten(instantiate(s, 2)) == [
        v("p", 0), Implies(v("p", 0), v("p", 1)), Implies(v("p", 1), v("p", 2)), Not(v("p", 2)),
    ]


def test_empty_iterations():
    assert instantiate(parse_schema("bigand i . (p[i])"), 0) == TRUE
    assert instantiate(parse_schema("bigor i . (p[i])"), 0) == FALSE
    assert instantiate(parse_schema("bigand_incl i . (p[i])"), 0) == And(TRUE, v("p", 0))


def test_instantiate_rejects_negative_parameter():
    with pytest.raises(ValueError):
        instantiate(parse_schema(RUNNING), -1)


@pytest.mark.parametrize("m", range(9))
def test_running_schema_unsat_and_its_prefix_sat(m):
    s = parse_schema(RUNNING)
    assert not any(value for _, value in truth_table(instantiate(s, m)))
    dropped = parse_schema("p[0] & bigand i . (p[i] -> p[i+1])")
    assert any(value for _, value in truth_table(instantiate(dropped, m)))


@settings(max_examples=150, deadline=None)
@given(sps_schemata(), st.integers(0, 5))
def test_incl_shortcut_node_for_node(s, m):
    for node in _walk(s):
        if isinstance(node, BigAndIncl):
            direct = instantiate(node, m)
            expanded = instantiate(And(BigAnd(node.var, node.body), substitute(node.body, node.var, Index("n", 0))), m)
            assert flatten(direct) == flatten(expanded)
    whole = instantiate(s, m)
    for true, value in truth_table(instantiate(expand_incl(s), m)):
        assert eval_ground(true, whole) == value


@settings(max_examples=200, deadline=None)
@given(sps_schemata(), st.integers(0, 6))
def test_instance_indices_bounded(s, m):
    bound = m + size_metrics(s)["max_int"]
    assert all(i <= bound for _, i in atoms(instantiate(s, m)))


def _walk(node):
    yield node
    for c in node.children():
        yield from _walk(c)


# -- evaluation ------------------------------------------------------------------

def test_eval_prop_examples():
    sigma = PropInterpretation(frozenset({("p", 0)}))
    assert eval_prop(sigma, v("p", 0))
    assert eval_prop(PropInterpretation(frozenset()), Not(v("p", 3)))
    assert not eval_prop(sigma, instantiate(parse_schema(RUNNING), 0))


def test_eval_schema_defaults_false():
    I = SchemaInterpretation(PropInterpretation(frozenset({("p", 0), ("p", 1)})), 1)
    assert eval_schema(I, parse_schema("p[0] & bigand i . (p[i] -> p[i+1])"))
    assert not eval_schema(I, parse_schema("p[n+1]"))


ground_leaves = st.builds(Var, st.sampled_from(["p", "q"]), st.integers(0, 1)) | st.just(TRUE)
ground = st.recursive(
    ground_leaves,
    lambda c: c.map(Not) | st.tuples(st.sampled_from([And, Or, Implies, Iff]), c, c).map(lambda t: t[0](t[1], t[2])),
    max_leaves=8,
)


@settings(max_examples=300, deadline=None)
@given(ground)
def test_eval_prop_matches_truth_table(f):
    assert len(ground_atoms(f)) <= 4
    for true, value in truth_table(f):
        assert eval_prop(PropInterpretation(frozenset(true)), f) == value == eval_ground(true, f)


# -- sizes and helpers ---------------------------------------------------------------

def test_size_metrics():
    assert size_metrics(parse_schema("p[0]"))["max_int"] == 0
    m = size_metrics(parse_schema("p[n+5]"))
    assert m["max_int"] == 5
    assert m["unary_size"] - m["sym_size"] == 5
    assert m["binary_size"] - m["sym_size"] == 3
    assert size_metrics(parse_schema(RUNNING))["max_int"] == 1


def test_props_and_substitute():
    s = parse_schema("bigand i . (p[i] -> q[i+1]) & r[n]")
    assert schema_props(s) == {"p", "q", "r"}
    body = parse_schema("bigand i . (p[i+1])").body
    assert substitute(body, "i", Index("n", 0)) == a("p", "n", 1)


def test_simplify():
    assert simplify(parse_schema("p[0] & true")) == a("p", None)
    assert simplify(parse_schema("p[0] | false")) == a("p", None)
    assert simplify(parse_schema("bigand j = 0 ..< n . (p[j])")) == BigAnd("j", a("p", "j"))
    assert simplify(parse_schema("bigand j = 0 .. n . (p[j])")) == BigAndIncl("j", a("p", "j"))


def test_general_iteration_instance():
    s = parse_schema("bigor j = 1 .. n . (p[j])")
    assert instantiate(s, 0) == FALSE
    assert flatten(instantiate(s, 2), Or) == [v("p", 1), v("p", 2)]
