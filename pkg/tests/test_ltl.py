import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import ltl_formulas
from naive import all_lassos, eval_unrolled

from ltlschema.ltl import (
    Always, Eventually, Next, Prop, UPInterpretation, Until, X, eval_ltl, is_nnf, labeling,
    ltl_nnf, next_depth, parse_ltl, props, render_ltl, size, subformulas, until_depth,
)
from ltlschema.syntax import FALSE, TRUE, And, Iff, Implies, Not, Or, ParseError

p, q, r = Prop("p"), Prop("q"), Prop("r")


def small_lassos(kl_max, variables=("p", "q")):
    for kl in range(1, kl_max + 1):
        for k in range(kl):
            for pre, loop in all_lassos(variables, k, kl - k):
                yield UPInterpretation(pre, loop)


LASSOS_3 = list(small_lassos(3))


# -- parsing ---------------------------------------------------------------------

@pytest.mark.parametrize("text, tree", [
    ("G F p", Always(Eventually(p))),
    ("p U (q & X r)", Until(p, And(q, Next(r)))),
    ("p U q U r", Until(p, Until(q, r))),
    ("p -> q -> r", Implies(p, Implies(q, r))),
    ("p & q | r", Or(And(p, q), r)),
    ("p | q & r", Or(p, And(q, r))),
    ("p <-> q <-> r", Iff(Iff(p, q), r)),
    ("p -> q <-> r", Iff(Implies(p, q), r)),
    ("!p U q", Until(Not(p), q)),
    ("X p U q", Until(Next(p), q)),
    ("p U q & r", And(Until(p, q), r)),
    ("false", FALSE),
    ("true", TRUE),
    ("(((p)))", p),
    ("G!X p", Always(Not(Next(p)))),
    ("_a1 & B", And(Prop("_a1"), Prop("B"))),
])
def test_parse(text, tree):
    assert parse_ltl(text) == tree


@pytest.mark.parametrize("text, where", [
    ("p &", (1, 4)),
    ("G", (1, 2)),
    ("X(p", (1, 4)),
    ("p q", (1, 3)),
    ("U p", (1, 1)),
    ("p $ q", (1, 3)),
    ("", (1, 1)),
    ("p &\n  & q", (2, 3)),
])
def test_parse_errors_have_positions(text, where):
    with pytest.raises(ParseError) as info:
        parse_ltl(text)
    assert (info.value.line, info.value.column) == where


def test_parse_error_lists_expected_tokens():
    with pytest.raises(ParseError) as info:
        parse_ltl("p q")
    assert "U" in info.value.expected and "end of input" in info.value.expected


def test_keywords_are_not_propositions():
    for kw in ("X", "F", "G", "U"):
        with pytest.raises(ParseError):
            parse_ltl(f"p & {kw}")


# -- printing --------------------------------------------------------------------

@pytest.mark.parametrize("tree, text", [
    (Always(Eventually(p)), "G F p"),
    (p, "p"),
    (Until(TRUE, p), "true U p"),
    (Not(Until(p, q)), "!(p U q)"),
    (Until(Until(p, q), r), "(p U q) U r"),
    (Implies(Implies(p, q), r), "(p -> q) -> r"),
    (And(p, Or(q, r)), "p & (q | r)"),
    (Next(And(p, q)), "X (p & q)"),
])
def test_render(tree, text):
    assert render_ltl(tree) == text


@settings(max_examples=300, deadline=None)
@given(ltl_formulas(max_leaves=8))
def test_render_parse_round_trip(phi):
    assert parse_ltl(render_ltl(phi)) == phi


# -- structure -------------------------------------------------------------------

def test_subformulas():
    assert subformulas(Next(p)) == [p, Next(p)]
    assert subformulas(And(p, p)) == [p, And(p, p)]
    assert subformulas(Until(p, q)) == [p, q, Until(p, q)]


def test_measures():
    phi = parse_ltl("G (p U X X q) & F r")
    assert size(phi) == 9
    assert until_depth(phi) == 2
    assert next_depth(phi) == 2
    assert props(phi) == {"p", "q", "r"}
    assert X(p, 3) == Next(Next(Next(p)))
    assert X(p, 0) == p


# -- NNF -------------------------------------------------------------------------

@pytest.mark.parametrize("text, nnf", [
    ("!(p & q)", "!p | !q"),
    ("!G p", "F !p"),
    ("!F p", "G !p"),
    ("!X p", "X !p"),
    ("!!p", "p"),
    ("!(p -> q)", "p & !q"),
    ("!(p U q)", "!(p U q)"),
    ("!(!p U q)", "!(!p U q)"),
])
def test_nnf_examples(text, nnf):
    assert ltl_nnf(parse_ltl(text)) == parse_ltl(nnf)


def test_nnf_keeps_negated_until():
    out = ltl_nnf(parse_ltl("!(p U q)"))
    assert not is_nnf(out)
    assert is_nnf(ltl_nnf(parse_ltl("!G (p -> X q)")))


@settings(max_examples=150, deadline=None)
@given(ltl_formulas(max_leaves=6))
def test_nnf_preserves_truth(phi):
    nnf = ltl_nnf(phi)
    for sigma in LASSOS_3:
        for t in range(4):
            assert eval_ltl(sigma, t, nnf) == eval_ltl(sigma, t, phi)


@settings(max_examples=150, deadline=None)
@given(ltl_formulas(max_leaves=6))
def test_nnf_negation_only_on_atoms_or_until(phi):
    for node in _walk(ltl_nnf(phi)):
        if isinstance(node, Not):
            assert isinstance(node.arg, (Prop, type(TRUE), Until))
        assert not isinstance(node, (Implies, Iff))


def _walk(node):
    yield node
    for c in node.children():
        yield from _walk(c)


# -- lassos and evaluation ---------------------------------------------------------

def test_lasso_lookup():
    sigma = UPInterpretation([{"a"}, set()], [{"b"}, {"c"}])
    assert (sigma.k, sigma.l) == (2, 2)
    assert [sorted(sigma.state(t)) for t in range(7)] == [["a"], [], ["b"], ["c"], ["b"], ["c"], ["b"]]
    with pytest.raises(ValueError):
        UPInterpretation([{"p"}], [])


def test_eval_examples():
    assert eval_ltl(UPInterpretation([set()], [{"p"}, set()]), 0, parse_ltl("G F p"))
    assert eval_ltl(UPInterpretation([], [set()]), 0, TRUE)
    assert not eval_ltl(UPInterpretation([], [set()]), 0, parse_ltl("F p"))
    sigma = UPInterpretation([{"p"}, {"p"}], [{"q"}])
    assert eval_ltl(sigma, 0, parse_ltl("p U q"))
    assert not eval_ltl(sigma, 0, parse_ltl("G p"))
    assert eval_ltl(sigma, 2, parse_ltl("G q"))
    assert eval_ltl(sigma, 1, parse_ltl("X q"))
    with pytest.raises(ValueError):
        eval_ltl(sigma, -1, p)


def test_labeling_covers_subformulas():
    phi = parse_ltl("p U (q & !p)")
    sigma = UPInterpretation([{"p"}], [{"q"}, {"p"}])
    table = labeling(sigma, phi)
    assert set(table) == set(subformulas(phi))
    for psi, mask in table.items():
        for t in range(3):
            assert bool((mask >> t) & 1) == eval_ltl(sigma, t, psi)


@settings(max_examples=200, deadline=None)
@given(ltl_formulas(max_leaves=7), st.sampled_from(list(small_lassos(4))), st.integers(0, 6))
def test_periodicity(phi, sigma, t):
    if t >= sigma.k:
        assert eval_ltl(sigma, t, phi) == eval_ltl(sigma, t + sigma.l, phi)


@settings(max_examples=200, deadline=None)
@given(ltl_formulas(max_leaves=7), st.sampled_from(list(small_lassos(4))), st.integers(0, 4))
def test_agrees_with_unrolling(phi, sigma, t):
    assert eval_ltl(sigma, t, phi) == eval_unrolled(sigma, t, phi)


def test_values_are_immutable():
    with pytest.raises(AttributeError):
        p.name = "q"
    sigma = UPInterpretation([], [{"p"}])
    with pytest.raises(AttributeError):
        sigma.loop = ()
