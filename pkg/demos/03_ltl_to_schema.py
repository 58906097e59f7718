# From LTL to sequential schemata
#
# Every subformula gets a variable sub_<k>; its meaning is pinned down
# index by index, with pfx marking the lasso prefix and eq_k its length.
# Eventualities get a second, primed copy that closes the loop.

from ltlschema import (
    CeilOptions, UPInterpretation, ceil_interp, ceil_interp_inv, ceil_translate, classify_sps,
    eval_ltl, eval_schema, finite_translate, parse_ltl, render_schema, render_up, schema_sat_bounded,
)

phi = parse_ltl("G F p")
s = ceil_translate(phi)
print("schema:", render_schema(s))
print("sequential:", classify_sps(s).is_sps)

# A lasso and the schema model it induces.
sigma = UPInterpretation([{"q"}], [set(), {"p"}])
I = ceil_interp(sigma, phi)
print("lasso:", render_up(sigma), " n =", I.n)
print("sigma |= phi:", eval_ltl(sigma, 0, phi), "  I |= schema:", eval_schema(I, s))

# Any schema model decodes to a lasso satisfying phi.
verdict = schema_sat_bounded(s, 4)
print("first schema model at n =", verdict.witness.n, "->", render_up(ceil_interp_inv(verdict.witness)))

# Options: dedicated F/G axioms, inlined boolean connectives and reversed time.
for opts in [CeilOptions(specialize_fg=True), CeilOptions(inline_propositional=True), CeilOptions(invert_time=True)]:
    print(opts, "->", len(render_schema(ceil_translate(phi, opts))), "characters")

# The naive finite unfolding ignores the loop.  X p -> F p is valid over
# lassos, but its unfolding fails at n = 0 when only p[1] is true.
print("finite:", render_schema(finite_translate(parse_ltl("X p -> F p"))))
