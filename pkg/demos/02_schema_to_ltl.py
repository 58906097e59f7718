# From sequential schemata to LTL
#
# The index becomes time: p[k] reads X^k p, an iteration reads
# G(lt_n -> ...), and atoms at n+k are read where eq_n holds.  Two axioms
# make lt_n an initial segment of length n and eq_n its end marker.

from ltlschema import (
    FloorOptions, PropInterpretation, SchemaInterpretation, eval_ltl, eval_schema, floor_interp,
    floor_interp_inv, floor_translate, ltl_sat_bounded, parse_schema, render_ltl, render_up,
)

s = parse_schema("p[0] & bigand i . (p[i] -> p[i+1]) & !p[n]")
phi = floor_translate(s)
print("LTL:", render_ltl(phi))

# The polarity-aware variant pushes negation inward first; !p[n] becomes a G
# formula instead of a negated one.
print("NNF-first:", render_ltl(floor_translate(s, FloorOptions(nnf_first=True))))

# A schema model (n, true atoms) maps to a lasso and back.
M = SchemaInterpretation(PropInterpretation(frozenset({("p", 0), ("p", 1), ("q", 2)})), 2)
sigma = floor_interp(M)
print("lasso of M:", render_up(sigma))
print("back:", floor_interp_inv(sigma) == M)

# Truth is preserved: M satisfies the schema iff its lasso satisfies the
# translation.
t = parse_schema("bigor i . (p[i] & !p[i+1]) & q[n]")
print("M |= t:", eval_schema(M, t), "  lasso |= translation:", eval_ltl(sigma, 0, floor_translate(t)))

# Satisfiability carries over, so the running schema's translation has no
# lasso model either.
print(ltl_sat_bounded(phi, 4))
