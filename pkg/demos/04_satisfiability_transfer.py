# Bounded satisfiability on both sides
#
# Schema satisfiability is checked instance by instance with a CDCL solver;
# LTL satisfiability by enumerating lassos in a fixed order.  A witness on
# one side is turned into a witness on the other through the translations.

from ltlschema import (
    ceil_interp, ceil_translate, eval_ltl, eval_schema, floor_interp, floor_interp_inv, floor_translate,
    ltl_sat_bounded, parse_ltl, parse_schema, render_schema_interp, render_up, schema_sat_bounded,
)

s = parse_schema("bigor i . (p[i] & !p[i+1]) & bigand_incl i . (q[i] | p[i])")
verdict = schema_sat_bounded(s, 6)
print("schema witness:", render_schema_interp(verdict.witness).replace("\n", " "))

# The witness maps to a lasso model of the LTL translation...
f = floor_translate(s)
sigma = floor_interp(verdict.witness)
print("as a lasso:", render_up(sigma), eval_ltl(sigma, 0, f))

# ...and the first lasso the LTL oracle finds maps back to a schema model.
lasso = ltl_sat_bounded(f, 5).witness
print("LTL witness:", render_up(lasso), "->", eval_schema(floor_interp_inv(lasso), s))

# The same round trip from the LTL side.
phi = parse_ltl("G (p -> X !p) & G F p")
lasso = ltl_sat_bounded(phi).witness
t = ceil_translate(phi)
print("LTL witness:", render_up(lasso), "-> schema model:", eval_schema(ceil_interp(lasso, phi), t))
print("schema side:", schema_sat_bounded(t, 3).status)
