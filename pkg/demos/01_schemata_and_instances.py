# Schemata and their instances
#
# A schema is a propositional formula with indexed atoms p[e] and iterated
# conjunctions/disjunctions over i = 0..n-1.  Fixing the parameter n gives an
# ordinary propositional formula, the instance.

from ltlschema import classify_sps, instantiate, parse_schema, render_schema, schema_sat_bounded

s = parse_schema("p[0] & bigand i . (p[i] -> p[i+1]) & !p[n]")
print("schema:", render_schema(s))

# The instances for the first few parameters.  At n = 0 the iteration is
# empty and contributes `true`.
for n in range(3):
    print(f"  n={n}:", render_schema(instantiate(s, n)))

# p holds at 0, propagates along the chain, and is false at n: every
# instance is contradictory.
print(schema_sat_bounded(s, 8))

# Dropping the last conjunct leaves a schema whose instances are all
# satisfiable; the oracle reports the smallest parameter and a model.
verdict = schema_sat_bounded(parse_schema("p[0] & bigand i . (p[i] -> p[i+1])"))
print("without !p[n]:", verdict.status, "at n =", verdict.witness.n, sorted(verdict.witness.base.true))

# Only sequential schemata can be translated.  The classifier names the rule
# that is broken and where.
for text in ["bigand i . (p[i] | q[i+2]) & q[n+1]", "bigand i . (p[n])", "bigand i . (bigand j . p[j])"]:
    verdict = classify_sps(parse_schema(text))
    print(f"{text!r:40} sequential={verdict.is_sps}", [rule for _, rule in verdict.violations])
