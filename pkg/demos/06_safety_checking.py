# Safety checking of a transition system
#
# The system is encoded as a schema whose models of parameter n are its
# paths of length n.  A safety property holds up to the bound when the
# encoding together with the unfolded negated property has no model.

from pathlib import Path

from ltlschema import check_safety, encode_ts, parse_ltl, parse_ts, render_schema

ts = parse_ts((Path(__file__).parent / "data" / "three_state_ts.txt").read_text())
print("states", ts.states, "actions", ts.actions)
print("encoding:", render_schema(encode_ts(ts))[:120], "...")

for prop in ["G (p | q)", "G q", "G (q -> X (p | q | r))"]:
    verdict = check_safety(ts, parse_ltl(prop), 8)
    print(f"{prop:24}", verdict)
    if verdict.actions:
        print(" " * 25, "actions:", " ".join(verdict.actions))

# Making state 3 lose p breaks G (p | q).  With an initial state the
# counterexample has to walk there first.
text = (Path(__file__).parent / "data" / "three_state_ts.txt").read_text().replace("label 3: p !q r", "label 3: !p !q r")
print("after the change:", check_safety(parse_ts(text), parse_ltl("G (p | q)"), 8))
verdict = check_safety(parse_ts(text + "initial: 1\n"), parse_ltl("G (p | q)"), 8)
print("starting in 1:", verdict, "via", " ".join(verdict.actions))
