# Size of the translations
#
# LTL -> schema is linear in the formula size.  Schema -> LTL is linear in
# the symbol count times (1 + largest constant), since p[k] becomes X^k p.

from statistics import linear_regression

from ltlschema import ceil_size_report, floor_size_report, parse_ltl, parse_schema

sizes, outputs = [], []
for d in range(11):
    rep = ceil_size_report(parse_ltl("G " * d + "p"))
    sizes.append(rep["input_size"])
    outputs.append(rep["output_size"])
    print(f"G^{d} p: {rep['input_size']:3} -> {rep['output_size']:4}  ratio {float(rep['ratio']):6.2f}")
slope, intercept = linear_regression(sizes, outputs)
print(f"fit: output = {slope:.2f} * input {intercept:+.2f}")

# Constants are what make the other direction grow.
for k in (0, 5, 10, 20):
    rep = floor_size_report(parse_schema(f"bigand i . (p[i] -> q[i+1]) & p[n+{k}]"))
    print(f"p[n+{k}]: output {rep['output_size']:3}  ratio {float(rep['ratio']):.2f}")
