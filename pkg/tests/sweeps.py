"""Exhaustive agreement sweeps between the two sides of each translation."""

from naive import eval_ground

from ltlschema.batch import assignment, assignment_columns, eval_prop_batch, explicit_lassos, lasso_labeling
from ltlschema.ceil import ceil_translate
from ltlschema.floor import floor_translate
from ltlschema.interp import ceil_interp, ceil_interp_inv, floor_interp, invert_interp
from ltlschema.ltl import eval_ltl
from ltlschema.oracle import iter_models
from ltlschema.schema import SchemaInterpretation, atoms, instantiate, render_schema


def floor_agreement(s, n_max=4, spot=5, opts=None):
    """Exhaustive M |= s  <=>  floor_interp(M) |= floor(s), for n <= n_max."""
    f = floor_translate(s, opts)
    checked = 0
    for n in range(n_max + 1):
        inst = instantiate(s, n)
        ats = sorted(atoms(inst))
        cols, width = assignment_columns(ats)
        want = eval_prop_batch(inst, cols, width)
        m = max([i for _, i in ats] + [n]) + 1
        full = (1 << width) - 1
        lasso_cols = {}
        for (name, i), col in cols.items():
            lasso_cols.setdefault(name, [0] * (m + 1))[i] |= col
        lasso_cols["lt_n"] = [full if t < n else 0 for t in range(m + 1)]
        lasso_cols["eq_n"] = [full if t == n else 0 for t in range(m + 1)]
        got = lasso_labeling(f, lasso_cols, m, 1, width)[f][0]
        assert got == want, (render_schema(s), n)
        # the masks stand for floor_interp; check a few of them literally
        for x in range(0, width, max(1, width // spot)):
            M = SchemaInterpretation(assignment(ats, x), n)
            a = eval_ltl(floor_interp(M), 0, f)
            b = eval_ground(set(M.base.true), inst)
            assert a == b == bool((want >> x) & 1), (render_schema(s), n, x)
        checked += width
    return checked


def ceil_agreement(phi, kl_max=3, n_max=3, props=("p", "q"), opts=None):
    s = ceil_translate(phi, opts)
    invert = opts is not None and opts.invert_time
    lassos = models = 0
    for n in range(max(kl_max, n_max + 1)):
        inst = instantiate(s, n)
        if n + 1 <= kl_max:
            for k in range(n + 1):
                for sigma in explicit_lassos(props, k, n + 1 - k):
                    a = eval_ltl(sigma, 0, phi)
                    I = ceil_interp(sigma, phi, opts)
                    if invert:
                        I = invert_interp(I)
                    b = eval_ground(set(I.base.true), inst)
                    assert a == b, (phi, sigma)
                    lassos += 1
        if n <= n_max:
            projection = {(x, i) for x in (*props, "pfx") for i in range(n + 1)}
            for M in iter_models(inst, projection):
                M = SchemaInterpretation(M, n)
                if invert:
                    M = invert_interp(M)
                sigma = ceil_interp_inv(M)
                assert eval_ltl(sigma, 0, phi), (phi, n, sorted(M.base.true))
                models += 1
    return lassos, models
