"""Maps between schema interpretations and UP (lasso) interpretations.

``floor_interp`` encodes the parameter value as an initial segment of the
variable ``lt_n``; ``ceil_interp`` encodes a lasso as a schema interpretation
whose ``pfx`` variable marks the prefix and whose parameter is the last
position of the loop.  Both come with inverses, a segment recognizer and
plain-text formats.
"""

from __future__ import annotations

import re
from typing import NamedTuple

from .ltl import UPInterpretation, labeling
from .schema import PropInterpretation, SchemaInterpretation

LT_N = "lt_n"
EQ_N = "eq_n"
PFX = "pfx"
EQ_K = "eq_k"
RESERVED = frozenset({LT_N, EQ_N, PFX, EQ_K})
RESERVED_PREFIXES = ("sub_", "subp_", "evq_", "st_", "act_")


def is_reserved(name: str) -> bool:
    return name in RESERVED or name.startswith(RESERVED_PREFIXES)


def _check_names(names, forbidden, prefixes=()):
    bad = sorted(v for v in names if v in forbidden or v.startswith(prefixes))
    if bad:
        raise ValueError(f"reserved variable name(s) in use: {', '.join(bad)}")


# -- segments ------------------------------------------------------------------

class SegmentReport(NamedTuple):
    kind: str  # "initial" | "two_initial" | "none"
    short: int | None = None  # initial length, or short length of a 2-initial segment
    long: int | None = None  # long length of a 2-initial segment
    var: str = ""


def segment_report(obj, var: str) -> SegmentReport:
    """Recognize an initial segment (lasso) or a 2-initial segment (schema side).

    On a lasso, ``var`` must hold exactly at the times below some ``k``.  On a
    schema interpretation ``(sigma, n)`` it must hold exactly at the indices
    below some ``k <= n``; indices above ``n`` are not inspected.
    """
    if isinstance(obj, UPInterpretation):
        values = [var in s for s in obj.states]
        if any(var in s for s in obj.loop):
            return SegmentReport("none", var=var)
        k = values.index(False)
        if any(values[k:]):
            return SegmentReport("none", var=var)
        return SegmentReport("initial", k, None, var)
    values = [(var, i) in obj.base for i in range(obj.n + 1)]
    if values[-1]:
        return SegmentReport("none", var=var)
    k = values.index(False)
    if any(values[k:]):
        return SegmentReport("none", var=var)
    return SegmentReport("two_initial", k, obj.n + 1, var)


# -- floor side ------------------------------------------------------------------

def floor_interp(interp: SchemaInterpretation) -> UPInterpretation:
    """Lasso whose state at time t holds the props p with (p, t) true, plus
    ``lt_n`` for t < n and ``eq_n`` at t = n; it ends in an empty loop."""
    names = {p for p, _ in interp.base.true}
    _check_names(names, {LT_N, EQ_N})
    n = interp.n
    top = max((i for _, i in interp.base.true), default=0)
    states = [set() for _ in range(max(n + 1, top + 1))]
    for p, i in interp.base.true:
        states[i].add(p)
    for t in range(n):
        states[t].add(LT_N)
    states[n].add(EQ_N)
    return UPInterpretation(states, [set()])


def floor_interp_inv(sigma: UPInterpretation, horizon: int | None = None, reach: int = 0) -> SchemaInterpretation:
    """Inverse of :func:`floor_interp` on initial segments for ``lt_n``.

    The result keeps the non-reserved props at times ``< horizon`` (default:
    the lasso's unrolling ``k+l``, at least ``n+1+reach``).  To read back a
    model of a translated schema whose indices reach ``n+c``, pass
    ``reach=c``: the lasso may keep repeating true atoms past ``k+l``.
    """
    rep = segment_report(sigma, LT_N)
    if rep.kind != "initial":
        raise ValueError("interpretation is not an initial segment for lt_n")
    n = rep.short
    if horizon is None:
        horizon = max(sigma.k + sigma.l, n + 1 + reach)
    pairs = {
        (p, t)
        for t in range(horizon)
        for p in sigma.state(t)
        if p not in (LT_N, EQ_N)
    }
    return SchemaInterpretation(PropInterpretation(frozenset(pairs)), n)


# -- ceil side -------------------------------------------------------------------

def ceil_interp(sigma: UPInterpretation, phi=None, opts=None) -> SchemaInterpretation:
    """Schema interpretation of a lasso, with ``n = k+l-1``.

    ``pfx`` holds at indices below ``k`` and ``eq_k`` at index ``k``; props are
    copied for indices ``0..n``.  When ``phi`` is given, every subformula
    variable of its translation is set to the truth value of its subformula,
    and the primed auxiliaries to their loop-bounded variant.
    """
    names = sigma.variables()
    _check_names(names, {PFX, EQ_K}, ("sub_", "subp_"))
    k, n = sigma.k, sigma.k + sigma.l - 1
    pairs = {(p, t) for t in range(n + 1) for p in sigma.states[t]}
    pairs |= {(PFX, t) for t in range(k)}
    pairs.add((EQ_K, k))
    if phi is not None:
        pairs |= _subformula_pairs(sigma, phi, opts)
    return SchemaInterpretation(PropInterpretation(frozenset(pairs)), n)


def _subformula_pairs(sigma, phi, opts):
    from .ceil import subformula_table  # ceil builds on this module

    table = subformula_table(phi, opts)
    n = sigma.k + sigma.l - 1
    values = labeling(sigma, table.formula)
    pairs = set()
    for psi in table.order:
        name = table.names.get(psi)
        if name is None:
            continue
        mask = values[psi]
        pairs |= {(name, t) for t in range(n + 1) if (mask >> t) & 1}
        primed = table.primed.get(psi)
        if primed is not None:
            bits = _primed_bits(psi, values, n)
            pairs |= {(primed, t) for t in range(n + 1) if bits[t]}
    return pairs


def _primed_bits(psi, values, n):
    # loop-bounded variants: the witness must occur no later than n
    from .ltl import Always, Eventually, Until

    def bit(node, t):
        return bool((values[node] >> t) & 1)

    out = [False] * (n + 2)
    if isinstance(psi, Always):
        out[n + 1] = True
        for t in range(n, -1, -1):
            out[t] = bit(psi.arg, t) and out[t + 1]
        return out
    if isinstance(psi, Eventually):
        hold, goal = None, psi.arg
    elif isinstance(psi, Until):
        hold, goal = psi.left, psi.right
    else:
        raise TypeError(f"no primed variant for {psi!r}")
    for t in range(n, -1, -1):
        out[t] = bit(goal, t) or ((hold is None or bit(hold, t)) and out[t + 1])
    return out


def ceil_interp_inv(interp: SchemaInterpretation) -> UPInterpretation:
    """Lasso with prefix = indices below the short length of ``pfx`` and
    loop = the remaining indices up to ``n``; reserved variables are dropped."""
    rep = segment_report(interp, PFX)
    if rep.kind != "two_initial":
        raise ValueError("interpretation is not a 2-initial segment for pfx")
    k, n = rep.short, interp.n
    states = [set() for _ in range(n + 1)]
    for p, i in interp.base.true:
        if i <= n and not is_reserved(p):
            states[i].add(p)
    return UPInterpretation(states[:k], states[k:])


def invert_interp(interp: SchemaInterpretation) -> SchemaInterpretation:
    """Reverse indices ``0..n`` (index j becomes n-j); indices above n are dropped."""
    n = interp.n
    pairs = {(p, n - i) for p, i in interp.base.true if i <= n}
    return SchemaInterpretation(PropInterpretation(frozenset(pairs)), n)


# -- text formats --------------------------------------------------------------

def render_schema_interp(interp: SchemaInterpretation) -> str:
    """``n=<nat>;`` then one ``var: idx,idx,...;`` line per variable."""
    by_var: dict[str, list[int]] = {}
    for p, i in interp.base.true:
        by_var.setdefault(p, []).append(i)
    lines = [f"n={interp.n};"]
    for p in sorted(by_var):
        lines.append(f"{p}: {','.join(str(i) for i in sorted(by_var[p]))};")
    return "\n".join(lines)


_ENTRY = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:\s*([0-9,\s]*)$")


def parse_schema_interp(text: str) -> SchemaInterpretation:
    n = None
    pairs = set()
    for raw in text.replace("\n", ";").split(";"):
        entry = raw.strip()
        if not entry or entry.startswith("#"):
            continue
        if entry.startswith("n") and "=" in entry:
            key, _, value = entry.partition("=")
            if key.strip() != "n" or not value.strip().isdigit():
                raise ValueError(f"bad parameter entry {entry!r}")
            n = int(value)
            continue
        m = _ENTRY.match(entry)
        if m is None:
            raise ValueError(f"bad interpretation entry {entry!r}")
        for item in m.group(2).split(","):
            if item.strip():
                pairs.add((m.group(1), int(item)))
    if n is None:
        raise ValueError("missing 'n=<nat>' entry")
    return SchemaInterpretation(PropInterpretation(frozenset(pairs)), n)


def _render_states(states) -> str:
    return " ".join("{" + " ".join(sorted(s)) + "}" for s in states)


def render_up(sigma: UPInterpretation) -> str:
    prefix = _render_states(sigma.prefix)
    return f"prefix: {prefix + ' ' if prefix else ''}; loop: {_render_states(sigma.loop)}"


_STATE = re.compile(r"\{([^{}]*)\}")


def _parse_states(text: str, where: str):
    rest = _STATE.sub("", text).strip()
    if rest:
        raise ValueError(f"unexpected text in {where}: {rest!r}")
    states = []
    for body in _STATE.findall(text):
        names = body.split()
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"bad proposition name {name!r}")
        states.append(set(names))
    return states


def parse_up(text: str) -> UPInterpretation:
    m = re.fullmatch(r"\s*prefix\s*:(.*);\s*loop\s*:(.*?)\s*", text, re.S)
    if m is None:
        raise ValueError("expected 'prefix: {..} ... ; loop: {..} ...'")
    prefix = _parse_states(m.group(1), "prefix")
    loop = _parse_states(m.group(2), "loop")
    if not loop:
        raise ValueError("the loop must contain at least one state")
    return UPInterpretation(prefix, loop)


def parse_interp(text: str):
    """Either format, recognized by its leading keyword."""
    if text.lstrip().startswith("prefix"):
        return parse_up(text)
    return parse_schema_interp(text)


__all__ = [
    "LT_N", "EQ_N", "PFX", "EQ_K", "RESERVED", "is_reserved", "SegmentReport",
    "segment_report", "floor_interp", "floor_interp_inv", "ceil_interp",
    "ceil_interp_inv", "invert_interp", "render_schema_interp",
    "parse_schema_interp", "render_up", "parse_up", "parse_interp",
]
