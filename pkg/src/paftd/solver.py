"""Dynamic programming over nice tree-decompositions for P-Ext.

Tables are computed bottom-up.  A row pairs a bag-local structure (present
arguments, present attacks, labeling) with witness flags (which arguments
have seen an in-labeled attacker, resp. an undecided attacker) and the
accumulated probability mass of all compatible completions below the node.

Labels are constrained to the labeling that corresponds to the queried set:
members of S are labeled in, everything else out or undecided, and every
neighbor of an in-labeled argument must be out.  This makes the surviving
labeling unique per scenario, so the root row sums each scenario exactly
once.  Rows are only merged at forget nodes; between forgets duplicate
(structure, witness) rows may coexist, which leaves per-node tables bounded
by a function of the bag alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .core import AF, IN, OUT, PAF, UND
from .errors import BudgetExceeded, InputError
from .treedecomp import (
    FORGET,
    INTRO,
    JOIN,
    LEAF,
    NiceTreeDecomposition,
    decompose,
    make_nice,
)

try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    _mpq = None

DP_SEMANTICS = ("adm", "com", "stb")


@dataclass(frozen=True)
class NodeStats:
    kind: str
    bag_size: int
    uncertain_bag_attacks: int
    rows: int


@dataclass
class SolveResult:
    value: Fraction | float
    semantics: str
    mode: str
    width: int
    node_count: int
    node_stats: dict[int, NodeStats]
    trace: list[str] | None = None

    def max_table_rows(self) -> int:
        return max(s.rows for s in self.node_stats.values())


def _converter(mode: str):
    if mode == "float":
        return float
    if mode == "rational":
        if _mpq is not None:
            return lambda f: _mpq(f.numerator, f.denominator)
        return lambda f: f
    raise InputError(f"unknown arithmetic mode {mode!r}")


def p_ext(paf: PAF, sigma: str, S, mode: str = "rational", td=None):
    """Probability that S is a sigma-extension (root row of the DP)."""
    return solve(paf, sigma, S, mode=mode, td=td).value


def solve_with_trace(paf: PAF, sigma: str, S, mode: str = "rational", td=None):
    """Like :func:`p_ext` but also returns the per-node table dump."""
    result = solve(paf, sigma, S, mode=mode, td=td, trace=True)
    return result.value, result.trace


def solve(
    paf: PAF,
    sigma: str,
    S,
    mode: str = "rational",
    td: NiceTreeDecomposition | None = None,
    heuristic: str = "min-fill",
    order=None,
    trace: bool = False,
    deadline: float | None = None,
) -> SolveResult:
    if sigma not in DP_SEMANTICS:
        raise InputError(f"semantics {sigma!r} is not supported by the DP solver")
    S = paf.af.check_subset(S)
    conv = _converter(mode)

    if td is None:
        td = make_nice(decompose(paf.af, heuristic=heuristic, order=order))
    else:
        violations = td.validate(paf.af)
        if violations:
            raise InputError("invalid tree-decomposition: " + "; ".join(violations))

    ctx = _Context(paf, S, sigma, conv)
    tables: dict[int, list] = {}
    stats: dict[int, NodeStats] = {}
    trace_lines: list[str] | None = [] if trace else None

    for t in td.post_order():
        if deadline is not None and time.monotonic() > deadline:
            raise BudgetExceeded("solver ran out of time")
        node = td.nodes[t]
        if node.kind == LEAF:
            rows = [(frozenset(), frozenset(), (), frozenset(), frozenset(), ctx.one)]
        elif node.kind == INTRO:
            rows = _introduce(tables.pop(node.children[0]), node.arg, node.bag, ctx)
        elif node.kind == FORGET:
            rows = _forget(tables.pop(node.children[0]), node.arg, ctx)
        else:
            left = tables.pop(node.children[0])
            right = tables.pop(node.children[1])
            rows = _join(left, right, node.bag, ctx)
        tables[t] = rows
        stats[t] = NodeStats(
            node.kind,
            len(node.bag),
            sum(1 for r in ctx.bag_attacks(node.bag) if not ctx.att_certain[r]),
            len(rows),
        )
        if trace_lines is not None:
            trace_lines.extend(_dump(t, rows, mode))

    root_rows = tables[td.root]
    value = ctx.zero
    for row in root_rows:
        value = value + row[5]
    if mode == "rational" and not isinstance(value, Fraction):
        value = Fraction(int(value.numerator), int(value.denominator))
    return SolveResult(
        value,
        sigma,
        mode,
        td.width(),
        td.node_count(),
        stats,
        trace_lines,
    )


class _Context:
    """Per-solve constants: probabilities in the active number type,
    certainty flags, and attack adjacency."""

    def __init__(self, paf: PAF, S, sigma, conv):
        self.S = S
        self.sigma = sigma
        self.parg = {a: conv(p) for a, p in paf.arg_prob.items()}
        self.patt = {r: conv(p) for r, p in paf.att_prob.items()}
        self.arg_certain = {a: paf.arg_certain(a) for a in paf.af.arguments}
        self.att_certain = {r: paf.att_certain(r) for r in paf.af.attacks}
        self.one = conv(Fraction(1))
        self.zero = conv(Fraction(0))
        self.attacks = paf.af.attacks
        incident: dict[str, list] = {a: [] for a in paf.af.arguments}
        for r in sorted(paf.af.attacks):
            incident[r[0]].append(r)
            if r[1] != r[0]:
                incident[r[1]].append(r)
        self.incident = incident

    def bag_attacks(self, bag):
        return [r for r in self.incident_union(bag) if r[0] in bag and r[1] in bag]

    def incident_union(self, bag):
        seen = set()
        for a in bag:
            seen.update(self.incident[a])
        return sorted(seen)

    def labels_for(self, a: str):
        if a in self.S:
            return (IN,)
        if self.sigma == "stb":
            return (OUT,)
        return (OUT, UND)


def _introduce(rows, a, bag, ctx: _Context):
    out = []
    p_a = ctx.parg[a]
    certain_a = ctx.arg_certain[a]
    one = ctx.one
    complement = one - p_a
    s_bag = ctx.S & bag
    for present, atts, lab, ow, uw, p in rows:
        if not certain_a:
            out.append((present, atts, lab, ow, uw, p * complement))

        labd = dict(lab)
        incident = [
            (x, y)
            for x, y in ctx.incident[a]
            if (x == a or x in present) and (y == a or y in present)
        ]
        forced = tuple(r for r in incident if ctx.att_certain[r])
        optional = [r for r in incident if not ctx.att_certain[r]]

        for rmask in range(1 << len(optional)):
            factor = p_a
            chosen = list(forced)
            for i, r in enumerate(optional):
                if rmask >> i & 1:
                    chosen.append(r)
                    factor = factor * ctx.patt[r]
                else:
                    factor = factor * (one - ctx.patt[r])
            for label_a in ctx.labels_for(a):
                labd[a] = label_a
                # conflict discipline: every neighbor of an in-label is out
                ok = True
                for x, y in chosen:
                    lx, ly = labd[x], labd[y]
                    if (lx == IN and ly != OUT) or (ly == IN and lx != OUT):
                        ok = False
                        break
                if not ok:
                    continue
                new_ow, new_uw = set(ow), set(uw)
                for x, y in chosen:
                    lx = labd[x]
                    if lx == IN:
                        new_ow.add(y)
                    elif lx == UND:
                        new_uw.add(y)
                out.append(
                    (
                        present | {a},
                        atts | frozenset(chosen),
                        tuple(sorted(labd.items())),
                        frozenset(new_ow),
                        frozenset(new_uw),
                        p * factor,
                    )
                )
        del labd[a]

    if s_bag:
        out = [row for row in out if s_bag <= row[0]]
    return out


def _forget(rows, a, ctx: _Context):
    merged: dict[tuple, object] = {}
    com = ctx.sigma == "com"
    for present, atts, lab, ow, uw, p in rows:
        if a in present:
            label_a = dict(lab)[a]
            if label_a == OUT and a not in ow:
                continue
            if label_a == UND and com and a not in uw:
                continue
            present = present - {a}
            atts = frozenset(r for r in atts if a not in r)
            lab = tuple(item for item in lab if item[0] != a)
            ow = ow - {a}
            uw = uw - {a}
        key = (present, atts, lab, ow, uw)
        if key in merged:
            merged[key] = merged[key] + p
        else:
            merged[key] = p
    return [key + (p,) for key, p in merged.items()]


def _join(left, right, bag, ctx: _Context):
    by_structure: dict[tuple, list] = {}
    for row in right:
        by_structure.setdefault(row[:3], []).append(row)
    possible = ctx.bag_attacks(bag)
    commons: dict[tuple, object] = {}
    out = []
    for present, atts, lab, ow1, uw1, p1 in left:
        skey = (present, atts, lab)
        matches = by_structure.get(skey)
        if not matches:
            continue
        common = commons.get(skey)
        if common is None:
            common = ctx.one
            for x in present:
                common = common * ctx.parg[x]
            for x in bag - present:
                common = common * (ctx.one - ctx.parg[x])
            for r in atts:
                common = common * ctx.patt[r]
            for r in possible:
                if r not in atts and r[0] in present and r[1] in present:
                    common = common * (ctx.one - ctx.patt[r])
            commons[skey] = common
        for _, _, _, ow2, uw2, p2 in matches:
            out.append((present, atts, lab, ow1 | ow2, uw1 | uw2, p1 * p2 / common))
    return out


def _format_value(p, mode: str) -> str:
    return repr(p) if mode == "float" else str(p)


def _dump(node_id: int, rows, mode: str) -> list[str]:
    lines = []
    for present, atts, lab, ow, uw, p in sorted(
        rows, key=lambda r: (sorted(r[0]), sorted(r[1]), r[2], sorted(r[3]), sorted(r[4]))
    ):
        labd = dict(lab)
        ins = ",".join(sorted(x for x, l in labd.items() if l == IN))
        outs = ",".join(sorted(x for x, l in labd.items() if l == OUT))
        unds = ",".join(sorted(x for x, l in labd.items() if l == UND))
        args = ",".join(sorted(present))
        attstr = ",".join(f"{x}>{y}" for x, y in sorted(atts))
        lines.append(
            f"node={node_id} F=({args};{attstr}) L=({ins};{outs};{unds}) "
            f"lw=({','.join(sorted(ow))};{','.join(sorted(uw))}) p={_format_value(p, mode)}"
        )
    return lines
