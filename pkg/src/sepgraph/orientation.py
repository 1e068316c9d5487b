"""Edge types, proper orientations, and oriented path splitting.

On a graph that equals its own branching subgraph every edge falls into
exactly one type: on a cycle through a branching vertex (type 1),
critical (type 2), or one of two tail shapes (types 3a, 3b) read off
from the initial symbols of branching-bound closed paths.  A sign map
D: E^1 -> {+1,-1} is verified vertexwise: either the negative incoming
edges form one group and nothing positive leaves (case 1), or nothing
negative comes in and exactly one positive edge leaves (case 2; at most
one for the weak reading).  Synthesis seeds signs on type 1 edges at
branching vertices from the local orientations, propagates along
branching-bound cycles, and fixes the remaining types by their shape.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph_core import GraphFormatError, SeparatedGraph
from .admissibility import (
    Symbol,
    Word,
    inv,
    is_admissible,
    shortest_walk,
    sym_range,
    sym_source,
    symbol_key,
    transition_digraph,
    trivial_word,
)
from .condition_n import LocalOrientation, check_condition_n
from .decomposition import decompose

TYPE1 = "1"
TYPE2 = "2"
TYPE3A = "3a"
TYPE3B = "3b"


@dataclass(frozen=True)
class Orientation:
    signs: dict[str, int]
    kind: str

    @property
    def positive(self) -> frozenset[str]:
        return frozenset(e for e, s in self.signs.items() if s > 0)

    @property
    def negative(self) -> frozenset[str]:
        return frozenset(e for e, s in self.signs.items() if s < 0)


@dataclass(frozen=True)
class OrientationReport:
    kind: str  # "proper", "weak" or "invalid"
    vertex_cases: dict[str, str]  # "1", "2", "2'" or "violation"


def _i_br(
    g: SeparatedGraph, u: str, branching: frozenset[str]
) -> set[Symbol]:
    """Initial symbols of closed paths at u through a branching vertex."""
    td = transition_digraph(g)
    starts = [a for a in td.nodes if sym_source(g, a) == u]
    # state flag: some source vertex seen so far is branching
    seen: set[tuple[Symbol, bool]] = set()
    stack: list[tuple[Symbol, bool]] = []
    origin: dict[tuple[Symbol, bool], set[Symbol]] = {}
    for a in starts:
        st = (a, u in branching)
        seen.add(st)
        stack.append(st)
        origin[st] = {a}
    order = list(stack)
    # propagate origins through the product graph until stable
    arcs = td.arcs
    changed = True
    while changed:
        changed = False
        frontier = list(origin)
        for st in frontier:
            sym, flag = st
            for nxt in arcs[sym]:
                st2 = (nxt, flag or sym_source(g, nxt) in branching)
                before = origin.setdefault(st2, set())
                new = origin[st] - before
                if new:
                    before |= new
                    changed = True
    result: set[Symbol] = set()
    for (sym, flag), initials in origin.items():
        if flag and sym_range(g, sym) == u:
            result |= initials
    return result


def classify_edges(
    g: SeparatedGraph, allow_trivial_beta: bool = True
) -> dict[str, str]:
    """Type of every edge; requires g to be its own branching subgraph."""
    dec = decompose(g, allow_trivial_beta)
    if dec.e_br0.members != g.vertices:
        raise ValueError("graph is not its own branching subgraph")
    td = transition_digraph(g)
    report = check_condition_n(g, allow_trivial_beta)
    branching = frozenset(report.branching)

    t1_edges: set[str] = set()
    for scc in td.cyclic_sccs():
        if any(sym_source(g, s) in branching for s in scc):
            t1_edges |= {e for (e, _) in scc}

    i_br_cache: dict[str, set[Symbol]] = {}

    def i_br(u: str) -> set[Symbol]:
        if u not in i_br_cache:
            i_br_cache[u] = _i_br(g, u, branching)
        return i_br_cache[u]

    types: dict[str, str] = {}
    for e in g.sorted_edges():
        edge = g.edges[e]
        group = g.group_of(e).members
        t1 = e in t1_edges
        t2 = e in dec.critical_edges
        t3a = all(
            s[1] < 0 and s[0] in group for s in i_br(edge.range)
        )
        t3b = all(s == (e, 1) for s in i_br(edge.source))
        hits = [t1, t2, t3a, t3b]
        if sum(hits) != 1:
            raise RuntimeError(
                f"edge type conflict for {e!r}: "
                f"T1={t1} T2={t2} T3a={t3a} T3b={t3b}"
            )
        types[e] = (TYPE1, TYPE2, TYPE3A, TYPE3B)[hits.index(True)]
    return types


def _seed_sign(
    g: SeparatedGraph, lo: LocalOrientation, e: str
) -> int:
    """Sign of a type 1 edge incident to a branching vertex."""
    v = lo.vertex
    edge = g.edges[e]
    if lo.kind == "type1":
        neg = e in lo.group.members or edge.source == v
        pos = edge.range == v and e not in lo.group.members
    else:
        pos = e == lo.edge or edge.range == v
        neg = edge.source == v and e != lo.edge
    if pos and neg:
        raise RuntimeError(f"conflicting seed for edge {e!r} at {v!r}")
    if not pos and not neg:
        raise RuntimeError(f"edge {e!r} is not incident to {v!r}")
    return 1 if pos else -1


def synthesize_orientation(
    g: SeparatedGraph, allow_trivial_beta: bool = True
) -> Orientation:
    """A proper orientation of a graph that is its own branching
    subgraph and satisfies Condition (N)."""
    types = classify_edges(g, allow_trivial_beta)
    report = check_condition_n(g, allow_trivial_beta)
    if not report.verdict:
        raise ValueError("graph fails Condition (N)")

    signs: dict[str, int] = {}
    for v in sorted(report.branching):
        _, lo = report.branching[v]
        incident = sorted(set(g.out_edges(v)) | set(g.in_edges(v)))
        for e in incident:
            if types[e] != TYPE1:
                continue
            s = _seed_sign(g, lo, e)
            if signs.setdefault(e, s) != s:
                raise RuntimeError(f"inconsistent seeds for edge {e!r}")

    td = transition_digraph(g)
    preds: dict[Symbol, list[Symbol]] = {x: [] for x in td.nodes}
    for x in td.nodes:
        for y in td.arcs[x]:
            preds[y].append(x)
    branching = frozenset(report.branching)
    starts = sorted(
        (s for s in td.nodes if sym_source(g, s) in branching),
        key=symbol_key,
    )
    for e in g.sorted_edges():
        if types[e] != TYPE1 or e in signs:
            continue
        walk = _branching_cycle_through(g, td, preds, starts, e)
        if walk is None:
            raise RuntimeError(f"no branching cycle through {e!r}")
        e1, eps1 = walk[0]
        delta = signs[e1] * eps1  # e1 is seeded: incident and type 1
        for ei, epsi in walk:
            want = epsi * delta
            if signs.setdefault(ei, want) != want:
                raise RuntimeError(
                    f"orientation propagation conflict at {ei!r}"
                )

    for e in g.sorted_edges():
        if e not in signs:
            signs[e] = 1 if types[e] == TYPE3B else -1

    check = verify_orientation(g, signs)
    if check.kind != "proper":
        raise RuntimeError("synthesized orientation is not proper")
    return Orientation(dict(sorted(signs.items())), "proper")


def _branching_cycle_through(g, td, preds, starts, e):
    """A closed walk based at a branching vertex passing edge e."""
    for s0 in starts:
        seen0 = td.reachable_from(s0)
        for target in ((e, 1), (e, -1)):
            if target not in seen0:
                continue
            seen_t = td.reachable_from(target)
            for sk in sorted(preds[s0], key=symbol_key):
                if sk not in seen_t:
                    continue
                first = shortest_walk(td, s0, target)
                second = shortest_walk(td, target, sk)
                return first + second[1:]
    return None


def verify_orientation(
    g: SeparatedGraph, signs: dict[str, int]
) -> OrientationReport:
    """Vertexwise report on a sign map, with overall kind."""
    if set(signs) != set(g.edges):
        raise ValueError("orientation must assign a sign to every edge")
    if any(s not in (1, -1) for s in signs.values()):
        raise ValueError("signs must be +1 or -1")
    cases: dict[str, str] = {}
    for v in g.sorted_vertices():
        neg_in = frozenset(
            e for e in g.in_edges(v) if signs[e] < 0
        )
        pos_out = [e for e in g.out_edges(v) if signs[e] > 0]
        if neg_in and not pos_out and any(
            x.members == neg_in for x in g.groups_at(v)
        ):
            cases[v] = "1"
        elif not neg_in and len(pos_out) == 1:
            cases[v] = "2"
        elif not neg_in and not pos_out:
            cases[v] = "2'"
        else:
            cases[v] = "violation"
    values = set(cases.values())
    if values <= {"1", "2"}:
        kind = "proper"
    elif values <= {"1", "2", "2'"}:
        kind = "weak"
    else:
        kind = "invalid"
    return OrientationReport(kind, cases)


def decompose_oriented(
    g: SeparatedGraph, o: Orientation | dict[str, int], p: Word
) -> tuple[Word, Word]:
    """Split an admissible path as negative part after positive part.

    Returns (negative, positive) where p applies the positive part
    first; a weak or proper orientation guarantees the split exists.
    """
    signs = o.signs if isinstance(o, Orientation) else dict(o)
    report = verify_orientation(g, signs)
    if report.kind == "invalid":
        raise ValueError("orientation is not at least weak")
    if p.trail is None or not (p.is_trivial or is_admissible(g, p)):
        raise ValueError("path is not admissible")
    k = 0
    for e, eps in p.symbols:
        if signs[e] * eps > 0:
            k += 1
        else:
            break
    for e, eps in p.symbols[k:]:
        if signs[e] * eps > 0:
            raise RuntimeError(
                "positive symbol after a negative one in an oriented path"
            )
    positive = p.prefix(k)
    negative = Word(p.symbols[k:], p.trail[k:])
    return negative, positive


def parse_orientation(
    g: SeparatedGraph, text: str
) -> dict[str, int]:
    """Read `orient <edge> <+1|-1>` lines; # comments allowed."""
    signs: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "orient":
            raise GraphFormatError("malformed orientation line", lineno)
        _, e, value = parts
        if e not in g.edges:
            raise GraphFormatError(f"unknown edge {e!r}", lineno)
        if e in signs:
            raise GraphFormatError(f"duplicate edge {e!r}", lineno)
        if value not in ("+1", "-1"):
            raise GraphFormatError(
                f"sign must be +1 or -1, got {value!r}", lineno
            )
        signs[e] = 1 if value == "+1" else -1
    return signs


def serialize_orientation(
    g: SeparatedGraph, signs: dict[str, int]
) -> str:
    lines = [f"orient {e} {signs[e]:+d}" for e in sorted(signs)]
    return "\n".join(lines) + ("\n" if lines else "")
