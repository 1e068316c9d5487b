"""Hook relation, branching/branch-free/acyclic split, stratification.

A vertex u hooks into v (u -> v here) when some admissible path alpha
from u to v conjugates a genuine cycle beta at v admissibly, trivial
alpha allowed.  The vertices hooking into a branching vertex form
E_Br0; the rest form E_BF0, and the vertices hooking into nothing form
E_Ac0.  Both complements are hereditary, C-saturated and return-free,
so the graph splits into full subgraphs along them.  Branch-free graphs
stratify into linear strata by repeatedly peeling the vertices that do
not hook into a chosen maximal cycle class.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph_core import (
    SeparatedGraph,
    VertexSet,
    full_subgraph,
    is_c_saturated,
    is_hereditary,
    quotient_graph,
    vertex_set,
)
from .admissibility import (
    Symbol,
    Word,
    allows_return,
    cycle_nodes,
    inv,
    sym_range,
    sym_source,
    symbol_key,
    transition_digraph,
    word,
)
from .condition_n import is_branching


@dataclass(frozen=True)
class HookRelation:
    vertices: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def hooks(self, u: str) -> frozenset[str]:
        return frozenset(v for (a, v) in self.pairs if a == u)

    def hooked_by(self, v: str) -> frozenset[str]:
        return frozenset(u for (u, b) in self.pairs if b == v)


@dataclass(frozen=True)
class Decomposition:
    e_br0: VertexSet
    e_bf0: VertexSet
    e_ac0: VertexSet
    branching_subgraph: SeparatedGraph
    branch_free_subgraph: SeparatedGraph
    acyclic_subgraph: SeparatedGraph
    weakly_branching: frozenset[str]
    critical_edges: frozenset[str]


@dataclass(frozen=True)
class Stratification:
    strata: tuple[frozenset[str], ...]
    subgraphs: tuple[SeparatedGraph, ...]


def hook_relation(g: SeparatedGraph) -> HookRelation:
    """All pairs (u, v) with u hooking into v.

    In automaton terms u -> v holds when either u admits a cycle (the
    diagonal case, trivial alpha) or some walk a .. b with s(a)=u and
    r(b)=v continues into a cycle s1 .. sk based at v that also wraps
    around b: arcs b->s1, sk->s1 and sk->b^-1 must all exist.
    """
    td = transition_digraph(g)
    arcs = {x: set(td.arcs[x]) for x in td.nodes}
    preds: dict[Symbol, set[Symbol]] = {x: set() for x in td.nodes}
    for x in td.nodes:
        for y in td.arcs[x]:
            preds[y].add(x)
    cyc = cycle_nodes(td)

    # junction symbols: b may end the conjugator of a cycle based at r(b).
    # The cycle runs s1 .. sk with wrap arc sk -> s1; conjugation needs
    # arcs b -> s1 and sk -> b^-1.
    junction: dict[str, set[Symbol]] = {v: set() for v in g.vertices}
    for b in td.nodes:
        v = sym_range(g, b)
        found = False
        for s1 in sorted(arcs[b], key=symbol_key):
            if sym_source(g, s1) != v:
                continue
            for sk in sorted(preds[s1], key=symbol_key):
                if inv(b) in arcs[sk] and sk in td.reachable_from(s1):
                    found = True
                    break
            if found:
                break
        if found:
            junction[v].add(b)

    pairs: set[tuple[str, str]] = set()
    for u in g.sorted_vertices():
        if any(sym_source(g, s) == u for s in cyc):
            pairs.add((u, u))
        reach_u: set[Symbol] = set()
        for a in td.nodes:
            if sym_source(g, a) == u:
                reach_u |= td.reachable_from(a)
        for v in g.sorted_vertices():
            if junction[v] & reach_u:
                pairs.add((u, v))
    return HookRelation(tuple(g.sorted_vertices()), frozenset(pairs))


def _checked_vertex_set(
    g: SeparatedGraph, members: frozenset[str], name: str
) -> VertexSet:
    vs = vertex_set(g, members)
    if not (vs.hereditary and vs.c_saturated):
        raise RuntimeError(f"{name} is not hereditary and C-saturated")
    if is_return_free(g, members) is not True:
        raise RuntimeError(f"{name} is not return-free")
    return vs


def decompose(
    g: SeparatedGraph, allow_trivial_beta: bool = True
) -> Decomposition:
    """Split the vertices into E_Br0, E_BF0 and E_Ac0 full subgraphs."""
    hooks = hook_relation(g)
    branching = {
        v
        for v in g.vertices
        if is_branching(g, v, allow_trivial_beta)[0]
    }
    e_br = frozenset(
        u for (u, v) in hooks.pairs if v in branching
    )
    e_bf = g.vertices - e_br
    e_ac = frozenset(
        u for u in g.vertices if not hooks.hooks(u)
    )
    if not e_ac <= e_bf:
        raise RuntimeError("acyclic vertices must be branch-free")

    # weakly branching vertices and critical edges live on the branching
    # subgraph, where the edge-type classification applies
    sub = full_subgraph(g, e_br)
    sub_branching = {
        v
        for v in sub.vertices
        if is_branching(sub, v, allow_trivial_beta)[0]
    }
    td = transition_digraph(sub)
    weakly: set[str] = set()
    for scc in td.cyclic_sccs():
        based = {sym_source(sub, s) for s in scc}
        if based & sub_branching:
            weakly |= based
    critical = frozenset(
        e
        for e in sub.sorted_edges()
        if sub.edges[e].range in weakly
        and not allows_return(
            sub, word(sub, [(e, 1)]), allow_trivial_beta
        )
    )

    return Decomposition(
        e_br0=vertex_set(g, e_br),
        e_bf0=_checked_vertex_set(g, e_bf, "E_BF0"),
        e_ac0=_checked_vertex_set(g, e_ac, "E_Ac0"),
        branching_subgraph=sub,
        branch_free_subgraph=full_subgraph(g, e_bf),
        acyclic_subgraph=full_subgraph(g, e_ac),
        weakly_branching=frozenset(weakly),
        critical_edges=critical,
    )


def is_return_free(g: SeparatedGraph, h: frozenset[str]) -> bool | Word:
    """True, or a shortest admissible path that leaves E_H1 and returns.

    A counterexample has both endpoints in h but uses an edge with an
    endpoint outside h.  Callers must compare with `is True`: the
    returned Word is truthy as well.
    """
    h = frozenset(h)
    if not h <= g.vertices:
        raise ValueError("subset contains unknown vertices")
    if not is_hereditary(g, h):
        raise ValueError("subset is not hereditary")
    if not is_c_saturated(g, h):
        raise ValueError("subset is not C-saturated")
    td = transition_digraph(g)

    def outside(sym: Symbol) -> bool:
        e = g.edges[sym[0]]
        return not (e.source in h and e.range in h)

    # BFS over (symbol, has used an outside edge)
    start_states = [
        (a, outside(a)) for a in td.nodes if sym_source(g, a) in h
    ]
    parent: dict[tuple[Symbol, bool], tuple[Symbol, bool] | None] = {}
    queue: list[tuple[Symbol, bool]] = []
    for st in start_states:
        if st not in parent:
            parent[st] = None
            queue.append(st)
    i = 0
    goal: tuple[Symbol, bool] | None = None
    while i < len(queue) and goal is None:
        cur = queue[i]
        i += 1
        sym, used = cur
        if used and sym_range(g, sym) in h:
            goal = cur
            break
        for nxt in td.arcs[sym]:
            st = (nxt, used or outside(nxt))
            if st not in parent:
                parent[st] = cur
                queue.append(st)
    if goal is None:
        return True
    symbols: list[Symbol] = []
    cur2: tuple[Symbol, bool] | None = goal
    while cur2 is not None:
        symbols.append(cur2[0])
        cur2 = parent[cur2]
    symbols.reverse()
    return word(g, symbols)


def _cycle_classes(g: SeparatedGraph) -> list[frozenset[str]]:
    """Vertex classes of the relation "lies on a common cycle"."""
    td = transition_digraph(g)
    root: dict[str, str] = {}

    def find(x: str) -> str:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    groups: list[set[str]] = []
    for scc in td.cyclic_sccs():
        groups.append({sym_source(g, s) for s in scc})
    for vs in groups:
        for v in vs:
            root.setdefault(v, v)
        first = next(iter(sorted(vs)))
        for v in vs:
            root[find(v)] = find(first)
    classes: dict[str, set[str]] = {}
    for v in root:
        classes.setdefault(find(v), set()).add(v)
    return sorted(
        (frozenset(c) for c in classes.values()), key=lambda c: min(c)
    )


def stratify_branch_free(g: SeparatedGraph) -> Stratification:
    """Linear strata of a branch-free graph, innermost first.

    Each stratum is hereditary, C-saturated and return-free inside the
    graph left after removing the earlier strata, so the strata list
    reconstructs the graph as a tower of full subgraphs.
    """
    for v in g.sorted_vertices():
        if is_branching(g, v)[0]:
            raise ValueError(f"vertex {v!r} is branching")
    strata = _stratify(g)
    return Stratification(
        strata=tuple(strata),
        subgraphs=tuple(full_subgraph(g, s) for s in strata),
    )


def _stratify(g: SeparatedGraph) -> list[frozenset[str]]:
    if not g.vertices:
        return []
    hooks = hook_relation(g)
    e_ac = frozenset(u for u in g.vertices if not hooks.hooks(u))
    if e_ac == g.vertices:
        return [e_ac]
    if e_ac:
        _checked_vertex_set(g, e_ac, "acyclic stratum")
        return [e_ac] + _stratify(quotient_graph(g, e_ac))

    classes = _cycle_classes(g)
    if len(classes) == 1:
        return [g.vertices]

    def class_hooks_into(w: frozenset[str], v: frozenset[str]) -> bool:
        return any((a, b) in hooks.pairs for a in w for b in v)

    maximal = [
        v
        for v in classes
        if not any(
            w is not v and class_hooks_into(w, v) for w in classes
        )
    ]
    if not maximal:
        raise RuntimeError("no maximal cycle class")
    target = maximal[0]
    h = frozenset(
        u
        for u in g.vertices
        if not any((u, v) in hooks.pairs for v in target)
    )
    if not h or h == g.vertices:
        raise RuntimeError("stratification split is degenerate")
    _checked_vertex_set(g, h, "stratification split")
    return _stratify(full_subgraph(g, h)) + _stratify(
        quotient_graph(g, h)
    )
