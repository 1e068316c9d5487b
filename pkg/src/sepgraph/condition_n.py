"""Branching vertices, local orientations, and the Condition (N) verdict.

The ports of a vertex v are its outgoing edges together with its
incoming groups, S_v = s^-1(v) + C_v.  A closed path alpha at v enters
and leaves through ports iota(alpha) and tau(alpha); v is branching when
at least three ports allow a return.  A local orientation is a single
port containing every closed path's iota or tau; Condition (N) asks for
one at every branching vertex.  When none exists, three closed paths
with pairwise distinct iotas and taus combine into a witness pair of
cycles alpha, beta whose meet is proper and for which beta*alpha and
beta*alpha^-1 are cycles as well.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph_core import Group, SeparatedGraph
from .admissibility import (
    Symbol,
    Word,
    allows_return,
    inv,
    is_cycle,
    meet,
    reachable,
    shortest_walk,
    sym_range,
    sym_source,
    symbol_key,
    transition_digraph,
    word,
    word_mul,
)


@dataclass(frozen=True, order=True)
class Port:
    kind: str  # "out" for an edge port, "in" for a group port
    vertex: str
    name: str  # edge id or group label

    def render(self) -> str:
        return f"{self.kind}({self.name})"


def port(g: SeparatedGraph, sym: Symbol) -> Port:
    """The port pi(sym) used when a path starts with sym."""
    e = g.edges[sym[0]]
    if sym[1] > 0:
        return Port("out", e.source, sym[0])
    return Port("in", e.range, e.group)


def ports_at(g: SeparatedGraph, v: str) -> list[Port]:
    out = [Port("out", v, e) for e in g.out_edges(v)]
    ins = [Port("in", v, x.label) for x in g.groups_at(v)]
    return sorted(out + ins)


def iota(g: SeparatedGraph, p: Word) -> Port:
    return port(g, p.i_d())


def tau(g: SeparatedGraph, p: Word) -> Port:
    return port(g, inv(p.t_d()))


@dataclass(frozen=True)
class RealizablePairs:
    vertex: str
    # (iota, tau) -> a closed path of minimal length realizing the pair
    pairs: dict[tuple[Port, Port], Word]

    def pair_set(self) -> frozenset[tuple[Port, Port]]:
        return frozenset(self.pairs)


@dataclass(frozen=True)
class LocalOrientation:
    vertex: str
    kind: str  # "type1" or "type2"
    group: Group | None = None  # X_v when type1
    edge: str | None = None  # e_v when type2

    @property
    def port(self) -> Port:
        if self.kind == "type1":
            return Port("in", self.vertex, self.group.label)
        return Port("out", self.vertex, self.edge)


@dataclass(frozen=True)
class FailureWitness:
    """Cycles alpha = delta*gamma and beta = epsilon*gamma at a vertex
    with gamma their proper meet; beta*alpha and beta*alpha^-1 are
    cycles too."""

    vertex: str
    alpha: Word
    beta: Word
    gamma: Word
    delta: Word
    epsilon: Word


@dataclass(frozen=True)
class ConditionNReport:
    verdict: bool
    # branching vertex -> (return count, LocalOrientation | FailureWitness)
    branching: dict[str, tuple[int, LocalOrientation | FailureWitness]]
    # diagnostic: return counts for every vertex
    return_counts: dict[str, int]


def realizable_pairs(g: SeparatedGraph, v: str) -> RealizablePairs:
    """All (iota, tau) pairs of closed paths at v, with minimal witnesses.

    A pair is realized exactly when the automaton walks from a start
    symbol a (s(a)=v) to an end symbol c (r(c)=v); the single-symbol
    closed paths appear as the empty walks a=c.
    """
    if v not in g.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    td = transition_digraph(g)
    starts = [a for a in td.nodes if sym_source(g, a) == v]
    ends = [c for c in td.nodes if sym_range(g, c) == v]
    best: dict[tuple[Port, Port], Word] = {}
    for a in starts:
        seen = td.reachable_from(a)
        for c in ends:
            if c not in seen:
                continue
            key = (port(g, a), port(g, inv(c)))
            walk = shortest_walk(td, a, c)
            w = word(g, walk)
            if key not in best or w.key() < best[key].key():
                best[key] = w
    return RealizablePairs(v, best)


def is_branching(
    g: SeparatedGraph, v: str, allow_trivial_beta: bool = True
) -> tuple[bool, int]:
    """Whether at least three ports of v allow a return, and the count."""
    if v not in g.vertices:
        raise ValueError(f"unknown vertex {v!r}")
    returning: set[Port] = set()
    for e in g.out_edges(v):
        sym: Symbol = (e, 1)
        if allows_return(g, word(g, [sym]), allow_trivial_beta):
            returning.add(port(g, sym))
    for x in g.groups_at(v):
        for e in sorted(x.members):
            sym = (e, -1)
            if allows_return(g, word(g, [sym]), allow_trivial_beta):
                returning.add(port(g, sym))
                break
    count = len(returning)
    return count >= 3, count


def local_orientation(
    g: SeparatedGraph, v: str
) -> LocalOrientation | FailureWitness:
    """The unique covering port of a branching vertex, or a witness.

    The covering port lies in {iota, tau} of every realizable pair.  If
    none exists, three pairs with pairwise distinct iotas and pairwise
    distinct taus are realized by closed paths a1, a2, a3 and the
    witness cycles are alpha = a2^-1 * a1 and beta = a3^-1 * a1.
    """
    branching, _ = is_branching(g, v)
    if not branching:
        raise ValueError(f"vertex {v!r} is not branching")
    rp = realizable_pairs(g, v)
    pairs = sorted(rp.pairs)
    covering = [
        s for s in ports_at(g, v) if all(s in pq for pq in pairs)
    ]
    if covering:
        if len(covering) > 1:
            raise RuntimeError(
                f"multiple covering ports at branching vertex {v!r}"
            )
        s = covering[0]
        if s.kind == "in":
            x = next(
                x for x in g.groups_at(v) if x.label == s.name
            )
            return LocalOrientation(v, "type1", group=x)
        return LocalOrientation(v, "type2", edge=s.name)

    for triple in itertools.combinations(pairs, 3):
        iotas = {p for p, _ in triple}
        taus = {q for _, q in triple}
        if len(iotas) == 3 and len(taus) == 3:
            a1, a2, a3 = (rp.pairs[pq] for pq in triple)
            alpha = word_mul(g, a2.inverse(), a1)
            beta = word_mul(g, a3.inverse(), a1)
            gamma = meet(alpha, beta)
            witness = FailureWitness(
                vertex=v,
                alpha=alpha,
                beta=beta,
                gamma=gamma,
                delta=a2.inverse(),
                epsilon=a3.inverse(),
            )
            _check_witness(g, witness)
            return witness
    raise RuntimeError(
        f"no covering port and no witness triple at {v!r}"
    )


def _check_witness(g: SeparatedGraph, fw: FailureWitness) -> None:
    alpha, beta = fw.alpha, fw.beta
    ok = (
        is_cycle(g, alpha)
        and is_cycle(g, beta)
        and is_cycle(g, word_mul(g, beta, alpha))
        and is_cycle(g, word_mul(g, beta, alpha.inverse()))
        and len(fw.gamma) < len(alpha)
        and len(fw.gamma) < len(beta)
    )
    if not ok:
        raise RuntimeError(f"invalid witness at {fw.vertex!r}")


def check_condition_n(
    g: SeparatedGraph, allow_trivial_beta: bool = True
) -> ConditionNReport:
    """Decide Condition (N): every branching vertex has a covering port."""
    branching: dict[str, tuple[int, LocalOrientation | FailureWitness]] = {}
    counts: dict[str, int] = {}
    verdict = True
    for v in g.sorted_vertices():
        is_br, count = is_branching(g, v, allow_trivial_beta)
        counts[v] = count
        if not is_br:
            continue
        res = local_orientation(g, v)
        if isinstance(res, FailureWitness):
            verdict = False
        branching[v] = (count, res)
    return ConditionNReport(verdict, branching, counts)
