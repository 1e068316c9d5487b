"""Finitely separated graphs and structural operations on them.

A separated graph is a finite directed graph together with, for every
vertex v, a partition C_v of the incoming edges r^-1(v) into non-empty
groups.  Groups are named by a label; the same label at different range
vertices denotes distinct groups.  All operations treat graphs as
immutable values.

The text format is line oriented::

    # comment
    vertex u
    vertex w
    edge e0 : u -> w @ red

Identifiers and group labels match [A-Za-z0-9_]+ and vertices must be
declared before edges reference them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class GraphFormatError(ValueError):
    """Raised on malformed graph descriptions, with a 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Edge:
    source: str
    range: str
    group: str


@dataclass(frozen=True)
class Group:
    """One group X of the separation: edges sharing a range and a label."""

    range: str
    label: str
    members: frozenset[str]


@dataclass(frozen=True)
class SeparatedGraph:
    vertices: frozenset[str]
    edges: dict[str, Edge]
    # scratch space for derived structures (transition digraph, closures);
    # never part of equality
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for name, e in self.edges.items():
            if e.source not in self.vertices or e.range not in self.vertices:
                raise ValueError(f"edge {name} has an undeclared endpoint")

    # -- basic accessors ------------------------------------------------

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices)

    def sorted_edges(self) -> list[str]:
        return sorted(self.edges)

    def out_edges(self, v: str) -> list[str]:
        """s^-1(v), sorted."""
        return self._indexed()[0].get(v, [])

    def in_edges(self, v: str) -> list[str]:
        """r^-1(v), sorted."""
        return self._indexed()[1].get(v, [])

    def groups_at(self, v: str) -> list[Group]:
        """C_v as a list sorted by label."""
        return self._indexed()[2].get(v, [])

    def group_of(self, edge: str) -> Group:
        """[e], the group containing the edge."""
        e = self.edges[edge]
        for x in self.groups_at(e.range):
            if edge in x.members:
                return x
        raise KeyError(edge)

    def all_groups(self) -> list[Group]:
        return [x for v in self.sorted_vertices() for x in self.groups_at(v)]

    def _indexed(self):
        if "index" not in self._cache:
            outs: dict[str, list[str]] = {}
            ins: dict[str, list[str]] = {}
            by_label: dict[tuple[str, str], set[str]] = {}
            for name in self.sorted_edges():
                e = self.edges[name]
                outs.setdefault(e.source, []).append(name)
                ins.setdefault(e.range, []).append(name)
                by_label.setdefault((e.range, e.group), set()).add(name)
            groups: dict[str, list[Group]] = {}
            for (v, label), members in sorted(by_label.items()):
                groups.setdefault(v, []).append(
                    Group(v, label, frozenset(members))
                )
            self._cache["index"] = (outs, ins, groups)
        return self._cache["index"]


@dataclass(frozen=True)
class VertexSet:
    """A vertex subset with its hereditary / C-saturated flags computed."""

    members: frozenset[str]
    hereditary: bool
    c_saturated: bool


def vertex_set(g: SeparatedGraph, members) -> VertexSet:
    h = frozenset(members)
    return VertexSet(h, is_hereditary(g, h), is_c_saturated(g, h))


_IDENT = re.compile(r"[A-Za-z0-9_]+\Z")
_EDGE_LINE = re.compile(
    r"edge\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*@\s*(\S+)\Z"
)


def parse(text: str) -> SeparatedGraph:
    """Parse a graph description.

    >>> g = parse("vertex u\\nvertex w\\nedge e : u -> w @ red\\n")
    >>> sorted(g.vertices)
    ['u', 'w']
    """
    vertices: set[str] = set()
    edges: dict[str, Edge] = {}
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("vertex"):
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError("malformed line", lineno)
            name = parts[1]
            if not _IDENT.match(name):
                raise GraphFormatError(f"bad identifier {name!r}", lineno)
            if name in seen:
                raise GraphFormatError(f"duplicate identifier {name!r}", lineno)
            seen.add(name)
            vertices.add(name)
        elif line.startswith("edge"):
            m = _EDGE_LINE.match(line)
            if not m:
                raise GraphFormatError("malformed line", lineno)
            name, src, rng, label = m.groups()
            for ident in (name, src, rng, label):
                if not _IDENT.match(ident):
                    raise GraphFormatError(f"bad identifier {ident!r}", lineno)
            if name in seen:
                raise GraphFormatError(f"duplicate identifier {name!r}", lineno)
            for v in (src, rng):
                if v not in vertices:
                    raise GraphFormatError(f"undeclared vertex {v!r}", lineno)
            seen.add(name)
            edges[name] = Edge(src, rng, label)
        else:
            raise GraphFormatError("malformed line", lineno)
    return SeparatedGraph(frozenset(vertices), edges)


def serialize(g: SeparatedGraph) -> str:
    """Deterministic textual form; parse(serialize(g)) reproduces g."""
    lines = [f"vertex {v}" for v in g.sorted_vertices()]
    for name in g.sorted_edges():
        e = g.edges[name]
        lines.append(f"edge {name} : {e.source} -> {e.range} @ {e.group}")
    return "\n".join(lines) + ("\n" if lines else "")


def full_subgraph(g: SeparatedGraph, h) -> SeparatedGraph:
    """The full subgraph on vertex set h.

    Keeps exactly the edges with both endpoints in h; groups are the
    non-empty intersections of the original groups with the kept edges.
    """
    h = frozenset(h)
    if not h <= g.vertices:
        raise ValueError("subset contains undeclared vertices")
    edges = {
        name: e
        for name, e in g.edges.items()
        if e.source in h and e.range in h
    }
    return SeparatedGraph(h, edges)


def is_hereditary(g: SeparatedGraph, h) -> bool:
    """True iff r(e) in h implies s(e) in h for every edge."""
    h = frozenset(h)
    return all(
        e.source in h for e in g.edges.values() if e.range in h
    )


def is_c_saturated(g: SeparatedGraph, h) -> bool:
    """True iff s(X) within h for some X in C_v forces v into h."""
    h = frozenset(h)
    for v in g.vertices:
        if v in h:
            continue
        for x in g.groups_at(v):
            if all(g.edges[e].source in h for e in x.members):
                return False
    return True


def quotient_graph(g: SeparatedGraph, h) -> SeparatedGraph:
    """The full subgraph on the complement of a hereditary C-saturated set."""
    h = frozenset(h)
    if not is_hereditary(g, h) or not is_c_saturated(g, h):
        raise ValueError("set must be hereditary and C-saturated")
    return full_subgraph(g, g.vertices - h)


def isolated_vertices(g: SeparatedGraph) -> frozenset[str]:
    """Vertices with no incident edges at all."""
    touched = set()
    for e in g.edges.values():
        touched.add(e.source)
        touched.add(e.range)
    return frozenset(g.vertices - touched)
