"""Symbols of the double graph, reduced words, and admissible paths.

A symbol is a pair (edge, sign) with sign +1 for e and -1 for e^-1.
Words store their symbols in application order: symbols[0] acts first.
The textual path literal reverses this (rightmost symbol applied first),
so ``f^-1.e`` denotes the path that traverses e and then f backwards.

A word is an admissible path when consecutive symbols are composable and
avoid the two forbidden patterns: a backtrack f^-1 then f, and an exit
e^-1 through the group just used to enter.  The transition digraph has
the symbols as nodes and the allowed length-2 combinations as arcs, so
its length-(n-1) walks are exactly the admissible paths of length n.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph_core import SeparatedGraph

Symbol = tuple[str, int]


def inv(sym: Symbol) -> Symbol:
    return (sym[0], -sym[1])


def symbol_key(sym: Symbol):
    # lexicographic by edge id, then e before e^-1
    return (sym[0], 0 if sym[1] > 0 else 1)


def sym_source(g: SeparatedGraph, sym: Symbol) -> str:
    e = g.edges[sym[0]]
    return e.source if sym[1] > 0 else e.range


def sym_range(g: SeparatedGraph, sym: Symbol) -> str:
    e = g.edges[sym[0]]
    return e.range if sym[1] > 0 else e.source


def transition_allowed(g: SeparatedGraph, a: Symbol, b: Symbol) -> bool:
    """Whether the length-2 word "b after a" is admissible."""
    if sym_range(g, a) != sym_source(g, b):
        return False
    if b[1] > 0:
        # backtrack: f^-1 then f
        return not (a[1] < 0 and a[0] == b[0])
    if a[1] > 0:
        # entered r(a) through [a]; may not leave through [b]^-1
        ea, eb = g.edges[a[0]], g.edges[b[0]]
        return not (ea.range == eb.range and ea.group == eb.group)
    return True


@dataclass(frozen=True)
class Word:
    """A sequence of symbols in application order.

    ``trail`` lists the visited vertices (length len+1) when consecutive
    symbols compose, and is None otherwise.  Trivial words carry their
    vertex as a one-element trail.
    """

    symbols: tuple[Symbol, ...]
    trail: tuple[str, ...] | None

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def is_trivial(self) -> bool:
        return not self.symbols

    @property
    def source(self) -> str | None:
        return self.trail[0] if self.trail else None

    @property
    def range(self) -> str | None:
        return self.trail[-1] if self.trail else None

    def i_d(self) -> Symbol:
        """First applied symbol."""
        return self.symbols[0]

    def t_d(self) -> Symbol:
        """Last applied symbol."""
        return self.symbols[-1]

    def inverse(self) -> "Word":
        syms = tuple(inv(s) for s in reversed(self.symbols))
        trail = tuple(reversed(self.trail)) if self.trail else None
        return Word(syms, trail)

    def prefix(self, k: int) -> "Word":
        """The first k applied symbols (an initial subpath)."""
        if self.trail is None:
            return Word(self.symbols[:k], None)
        return Word(self.symbols[:k], self.trail[: k + 1])

    def key(self):
        return (
            len(self.symbols),
            tuple(symbol_key(s) for s in self.symbols),
            self.trail[0] if self.trail else "",
        )


Path = Word


def trivial_word(v: str) -> Word:
    return Word((), (v,))


def word(g: SeparatedGraph, symbols) -> Word:
    """Build a word over g, computing the vertex trail if composable."""
    syms = tuple(symbols)
    for s in syms:
        if s[0] not in g.edges:
            raise ValueError(f"unknown edge {s[0]!r}")
        if s[1] not in (1, -1):
            raise ValueError(f"bad sign {s[1]!r}")
    if not syms:
        raise ValueError("trivial words need a vertex; use trivial_word")
    trail = [sym_source(g, syms[0])]
    for s in syms:
        if trail[-1] != sym_source(g, s):
            return Word(syms, None)
        trail.append(sym_range(g, s))
    return Word(syms, tuple(trail))


def parse_path(g: SeparatedGraph, text: str, base: str | None = None) -> Word:
    """Parse a path literal (dot separated, rightmost symbol applied first).

    >>> g = _demo_graph()
    >>> w = parse_path(g, "f^-1.e")
    >>> [s for s in w.symbols]
    [('e', 1), ('f', -1)]

    The literal ``1`` denotes the trivial path and requires ``base``.
    """
    text = text.strip()
    if text == "1":
        if base is None:
            raise ValueError("trivial path literal needs a base vertex")
        if base not in g.vertices:
            raise ValueError(f"unknown vertex {base!r}")
        return trivial_word(base)
    symbols = []
    for part in reversed(text.split(".")):
        part = part.strip()
        if part.endswith("^-1"):
            name, sign = part[:-3], -1
        else:
            name, sign = part, 1
        if name not in g.edges:
            raise ValueError(f"unknown edge {name!r}")
        symbols.append((name, sign))
    return word(g, symbols)


def path_literal(w: Word) -> str:
    if w.is_trivial:
        return "1"
    parts = []
    for e, sign in reversed(w.symbols):
        parts.append(e if sign > 0 else f"{e}^-1")
    return ".".join(parts)


def word_mul(g: SeparatedGraph, a: Word, b: Word) -> Word:
    """The product a*b (apply b first), with free cancellation."""
    bs, as_ = list(b.symbols), list(a.symbols)
    k = 0
    while bs and as_ and as_[0] == inv(bs[-1]):
        bs.pop()
        as_.pop(0)
        k += 1
    if not bs and not as_:
        if b.source is None:
            raise ValueError("cannot multiply words without endpoints")
        return trivial_word(b.source)
    if not bs:
        return Word(tuple(as_), a.trail[k:] if a.trail else None)
    if not as_:
        return Word(tuple(bs), b.trail[: len(bs) + 1] if b.trail else None)
    if a.trail is None or b.trail is None:
        return Word(tuple(bs + as_), None)
    if b.trail[len(bs)] != a.trail[k]:
        raise ValueError("word endpoints do not compose")
    return Word(tuple(bs + as_), b.trail[: len(bs) + 1] + a.trail[k + 1 :])


def is_admissible(g: SeparatedGraph, w: Word) -> bool:
    """True iff w is a non-trivial admissible path of g."""
    for s in w.symbols:
        if s[0] not in g.edges:
            raise ValueError(f"unknown edge {s[0]!r}")
    if w.is_trivial or w.trail is None:
        return False
    return all(
        transition_allowed(g, w.symbols[i], w.symbols[i + 1])
        for i in range(len(w.symbols) - 1)
    )


def meet(a: Word, b: Word) -> Word:
    """The longest common initial subpath of two paths from one vertex."""
    if a.source is None or a.source != b.source:
        raise ValueError("source mismatch")
    k = 0
    for x, y in zip(a.symbols, b.symbols):
        if x != y:
            break
        k += 1
    return a.prefix(k)


def is_cycle(g: SeparatedGraph, p: Word) -> bool:
    """True iff p is closed and pp is admissible as well."""
    if p.is_trivial:
        return True
    if not is_admissible(g, p) or p.source != p.range:
        return False
    return transition_allowed(g, p.t_d(), p.i_d())


def is_base_simple(g: SeparatedGraph, p: Word) -> bool:
    """True iff p is closed and only returns to its base at the end."""
    if p.is_trivial:
        return True
    if not is_admissible(g, p) or p.source != p.range:
        return False
    return all(v != p.source for v in p.trail[1:-1])


def allows_return(
    g: SeparatedGraph, p: Word, allow_trivial_beta: bool = True
) -> bool:
    """True iff some admissible beta makes (beta)(p) a closed path.

    Under the default reading the trivial beta counts, so a closed p
    allows a return by itself.
    """
    if p.is_trivial:
        raise ValueError("trivial input")
    if not is_admissible(g, p):
        raise ValueError("inadmissible path")
    if allow_trivial_beta and p.source == p.range:
        return True
    td = transition_digraph(g)
    last = p.t_d()
    for b in td.arcs.get(last, ()):
        for c in td.reachable_from(b):
            if sym_range(g, c) == p.source:
                return True
    return False


@dataclass(frozen=True)
class TransitionDigraph:
    nodes: tuple[Symbol, ...]
    arcs: dict[Symbol, tuple[Symbol, ...]]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def reachable_from(self, a: Symbol) -> frozenset[Symbol]:
        """All nodes reachable from a, including a itself."""
        closure = self._cache.setdefault("closure", {})
        if a not in closure:
            seen = {a}
            stack = [a]
            while stack:
                x = stack.pop()
                for y in self.arcs.get(x, ()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            closure[a] = frozenset(seen)
        return closure[a]

    def sccs(self) -> list[frozenset[Symbol]]:
        """Strongly connected components (Tarjan, iterative)."""
        if "sccs" in self._cache:
            return self._cache["sccs"]
        index: dict[Symbol, int] = {}
        low: dict[Symbol, int] = {}
        on_stack: set[Symbol] = set()
        stack: list[Symbol] = []
        out: list[frozenset[Symbol]] = []
        counter = [0]

        for root in self.nodes:
            if root in index:
                continue
            work = [(root, iter(self.arcs.get(root, ())))]
            index[root] = low[root] = counter[0]
            counter[0] += 1
            stack.append(root)
            on_stack.add(root)
            while work:
                node, it = work[-1]
                advanced = False
                for child in it:
                    if child not in index:
                        index[child] = low[child] = counter[0]
                        counter[0] += 1
                        stack.append(child)
                        on_stack.add(child)
                        work.append((child, iter(self.arcs.get(child, ()))))
                        advanced = True
                        break
                    if child in on_stack:
                        low[node] = min(low[node], index[child])
                if advanced:
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[node])
                if low[node] == index[node]:
                    comp = set()
                    while True:
                        x = stack.pop()
                        on_stack.discard(x)
                        comp.add(x)
                        if x == node:
                            break
                    out.append(frozenset(comp))
        self._cache["sccs"] = out
        return out

    def cyclic_sccs(self) -> list[frozenset[Symbol]]:
        """SCCs that contain a directed cycle."""
        return [
            c
            for c in self.sccs()
            if len(c) > 1
            or any(x in self.arcs.get(x, ()) for x in c)
        ]


def transition_digraph(g: SeparatedGraph) -> TransitionDigraph:
    if "td" not in g._cache:
        nodes = []
        for e in g.sorted_edges():
            nodes.append((e, 1))
            nodes.append((e, -1))
        nodes.sort(key=symbol_key)
        arcs = {
            a: tuple(
                b for b in nodes if transition_allowed(g, a, b)
            )
            for a in nodes
        }
        g._cache["td"] = TransitionDigraph(tuple(nodes), arcs)
    return g._cache["td"]


def reachable(td: TransitionDigraph, a: Symbol, b: Symbol) -> bool:
    """Whether a walk (possibly empty) leads from a to b."""
    return b in td.reachable_from(a)


def cycle_nodes(td: TransitionDigraph) -> frozenset[Symbol]:
    """Symbols lying on some directed cycle of the automaton."""
    out: set[Symbol] = set()
    for comp in td.cyclic_sccs():
        out |= comp
    return frozenset(out)


def enumerate_paths(g: SeparatedGraph, source: str, max_len: int) -> list[Word]:
    """All admissible paths from ``source`` of length <= max_len.

    Lexicographic order (by symbol sequence), so every prefix precedes
    its extensions; the trivial path comes first.
    """
    if source not in g.vertices:
        raise ValueError(f"unknown vertex {source!r}")
    td = transition_digraph(g)
    starts = sorted(
        (s for s in td.nodes if sym_source(g, s) == source), key=symbol_key
    )
    out = [trivial_word(source)]

    def grow(prefix: list[Symbol], trail: list[str]):
        out.append(Word(tuple(prefix), tuple(trail)))
        if len(prefix) == max_len:
            return
        for nxt in td.arcs.get(prefix[-1], ()):
            prefix.append(nxt)
            trail.append(sym_range(g, nxt))
            grow(prefix, trail)
            prefix.pop()
            trail.pop()

    for s in starts:
        if max_len >= 1:
            grow([s], [source, sym_range(g, s)])
    return out


def shortest_walk(
    td: TransitionDigraph, start: Symbol, goal: Symbol
) -> list[Symbol] | None:
    """A shortest node walk start..goal in the automaton (BFS)."""
    if start == goal:
        return [start]
    prev: dict[Symbol, Symbol] = {start: start}
    queue = [start]
    while queue:
        nxt_queue = []
        for x in queue:
            for y in td.arcs.get(x, ()):
                if y not in prev:
                    prev[y] = x
                    if y == goal:
                        walk = [y]
                        while walk[-1] != start:
                            walk.append(prev[walk[-1]])
                        return list(reversed(walk))
                    nxt_queue.append(y)
        queue = nxt_queue
    return None


def _demo_graph() -> SeparatedGraph:
    from .graph_core import parse

    return parse(
        "vertex u\nvertex w\n"
        "edge e : u -> w @ red\nedge f : u -> w @ blue\n"
    )
