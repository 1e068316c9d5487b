"""Finite-depth simulation of the partial action on configurations.

A pattern is the ball of radius `depth` of a configuration based at a
vertex: a prefix-closed set of admissible words (application order,
empty word included) where every interior member extends by all allowed
forward edges plus exactly one chosen inverse edge per group, except
that arriving forward through f forces the choice for [f] back to the
parent.  Words act by right translation m -> m * w^-1, shrinking the
depth by |w|.  Properly oriented graphs give Folner sets: the unique
positively oriented member of each length.  A Condition (N) failure
witness generates a pattern fixed by both cycles, and branch-free
strata give linear Folner sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .graph_core import SeparatedGraph
from .admissibility import (
    Symbol,
    Word,
    cycle_nodes,
    inv,
    is_admissible,
    path_literal,
    sym_range,
    sym_source,
    symbol_key,
    transition_digraph,
    trivial_word,
    word,
)
from .condition_n import FailureWitness, is_branching
from .orientation import Orientation, verify_orientation

Member = tuple[Symbol, ...]


@dataclass(frozen=True)
class Pattern:
    base: str
    depth: int
    members: frozenset[Member]

    def __len__(self) -> int:
        return len(self.members)


def _member_key(m: Member) -> tuple:
    # (e, -s) sorts forward symbols before inverses, same as symbol_key
    return (len(m), tuple((e, -s) for e, s in m))


def _mul(x: Member, y: Member) -> Member:
    """The reduced product x * y, applying y first."""
    left = list(y)
    i = 0
    while left and i < len(x) and x[i] == inv(left[-1]):
        left.pop()
        i += 1
    return tuple(left) + tuple(x[i:])


def _member_word(g: SeparatedGraph, base: str, m: Member) -> Word:
    return word(g, list(m)) if m else trivial_word(base)


def _extension_slots(
    g: SeparatedGraph, v: str, arrival: Symbol | None
) -> tuple[list[str], list]:
    """Allowed forward edges and the groups with a free inverse choice."""
    forwards = list(g.out_edges(v))
    if arrival is not None and arrival[1] < 0:
        forwards = [e for e in forwards if e != arrival[0]]
    free_groups = []
    for x in g.groups_at(v):
        if (
            arrival is not None
            and arrival[1] > 0
            and arrival[0] in x.members
        ):
            continue  # choice forced back to the parent
        free_groups.append(x)
    return forwards, free_groups


def member_ranges(g: SeparatedGraph, p: Pattern) -> dict[Member, str]:
    """Range vertex of every member; raises if the set is malformed."""
    ranges: dict[Member, str] = {}
    for m in sorted(p.members, key=len):
        if not m:
            ranges[m] = p.base
            continue
        parent = m[:-1]
        if parent not in ranges:
            raise ValueError("pattern members are not prefix closed")
        e, eps = m[-1]
        if e not in g.edges or eps not in (1, -1):
            raise ValueError(f"unknown symbol in member {m!r}")
        if sym_source(g, m[-1]) != ranges[parent]:
            raise ValueError(f"member {m!r} does not compose")
        ranges[m] = sym_range(g, m[-1])
    return ranges


def check_pattern(g: SeparatedGraph, p: Pattern) -> None:
    """Raise ValueError unless p is a valid pattern."""
    if p.base not in g.vertices:
        raise ValueError(f"unknown base vertex {p.base!r}")
    if p.depth < 0:
        raise ValueError("depth must be non-negative")
    if () not in p.members:
        raise ValueError("pattern must contain the empty word")
    if any(len(m) > p.depth for m in p.members):
        raise ValueError("member longer than the pattern depth")
    ranges = member_ranges(g, p)
    children: dict[Member, list[Symbol]] = {m: [] for m in p.members}
    for m in p.members:
        if m:
            children[m[:-1]].append(m[-1])
    for m in p.members:
        if len(m) == p.depth:
            continue
        arrival = m[-1] if m else None
        forwards, free_groups = _extension_slots(g, ranges[m], arrival)
        present = children[m]
        fwd_present = {s[0] for s in present if s[1] > 0}
        if fwd_present != set(forwards):
            raise ValueError(
                f"member {m!r} has forward extensions {sorted(fwd_present)},"
                f" expected {sorted(forwards)}"
            )
        inv_present = [s[0] for s in present if s[1] < 0]
        for x in free_groups:
            chosen = [e for e in inv_present if e in x.members]
            if len(chosen) != 1:
                raise ValueError(
                    f"member {m!r} must choose exactly one inverse edge"
                    f" in group {x.label!r}"
                )
        allowed = set().union(*(x.members for x in free_groups)) if (
            free_groups
        ) else set()
        stray = [e for e in inv_present if e not in allowed]
        if stray:
            raise ValueError(
                f"member {m!r} has inverse extensions {stray} outside"
                " the free groups"
            )


def enumerate_patterns(
    g: SeparatedGraph, base: str, depth: int
) -> list[Pattern]:
    """All patterns at the given base and depth, in choice order."""
    if base not in g.vertices:
        raise ValueError(f"unknown vertex {base!r}")
    if depth < 0:
        raise ValueError("depth must be non-negative")

    def grow(members: dict[Member, str], level: int):
        if level == depth:
            yield frozenset(members)
            return
        interior = sorted(
            (m for m in members if len(m) == level), key=_member_key
        )
        fixed: list[tuple[Member, Symbol]] = []
        slots: list[tuple[Member, list[str]]] = []
        for m in interior:
            arrival = m[-1] if m else None
            forwards, free_groups = _extension_slots(
                g, members[m], arrival
            )
            fixed.extend((m, (e, 1)) for e in forwards)
            for x in free_groups:
                slots.append((m, sorted(x.members)))
        for combo in itertools.product(*(opts for _, opts in slots)):
            new = dict(members)
            for m, sym in fixed:
                new[m + (sym,)] = sym_range(g, sym)
            for (m, _), e in zip(slots, combo):
                new[m + ((e, -1),)] = sym_range(g, (e, -1))
            yield from grow(new, level + 1)

    return [
        Pattern(base, depth, fs) for fs in grow({(): base}, 0)
    ]


def domain_nonempty(g: SeparatedGraph, w: Word) -> bool:
    """Whether some pattern admits w, i.e. w is trivial or admissible."""
    return w.is_trivial or is_admissible(g, w)


def act(g: SeparatedGraph, p: Pattern, w: Word) -> Pattern:
    """Translate the pattern by w: members map to m * w^-1.

    Requires w to be a member of p; the result is based at r(w) with
    depth reduced by |w|.
    """
    if w.trail is None:
        raise ValueError("word does not compose")
    if w.is_trivial:
        if w.source != p.base:
            raise ValueError("trivial word based at a different vertex")
        return p
    tw = w.symbols
    if tw not in p.members:
        if len(tw) > p.depth:
            raise ValueError("pattern depth exhausted")
        raise ValueError("word is outside the pattern domain")
    new_depth = p.depth - len(tw)
    w_inv = tuple(inv(s) for s in reversed(tw))
    members = frozenset(
        r
        for m in p.members
        if len(r := _mul(m, w_inv)) <= new_depth
    )
    result = Pattern(w.range, new_depth, members)
    check_pattern(g, result)
    return result


def pattern_containing(
    g: SeparatedGraph, base: str, seeds: list[Word], depth: int
) -> Pattern:
    """The canonical pattern through the seed words.

    Free inverse choices follow the seeds where they dictate one and
    otherwise take the least edge label; incompatible seeds raise.
    """
    if base not in g.vertices:
        raise ValueError(f"unknown vertex {base!r}")
    forced: dict[tuple[Member, tuple[str, str]], str] = {}
    members: dict[Member, str] = {(): base}
    for s in seeds:
        if s.is_trivial:
            if s.source != base:
                raise ValueError("seed based at a different vertex")
            continue
        if s.source != base or not is_admissible(g, s):
            raise ValueError(f"seed {path_literal(s)!r} is not admissible"
                             " from the base")
        if len(s) > depth:
            raise ValueError(f"seed {path_literal(s)!r} exceeds the depth")
        for k, sym in enumerate(s.symbols):
            parent = s.symbols[:k]
            members[s.symbols[: k + 1]] = s.trail[k + 1]
            if sym[1] < 0:
                x = g.group_of(sym[0])
                key = (parent, (x.range, x.label))
                if forced.setdefault(key, sym[0]) != sym[0]:
                    raise ValueError(
                        "seed words force incompatible choices"
                    )
    level = [()]
    for _ in range(depth):
        nxt: list[Member] = []
        for m in level:
            arrival = m[-1] if m else None
            forwards, free_groups = _extension_slots(
                g, members[m], arrival
            )
            for e in forwards:
                child = m + (((e, 1)),)
                if child not in members:
                    members[child] = sym_range(g, (e, 1))
                nxt.append(child)
            for x in free_groups:
                e = forced.get((m, (x.range, x.label)), min(x.members))
                child = m + ((e, -1),)
                if child not in members:
                    members[child] = sym_range(g, (e, -1))
                nxt.append(child)
        level = nxt
    return Pattern(base, depth, frozenset(members))


def _proper_signs(
    g: SeparatedGraph, o: Orientation | dict[str, int]
) -> dict[str, int]:
    signs = o.signs if isinstance(o, Orientation) else dict(o)
    if verify_orientation(g, signs).kind != "proper":
        raise ValueError("orientation is not proper")
    return signs


def folner_set(
    g: SeparatedGraph,
    o: Orientation | dict[str, int],
    p: Pattern,
    n: int,
    include_identity: bool = False,
) -> tuple[Word, ...]:
    """The words xi_1 .. xi_n: unique positively oriented members of
    each length up to n."""
    signs = _proper_signs(g, o)
    if not 1 <= n <= p.depth:
        raise ValueError("index must be between 1 and the pattern depth")
    children: dict[Member, list[Symbol]] = {}
    for m in p.members:
        if m:
            children.setdefault(m[:-1], []).append(m[-1])
    out: list[Word] = []
    if include_identity:
        out.append(trivial_word(p.base))
    cur: Member = ()
    for _ in range(n):
        positive = [
            s
            for s in children.get(cur, [])
            if signs[s[0]] * s[1] > 0
        ]
        if len(positive) != 1:
            raise RuntimeError(
                "positively oriented continuation is not unique"
            )
        cur = cur + (positive[0],)
        out.append(word(g, list(cur)))
    return tuple(out)


def folner_ratio(
    g: SeparatedGraph,
    o: Orientation | dict[str, int],
    p: Pattern,
    n: int,
    w: Word,
) -> Fraction:
    """|F_n * w^-1 minus F_n after translation| / n, exactly."""
    if len(w) + n > p.depth:
        raise ValueError("pattern depth exhausted")
    f_set = {x.symbols for x in folner_set(g, o, p, n)}
    q = act(g, p, w)
    g_set = {x.symbols for x in folner_set(g, o, q, n)}
    w_inv = tuple(inv(s) for s in reversed(w.symbols))
    moved = {_mul(f, w_inv) for f in f_set}
    return Fraction(len(moved - g_set), n)


def folner_mean_check(
    g: SeparatedGraph,
    o: Orientation | dict[str, int],
    p: Pattern,
    n: int,
    w: Word,
) -> tuple[Fraction, Fraction]:
    """L1 distance between the translated and target uniform means,
    and the bound 2 r1 + 2 r2 from the two translation ratios."""
    if len(w) + n > p.depth:
        raise ValueError("pattern depth exhausted")
    f_set = {x.symbols for x in folner_set(g, o, p, n)}
    q = act(g, p, w)
    g_set = {x.symbols for x in folner_set(g, o, q, n)}
    tw = w.symbols
    w_inv = tuple(inv(s) for s in reversed(tw))
    a = {_mul(f, w_inv) for f in f_set}
    lhs = Fraction(len(a - g_set) + len(g_set - a), n)
    r1 = Fraction(len(a - g_set), n)
    r2 = Fraction(len({_mul(b, tw) for b in g_set} - f_set), n)
    return lhs, 2 * r1 + 2 * r2


def stabilizer_witness(
    g: SeparatedGraph,
    fw: FailureWitness,
    depth: int,
    slack: int | None = None,
) -> tuple[Pattern, bool]:
    """A pattern fixed by both witness cycles, and whether the action
    of alpha and beta on it verifies at the common depth.

    The construction removes the four cones of alpha, beta and their
    inverse directions from the canonical pattern through them, then
    closes the remainder under translation by the two cycles within
    depth + slack before truncating to the requested depth.
    """
    alpha, beta = fw.alpha, fw.beta
    longest = max(len(alpha), len(beta))
    if depth < longest:
        raise ValueError("depth too small for the witness cycles")
    if slack is None:
        slack = longest
    v = fw.vertex
    back_a = word(g, [inv(alpha.t_d())])
    back_b = word(g, [inv(beta.t_d())])
    seeds = [alpha, beta, back_a, back_b]
    eta = pattern_containing(g, v, seeds, depth + slack)
    cones: dict[int, set[Member]] = {}
    for s in seeds:
        cones.setdefault(len(s.symbols), set()).add(s.symbols)
    chi = {
        m
        for m in eta.members
        if not any(m[:k] in cs for k, cs in cones.items())
    }
    letters = [
        alpha.symbols,
        beta.symbols,
        tuple(inv(s) for s in reversed(alpha.symbols)),
        tuple(inv(s) for s in reversed(beta.symbols)),
    ]
    bound = depth + slack
    closed = set(chi)
    queue = sorted(chi)
    while queue:
        x = queue.pop()
        for lt in letters:
            y = _mul(x, lt)
            if len(y) <= bound and y not in closed:
                closed.add(y)
                queue.append(y)
    members = frozenset(m for m in closed if len(m) <= depth)
    pattern = Pattern(v, depth, members)
    try:
        check_pattern(g, pattern)
    except ValueError as exc:
        raise RuntimeError(
            f"stabilizer pattern is malformed ({exc}); increase slack"
        ) from exc
    verified = True
    for cycle in (alpha, beta):
        moved = act(g, pattern, cycle)
        cut = pattern.depth - len(cycle)
        expected = frozenset(
            m for m in pattern.members if len(m) <= cut
        )
        if moved.base != v or moved.members != expected:
            verified = False
    return pattern, verified


def free_words_distinct(
    g: SeparatedGraph, fw: FailureWitness, max_letters: int = 3
) -> tuple[int, int]:
    """(number of reduced two-letter-alphabet words up to the length,
    number of distinct reduced products they induce)."""
    letters = {
        "a": fw.alpha.symbols,
        "A": tuple(inv(s) for s in reversed(fw.alpha.symbols)),
        "b": fw.beta.symbols,
        "B": tuple(inv(s) for s in reversed(fw.beta.symbols)),
    }
    opposite = {"a": "A", "A": "a", "b": "B", "B": "b"}
    products: list[Member] = [()]
    frontier: list[tuple[str, Member]] = [("", ())]
    for _ in range(max_letters):
        nxt: list[tuple[str, Member]] = []
        for word_so_far, prod in frontier:
            for letter, tw in letters.items():
                if word_so_far and opposite[letter] == word_so_far[-1]:
                    continue
                nxt.append((word_so_far + letter, _mul(prod, tw)))
        products.extend(p for _, p in nxt)
        frontier = nxt
    return len(products), len(set(products))


def linear_folner(g: SeparatedGraph, p: Pattern) -> frozenset[Word]:
    """Members ranging over the cycle vertices of a branch-free graph
    with at most one cycle class."""
    for v in g.sorted_vertices():
        if is_branching(g, v)[0]:
            raise ValueError(f"vertex {v!r} is branching")
    td = transition_digraph(g)
    cycle_vs = {sym_source(g, s) for s in cycle_nodes(td)}
    classes: list[set[str]] = []
    for scc in td.cyclic_sccs():
        vs = {sym_source(g, s) for s in scc}
        merged = [c for c in classes if c & vs]
        rest = [c for c in classes if not (c & vs)]
        classes = rest + [set().union(vs, *merged)]
    if len(classes) > 1:
        raise ValueError("graph has more than one cycle class")
    ranges = member_ranges(g, p)
    return frozenset(
        _member_word(g, p.base, m)
        for m, v in ranges.items()
        if v in cycle_vs
    )


def pattern_dump(g: SeparatedGraph, p: Pattern) -> str:
    """Printable form: header line, then one `<path> @ <vertex>` line
    per member in length-lexicographic order."""
    ranges = member_ranges(g, p)
    lines = [f"pattern base={p.base} depth={p.depth}"]
    for m in sorted(p.members, key=_member_key):
        w = _member_word(g, p.base, m)
        lines.append(f"{path_literal(w)} @ {ranges[m]}")
    return "\n".join(lines) + "\n"
