import pytest
from hypothesis import given, strategies as st

from sepgraph import (
    Word,
    allows_return,
    cycle_nodes,
    enumerate_paths,
    inv,
    is_admissible,
    is_base_simple,
    is_cycle,
    meet,
    parse,
    parse_path,
    path_literal,
    shortest_walk,
    sym_range,
    sym_source,
    symbol_key,
    transition_allowed,
    transition_digraph,
    trivial_word,
    word,
    word_mul,
)
from oracles import is_admissible_oracle, ok_step

TWO_LOOP = parse("vertex v\nedge l1 : v -> v @ red\nedge l2 : v -> v @ red\n")
PARALLEL = parse("vertex u\nvertex v\nedge a : u -> v @ red\nedge b : u -> v @ red\n")
E22 = parse(
    "vertex u\nvertex w\n"
    "edge e0 : u -> w @ red\nedge e1 : u -> w @ red\n"
    "edge f0 : u -> w @ blue\nedge f1 : u -> w @ blue\n"
)
E23 = parse(
    "vertex u\nvertex w\n"
    "edge e0 : u -> w @ red\nedge e1 : u -> w @ red\n"
    "edge f0 : u -> w @ blue\nedge f1 : u -> w @ blue\n"
    "edge f2 : u -> w @ blue\n"
)


def test_symbol_basics(e22):
    assert inv(("e0", 1)) == ("e0", -1)
    assert inv(inv(("e0", 1))) == ("e0", 1)
    assert sym_source(e22, ("e0", 1)) == "u"
    assert sym_range(e22, ("e0", 1)) == "w"
    assert sym_source(e22, ("e0", -1)) == "w"
    assert sym_range(e22, ("e0", -1)) == "u"
    assert symbol_key(("e0", 1)) < symbol_key(("e0", -1))
    assert symbol_key(("e0", -1)) < symbol_key(("e1", 1))


def test_transition_rules(e22):
    # backtrack f^-1 then f is forbidden
    assert not transition_allowed(e22, ("e0", -1), ("e0", 1))
    # but e^-1 then a different edge forward is fine
    assert transition_allowed(e22, ("e0", -1), ("e1", 1))
    # exiting through the entry group is forbidden, same edge included
    assert not transition_allowed(e22, ("e0", 1), ("e0", -1))
    assert not transition_allowed(e22, ("e0", 1), ("e1", -1))
    # exiting through the other group is fine
    assert transition_allowed(e22, ("e0", 1), ("f0", -1))
    # non-composable pairs are never allowed
    assert not transition_allowed(e22, ("e0", 1), ("e1", 1))


def test_transition_matches_oracle(e22, running_example, two_source):
    for g in (e22, running_example, two_source):
        syms = [(e, s) for e in g.sorted_edges() for s in (1, -1)]
        for a in syms:
            for b in syms:
                assert transition_allowed(g, a, b) == ok_step(g, a, b)


def test_word_construction(e22):
    w = word(e22, [("e0", 1), ("f0", -1)])
    assert w.trail == ("u", "w", "u")
    assert w.source == "u" and w.range == "u"
    assert len(w) == 2
    assert w.i_d() == ("e0", 1) and w.t_d() == ("f0", -1)
    # non-composable symbol sequences get no trail
    assert word(e22, [("e0", 1), ("e1", 1)]).trail is None
    with pytest.raises(ValueError):
        word(e22, [("zz", 1)])
    with pytest.raises(ValueError):
        word(e22, [])


def test_trivial_word():
    t = trivial_word("u")
    assert t.is_trivial and len(t) == 0
    assert t.source == "u" and t.range == "u"


def test_path_literal_order(e22):
    # rightmost symbol of the literal is applied first
    w = parse_path(e22, "f0^-1.e0")
    assert w.symbols == (("e0", 1), ("f0", -1))
    assert path_literal(w) == "f0^-1.e0"
    assert parse_path(e22, "1", base="u") == trivial_word("u")
    assert path_literal(trivial_word("u")) == "1"
    with pytest.raises(ValueError):
        parse_path(e22, "1")
    with pytest.raises(ValueError):
        parse_path(e22, "zz")
    with pytest.raises(ValueError):
        parse_path(e22, "1", base="zz")


def test_inverse(e22):
    w = parse_path(e22, "f0^-1.e0")
    assert w.inverse().symbols == (("f0", 1), ("e0", -1))
    assert w.inverse().trail == ("u", "w", "u")
    assert w.inverse().inverse() == w


def test_prefix_and_meet(e22):
    p1 = parse_path(e22, "e1.f0^-1.e0")
    p2 = parse_path(e22, "f1.f0^-1.e0")
    m = meet(p1, p2)
    assert m == parse_path(e22, "f0^-1.e0")
    assert meet(p1, p1) == p1
    assert p1.prefix(0) == trivial_word("u")
    with pytest.raises(ValueError):
        meet(p1, trivial_word("w"))


def test_word_mul(e22):
    a = parse_path(e22, "e1.f0^-1")
    b = parse_path(e22, "f0")
    ab = word_mul(e22, a, b)
    assert ab == parse_path(e22, "e1")
    # full cancellation leaves the trivial word at the shared base
    x = parse_path(e22, "e0")
    assert word_mul(e22, x.inverse(), x) == trivial_word("u")
    assert word_mul(e22, x, x.inverse()) == trivial_word("w")
    # plain concatenation checks endpoints
    with pytest.raises(ValueError):
        word_mul(e22, parse_path(e22, "e0"), parse_path(e22, "e0"))


def test_is_admissible(e22):
    assert is_admissible(e22, parse_path(e22, "f0^-1.e0"))
    assert not is_admissible(e22, parse_path(e22, "e0^-1.e0"))
    assert not is_admissible(e22, parse_path(e22, "e1^-1.e0"))
    assert not is_admissible(e22, trivial_word("u"))
    assert not is_admissible(e22, word(e22, [("e0", 1), ("e1", 1)]))
    with pytest.raises(ValueError):
        is_admissible(e22, Word((("zz", 1),), None))


def test_is_cycle(e22):
    assert is_cycle(e22, trivial_word("u"))
    assert is_cycle(e22, parse_path(e22, "f0^-1.e0"))
    # closed but the wrap-around step exits through the entry group
    p = parse_path(TWO_LOOP, "l1.l2^-1")
    assert is_admissible(TWO_LOOP, p) and p.source == p.range
    assert not is_cycle(TWO_LOOP, p)
    # open paths are not cycles
    assert not is_cycle(e22, parse_path(e22, "e0"))


def test_is_base_simple(e22):
    assert is_base_simple(e22, parse_path(e22, "f0^-1.e0"))
    assert not is_base_simple(e22, parse_path(e22, "e0^-1.f1.f0^-1.e0"))
    assert is_base_simple(e22, trivial_word("u"))
    assert not is_base_simple(e22, parse_path(e22, "e0"))


def test_allows_return(e22, two_source):
    closed = parse_path(e22, "f0^-1.e0")
    assert allows_return(e22, closed)
    assert allows_return(e22, closed, allow_trivial_beta=False)
    assert allows_return(e22, parse_path(e22, "e0"))
    assert allows_return(two_source, parse_path(two_source, "f0^-1.e0"))
    # closed path whose end admits no continuation at all
    dead = parse_path(PARALLEL, "a.b^-1")
    assert allows_return(PARALLEL, dead)
    assert not allows_return(PARALLEL, dead, allow_trivial_beta=False)
    with pytest.raises(ValueError):
        allows_return(e22, trivial_word("u"))
    with pytest.raises(ValueError):
        allows_return(e22, parse_path(e22, "e0^-1.e0"))


def test_transition_digraph(e22):
    td = transition_digraph(e22)
    assert td.nodes == (
        ("e0", 1), ("e0", -1), ("e1", 1), ("e1", -1),
        ("f0", 1), ("f0", -1), ("f1", 1), ("f1", -1),
    )
    assert td.arcs[("e0", 1)] == (("f0", -1), ("f1", -1))
    assert td.arcs[("f0", -1)] == (("e0", 1), ("e1", 1), ("f1", 1))
    # everything sits on a cycle in this graph
    assert cycle_nodes(td) == frozenset(td.nodes)
    assert transition_digraph(e22) is td  # cached


def test_sccs(two_source):
    td = transition_digraph(two_source)
    comps = td.sccs()
    assert sum(len(c) for c in comps) == len(td.nodes)
    assert cycle_nodes(td) == frozenset(td.nodes)


def test_reachable_includes_self(e22):
    td = transition_digraph(e22)
    for n in td.nodes:
        assert n in td.reachable_from(n)


def test_enumerate_paths_counts(e22):
    from_u = enumerate_paths(e22, "u", 2)
    assert len(from_u) == 13  # 1 trivial + 4 + 4*2
    from_w = enumerate_paths(e22, "w", 2)
    assert len(from_w) == 17  # 1 trivial + 4 + 4*3
    assert from_u[0] == trivial_word("u")
    for p in from_u[1:]:
        assert is_admissible(e22, p) and p.source == "u"
    # prefix-closed enumeration: every prefix appears earlier
    seen = set()
    for p in from_u:
        if len(p) > 0:
            assert p.prefix(len(p) - 1).symbols in seen
        seen.add(p.symbols)
    with pytest.raises(ValueError):
        enumerate_paths(e22, "zz", 1)


def test_shortest_walk(e22):
    td = transition_digraph(e22)
    assert shortest_walk(td, ("e0", 1), ("e0", 1)) == [("e0", 1)]
    walk = shortest_walk(td, ("e0", 1), ("e0", -1))
    assert walk == [("e0", 1), ("f0", -1), ("f1", 1), ("e0", -1)]
    # unreachable pair
    td2 = transition_digraph(PARALLEL)
    assert shortest_walk(td2, ("a", 1), ("b", -1)) is None


@given(st.data())
def test_enumerated_paths_agree_with_oracle(data):
    paths = enumerate_paths(E23, "u", 3)
    p = data.draw(st.sampled_from(paths))
    if p.is_trivial:
        assert not is_admissible(E23, p)
    else:
        assert is_admissible(E23, p)
        assert is_admissible_oracle(E23, list(p.symbols))
        assert parse_path(E23, path_literal(p)) == p
        assert p.inverse().inverse() == p
        assert is_admissible(E23, p.inverse())


@given(st.lists(st.tuples(st.sampled_from(["e0", "e1", "f0", "f1"]),
                          st.sampled_from([1, -1])),
                min_size=1, max_size=5))
def test_random_symbol_sequences_match_oracle(symbols):
    w = word(E22, symbols)
    assert is_admissible(E22, w) == is_admissible_oracle(E22, symbols)
