"""End-to-end acceptance checks, one test per headline claim.

Each test is self-contained, rebuilds its graphs from the shared
fixtures module, asserts the expected values exactly, and enforces
its runtime budget.
"""

import itertools
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from conftest import (
    FED_LOOP_TEXT,
    LOOP_TEXT,
    RUNNING_EXAMPLE_TEXT,
    THREE_CYCLE_TEXT,
    TWO_CYCLE_TEXT,
    TWO_SOURCE_TEXT,
    cancellation_pair_text,
    separated_pair,
)
from oracles import (
    allows_return_oracle,
    corpus,
    hereditary_saturated_subsets,
    hook_pairs_oracle,
    realizable_pairs_oracle,
    ref,
    return_free_oracle,
)
from sepgraph import (
    CHECKS,
    DEFAULT_BOUND,
    FailureWitness,
    LocalOrientation,
    MonoidPresentation,
    TriBool,
    act,
    allows_return,
    check_condition_n,
    check_pattern,
    check_pseudo_cancellation,
    check_unperforation,
    decompose,
    classify_edges,
    domain_nonempty,
    enumerate_patterns,
    folner_mean_check,
    folner_ratio,
    folner_set,
    free_words_distinct,
    full_subgraph,
    hook_relation,
    is_admissible,
    is_c_saturated,
    is_cycle,
    is_hereditary,
    is_return_free,
    local_orientation,
    parse,
    pattern_containing,
    presentation,
    pseudo_cancellation_violation,
    realizable_pairs,
    serialize,
    stabilizer_witness,
    stratify_branch_free,
    synthesize_orientation,
    trivial_word,
    verify_orientation,
    word,
    word_mul,
)


@contextmanager
def budget(seconds):
    t0 = time.monotonic()
    yield
    elapsed = time.monotonic() - t0
    assert elapsed < seconds, f"took {elapsed:.2f}s, budget {seconds}s"


def witness_cycles_check(g, fw):
    assert isinstance(fw, FailureWitness)
    assert is_cycle(g, fw.alpha)
    assert is_cycle(g, fw.beta)
    assert is_cycle(g, word_mul(g, fw.beta, fw.alpha))
    assert is_cycle(g, word_mul(g, fw.beta, fw.alpha.inverse()))
    assert len(fw.gamma) < len(fw.alpha)
    assert len(fw.gamma) < len(fw.beta)


def test_01_condition_n_verdicts():
    for m, n in ((2, 2), (2, 3), (3, 3)):
        g = separated_pair(m, n)
        with budget(1.0):
            report = check_condition_n(g)
        assert report.verdict is False
        witnesses = [
            res
            for _, res in report.branching.values()
            if isinstance(res, FailureWitness)
        ]
        assert witnesses
        for fw in witnesses:
            witness_cycles_check(g, fw)

    g = parse(TWO_SOURCE_TEXT)
    with budget(1.0):
        report = check_condition_n(g)
    assert report.verdict is True
    assert report.branching == {}

    g = parse(RUNNING_EXAMPLE_TEXT)
    with budget(1.0):
        report = check_condition_n(g)
    assert report.verdict is True
    assert set(report.branching) == {"u2", "u3", "u7", "u11"}
    for v, (_, res) in report.branching.items():
        assert isinstance(res, LocalOrientation)
        assert res.kind == ("type1" if v == "u3" else "type2")


def test_02_vertex_decomposition():
    g = parse(RUNNING_EXAMPLE_TEXT)
    with budget(1.0):
        dec = decompose(g)
        strat = stratify_branch_free(dec.branch_free_subgraph)
    assert dec.e_br0.members == frozenset(
        {"u1", "u2", "u3", "u6", "u7", "u8", "u10", "u11", "u12"}
    )
    assert dec.e_bf0.members == frozenset({"u4", "u5", "u9", "u13"})
    assert dec.e_ac0.members == frozenset()
    bf = dec.e_bf0.members
    assert is_hereditary(g, bf)
    assert is_c_saturated(g, bf)
    assert is_return_free(g, bf) is True
    assert strat.strata == (
        frozenset({"u4", "u9", "u13"}),
        frozenset({"u5"}),
    )
    assert strat.subgraphs[0].vertices == {"u4", "u9", "u13"}
    assert set(strat.subgraphs[0].edges) == {"a12", "a13", "b5", "b6"}
    assert strat.subgraphs[1].vertices == {"u5"}
    assert set(strat.subgraphs[1].edges) == {"a14"}


def test_03_edge_typing():
    g = parse(RUNNING_EXAMPLE_TEXT)
    with budget(1.0):
        types = classify_edges(decompose(g).branching_subgraph)
    assert types["a3"] == "2"
    assert types["b7"] == "3a"
    assert types["a1"] == "3b"
    rest = {e: t for e, t in types.items() if e not in ("a3", "b7", "a1")}
    assert len(rest) == 14
    assert set(rest.values()) == {"1"}


def test_04_orientations():
    with budget(1.0):
        g = parse(RUNNING_EXAMPLE_TEXT)
        br = decompose(g).branching_subgraph
        o = synthesize_orientation(br)
        assert o.kind == "proper"
        assert verify_orientation(br, o.signs).kind == "proper"

        fed = parse(FED_LOOP_TEXT)
        constant = {e: -1 for e in fed.edges}
        assert verify_orientation(fed, constant).kind == "weak"
        sources = {
            v
            for v in fed.vertices
            if all(e.range != v for e in fed.edges.values())
        }
        trimmed = full_subgraph(fed, fed.vertices - sources)
        assert (
            verify_orientation(
                trimmed, {e: -1 for e in trimmed.edges}
            ).kind
            == "proper"
        )

        e22 = separated_pair(2, 2)
        names = sorted(e22.edges)
        for signs in itertools.product((1, -1), repeat=len(names)):
            report = verify_orientation(e22, dict(zip(names, signs)))
            assert report.kind == "invalid"


def test_05_folner_bounds():
    oriented = [
        (parse(LOOP_TEXT), {"e": -1}),
        (parse(TWO_CYCLE_TEXT), {"e0": -1, "e1": -1}),
        (parse(THREE_CYCLE_TEXT), {"e0": 1, "e1": 1, "e2": 1}),
    ]
    tol = Fraction(1, 10**12)
    with budget(10.0):
        for g, signs in oriented:
            assert verify_orientation(g, signs).kind == "proper"
            for base in g.sorted_vertices():
                p = pattern_containing(g, base, [], 24)
                for n in (4, 8, 16):
                    assert len(folner_set(g, signs, p, n)) == n
                for m in sorted(p.members):
                    if not 0 < len(m) <= 4:
                        continue
                    w = word(g, list(m))
                    j = len(w)
                    for n in (4, 8, 16):
                        ratio = folner_ratio(g, signs, p, j + n, w)
                        assert ratio <= Fraction(j, j + n) + tol
                        lhs, rhs = folner_mean_check(
                            g, signs, p, j + n, w
                        )
                        assert lhs <= rhs + tol


def test_06_pattern_counts_and_domains():
    with budget(30.0):
        assert len(enumerate_patterns(separated_pair(2, 2), "w", 1)) == 4
        assert len(enumerate_patterns(separated_pair(2, 3), "w", 1)) == 6

        small = [
            separated_pair(2, 2),
            parse(TWO_SOURCE_TEXT),
            parse(LOOP_TEXT),
            parse(TWO_CYCLE_TEXT),
            parse(THREE_CYCLE_TEXT),
            parse(FED_LOOP_TEXT),
        ]
        small += [g for _, g in corpus(60) if 1 <= len(g.edges) <= 4][:6]
        for g in small:
            syms = [(e, s) for e in sorted(g.edges) for s in (1, -1)]
            for k in range(1, 6):
                for seq in itertools.product(syms, repeat=k):
                    w = word(g, list(seq))
                    assert domain_nonempty(g, w) == is_admissible(g, w)


def test_07_stabilizer_witness():
    g = separated_pair(2, 2)
    with budget(10.0):
        fw = local_orientation(g, "u")
        pat, verified = stabilizer_witness(g, fw, 12)
        assert verified is True
        assert pat.depth == 12
        check_pattern(g, pat)
        for cycle in (fw.alpha, fw.beta):
            moved = act(g, pat, cycle)
            assert moved.base == pat.base
            cut = pat.depth - len(cycle)
            assert moved.members == frozenset(
                m for m in pat.members if len(m) <= cut
            )
        total, distinct = free_words_distinct(g, fw, 3)
        assert total == 53
        assert distinct == 53


def test_08_monoid_checks():
    with budget(30.0):
        halves = MonoidPresentation(("u", "v"), (((2, 0), (0, 2)),))
        res, cx = check_unperforation(halves)
        assert res is TriBool.FALSE
        assert cx == (2, (1, 0), (0, 1))

        for m, n in ((2, 1), (3, 2)):
            pres = presentation(parse(cancellation_pair_text(m, n)))
            res, _ = check_pseudo_cancellation(pres)
            assert res is TriBool.FALSE
            known = (
                tuple((m - 1) * x for x in pres.unit("u")),
                pres.unit("v"),
                pres.unit("u"),
            )
            assert (
                pseudo_cancellation_violation(pres, *known, 12)
                is TriBool.TRUE
            )
            if m == 2:
                assert check_pseudo_cancellation(pres)[1] == known

        for gens in (("u",), ("u", "v")):
            free = MonoidPresentation(gens, ())
            for check in CHECKS.values():
                assert check(free, DEFAULT_BOUND) == (TriBool.TRUE, None)


def test_09_brute_force_agreement():
    graphs = corpus(60)
    assert len(graphs) >= 50
    with budget(300.0):
        for _, g in graphs:
            assert len(g.vertices) <= 6 and len(g.edges) <= 12
            r = ref(g)
            level = [[s] for s in r.syms]
            for _ in range(3):
                for seq in level:
                    w = word(g, seq)
                    for flag in (True, False):
                        assert allows_return(
                            g, w, flag
                        ) == allows_return_oracle(g, seq, flag)
                level = [
                    seq + [b] for seq in level for b in r.adj[seq[-1]]
                ]

            assert hook_relation(g).pairs == frozenset(
                hook_pairs_oracle(g)
            )

            for v in g.sorted_vertices():
                got = {
                    ((i.kind, i.name), (t.kind, t.name)): len(w)
                    for (i, t), w in realizable_pairs(g, v).pairs.items()
                }
                assert got == realizable_pairs_oracle(g, v)

            for h in hereditary_saturated_subsets(g):
                res = is_return_free(g, h)
                shortest = return_free_oracle(g, h)
                if shortest is None:
                    assert res is True or len(res) > r.bound
                else:
                    assert res is not True and len(res) == shortest


def test_10_structural_invariants():
    graphs = corpus(60)
    with budget(300.0):
        for _, g in graphs:
            assert parse(serialize(g)) == g
            if check_condition_n(g).verdict:
                vs = sorted(g.vertices)
                for mask in range(1, 1 << len(vs)):
                    h = frozenset(
                        v for i, v in enumerate(vs) if mask >> i & 1
                    )
                    assert check_condition_n(full_subgraph(g, h)).verdict

        small = [g for _, g in graphs if 1 <= len(g.edges) <= 3][:10]
        for g in small:
            for v in g.sorted_vertices():
                for p in enumerate_patterns(g, v, 2)[:8]:
                    assert act(g, p, trivial_word(v)) is p
                    for mw in sorted(
                        m for m in p.members if len(m) == 1
                    ):
                        w = word(g, list(mw))
                        q = act(g, p, w)
                        check_pattern(g, q)
                        for mx in sorted(
                            m for m in q.members if 0 < len(m) <= 1
                        ):
                            x = word(g, list(mx))
                            lhs = act(g, q, x)
                            rhs = act(g, p, word_mul(g, x, w))
                            assert lhs.base == rhs.base
                            assert lhs.members == frozenset(
                                m
                                for m in rhs.members
                                if len(m) <= lhs.depth
                            )
