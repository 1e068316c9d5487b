"""
Covering ports and failure witnesses
====================================

A vertex with three or more essentially different closed paths is
branching.  The separation condition asks every branching vertex for a
single port lying on all of its closed paths.  When no such port
exists, two cycles come out whose mixed products are again cycles, an
obstruction that no orientation can repair.
"""

from pathlib import Path

from sepgraph import (
    check_condition_n,
    is_cycle,
    parse,
    path_literal,
    word_mul,
)

DATA = Path(__file__).parent / "data"

# two parallel groups between the same pair of vertices: fails
g = parse((DATA / "parallel_pairs.sgr").read_text())
report = check_condition_n(g)
print("parallel_pairs:", "passes" if report.verdict else "fails")
for v, (returns, res) in report.branching.items():
    print(f"  {v}: {returns} return classes")
    alpha, beta = res.alpha, res.beta
    print("  alpha =", path_literal(alpha))
    print("  beta  =", path_literal(beta))
    # the witness is self-checking: both cycles and both mixed
    # products close up, so no port covers every closed path
    for name, p in [
        ("alpha", alpha),
        ("beta", beta),
        ("beta.alpha", word_mul(g, beta, alpha)),
        ("beta.alpha^-1", word_mul(g, beta, alpha.inverse())),
    ]:
        print(f"    cycle({name}) = {is_cycle(g, p)}")

# the same groups attached to two different sources: passes, and
# no vertex is branching at all
g = parse((DATA / "two_sources.sgr").read_text())
report = check_condition_n(g)
print("two_sources:", "passes" if report.verdict else "fails")
print("  branching vertices:", sorted(report.branching) or "none")

# a larger mixed graph: passes with four branching vertices, each
# covered by one port
g = parse((DATA / "branching_mix.sgr").read_text())
report = check_condition_n(g)
print("branching_mix:", "passes" if report.verdict else "fails")
for v in sorted(report.branching):
    returns, res = report.branching[v]
    print(f"  {v}: {returns} return classes, covered by {res.port.render()}")
