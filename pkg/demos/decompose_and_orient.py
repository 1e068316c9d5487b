"""
Decomposition, strata and a proper orientation
==============================================

The vertex set splits into a branching part, pulled along admissible
paths from the branching vertices, and a branch-free rest.  The
branch-free part peels into linear strata, while the branching part
carries an edge typing that drives the search for a proper
orientation.
"""

from pathlib import Path

from sepgraph import (
    classify_edges,
    decompose,
    parse,
    stratify_branch_free,
    synthesize_orientation,
    verify_orientation,
)

DATA = Path(__file__).parent / "data"

g = parse((DATA / "branching_mix.sgr").read_text())
dec = decompose(g)
print("branching part:  ", sorted(dec.e_br0.members))
print("branch-free part:", sorted(dec.e_bf0.members))
print("acyclic part:    ", sorted(dec.e_ac0.members) or "empty")
print("weakly branching:", sorted(dec.weakly_branching))
print("critical edges:  ", sorted(dec.critical_edges))

# the branch-free part is a tower of linear pieces, innermost first
strat = stratify_branch_free(dec.branch_free_subgraph)
for i, stratum in enumerate(strat.strata):
    print(f"stratum {i}:", sorted(stratum))

# type 1 edges are plain; types 2, 3a and 3b mark where cycles enter
# the weakly branching region
types = classify_edges(dec.branching_subgraph)
for t in ("2", "3a", "3b"):
    print(f"type {t}:", sorted(e for e, k in types.items() if k == t))
print("type 1:", sum(1 for k in types.values() if k == "1"), "edges")

# a proper orientation: every vertex sees exactly one negative group
# slot or one positive edge, with no leftover violation
o = synthesize_orientation(dec.branching_subgraph)
print("orientation:", o.kind)
print("  positive:", sorted(o.positive))
print("  negative:", sorted(o.negative))
report = verify_orientation(dec.branching_subgraph, o.signs)
print("re-verified:", report.kind)
for v in sorted(report.vertex_cases):
    print(f"  {v}: case {report.vertex_cases[v]}")
