"""
Patterns, partial translations and Folner sets
==============================================

A pattern records which paths of bounded length pass a chosen base
vertex.  Words act on patterns by translation, and along a proper
orientation each pattern carries nested finite sets whose boundary
under any fixed word shrinks like |w| / (|w| + n).
"""

from fractions import Fraction
from pathlib import Path

from sepgraph import (
    act,
    folner_mean_check,
    folner_ratio,
    folner_set,
    parse,
    parse_path,
    path_literal,
    pattern_containing,
    pattern_dump,
)

DATA = Path(__file__).parent / "data"

g = parse((DATA / "loop.sgr").read_text())
signs = {"e": -1}  # orienting the loop backwards is proper here

# the single loop admits exactly one pattern per depth: a line through
# the base, one arm per direction
p = pattern_containing(g, "v", [], 3)
print(pattern_dump(g, p))

# acting by a word shifts the line and costs depth
w = parse_path(g, "e")
q = act(g, p, w)
print(f"after acting by {path_literal(w)}:")
print(pattern_dump(g, q))

# the Folner sets walk n steps against the orientation
deep = pattern_containing(g, "v", [], 24)
for n in (4, 8, 16):
    f = folner_set(g, signs, deep, n)
    print(f"F_{n}:", ", ".join(path_literal(x) for x in f[:3]), "...")

# moving F_{j+n} by a word of length j displaces at most j of its
# j + n members, and the loop attains the bound exactly
for j, n in [(1, 4), (1, 8), (2, 8)]:
    w = parse_path(g, ".".join(["e"] * j))
    ratio = folner_ratio(g, signs, deep, j + n, w)
    print(
        f"|w| = {j}, index {j + n}: ratio = {ratio},"
        f" bound = {Fraction(j, j + n)}"
    )
    lhs, rhs = folner_mean_check(g, signs, deep, j + n, w)
    print(f"  mean displacement {lhs} within allowance {rhs}")
