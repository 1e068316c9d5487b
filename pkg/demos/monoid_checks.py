"""
Graph monoids and cancellation properties
=========================================

Each graph presents a commutative monoid: one generator per vertex,
and one relation per group saying a vertex equals the sum of the
sources feeding it.  Bounded closure search then decides equality,
order and the standard cancellation properties up to a size bound.
"""

from pathlib import Path

from sepgraph import (
    CHECKS,
    MonoidPresentation,
    check_pseudo_cancellation,
    check_unperforation,
    equal,
    parse,
    parse_element,
    presentation,
    pseudo_cancellation_violation,
    render_element,
)

DATA = Path(__file__).parent / "data"

# the two-source graph: w receives one group from u and one from v
g = parse((DATA / "two_sources.sgr").read_text())
pres = presentation(g)
print("generators:", ", ".join(pres.generators))
for lhs, rhs in pres.relations:
    print(
        "relation:",
        render_element(pres, lhs),
        "=",
        render_element(pres, rhs),
    )

# 2u and 2v both equal w, so they are identified
a = parse_element(pres, "2*u")
b = parse_element(pres, "2*v")
print("2*u = 2*v:", equal(pres, a, b).value)

# the halves monoid: doubling identifies u and v, but u and v stay
# incomparable, so order is not unperforated
halves = MonoidPresentation(("u", "v"), (((2, 0), (0, 2)),))
res, cx = check_unperforation(halves)
n, x, y = cx
print(
    f"unperforation: {res.value} with n = {n},"
    f" a = {render_element(halves, x)}, b = {render_element(halves, y)}"
)

# a pair graph whose monoid absorbs u + c <= v + c without any
# bounded increment certifying u <= v
pair = parse(
    "vertex u\nvertex v\nvertex w\n"
    "edge r1 : u -> w @ red\n"
    "edge r2 : v -> w @ red\n"
    "edge s0 : u -> w @ blue\n"
    "edge s1 : u -> w @ blue\n"
    "edge t0 : v -> w @ blue\n"
)
ppres = presentation(pair)
res, (x, y, z) = check_pseudo_cancellation(ppres)
print(
    f"pseudo-cancellation: {res.value} with"
    f" a = {render_element(ppres, x)},"
    f" b = {render_element(ppres, y)},"
    f" c = {render_element(ppres, z)}"
)
print(
    "violation re-verified:",
    pseudo_cancellation_violation(ppres, x, y, z).value,
)

# free commutative monoids pass everything
free = MonoidPresentation(("u", "v"), ())
for name, check in CHECKS.items():
    verdict, _ = check(free, 6)
    print(f"free monoid {name}: {verdict.value}")
