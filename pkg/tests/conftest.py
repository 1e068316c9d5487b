"""Shared fixture graphs.

The corpus generator lives in oracles.py; these are the named examples
used across the suite.
"""

from __future__ import annotations

import pytest

from sepgraph import parse


def separated_pair_text(m: int, n: int) -> str:
    """Two vertices u, w with m red and n blue edges u -> w."""
    lines = ["vertex u", "vertex w"]
    for i in range(m):
        lines.append(f"edge e{i} : u -> w @ red")
    for i in range(n):
        lines.append(f"edge f{i} : u -> w @ blue")
    return "\n".join(lines) + "\n"


def separated_pair(m: int, n: int):
    return parse(separated_pair_text(m, n))


RUNNING_EXAMPLE_TEXT = "\n".join(
    ["vertex u%d" % i for i in range(1, 14)]
    + [
        "edge a1 : u6 -> u1 @ blue",
        "edge a2 : u2 -> u1 @ blue",
        "edge a3 : u2 -> u3 @ blue",
        "edge a4 : u4 -> u3 @ blue",
        "edge a5 : u8 -> u3 @ blue",
        "edge a6 : u11 -> u3 @ blue",
        "edge a7 : u11 -> u3 @ blue",
        "edge a8 : u7 -> u3 @ blue",
        "edge a9 : u7 -> u3 @ blue",
        "edge a10 : u7 -> u3 @ blue",
        "edge a11 : u12 -> u3 @ blue",
        "edge a12 : u9 -> u4 @ blue",
        "edge a13 : u9 -> u4 @ blue",
        "edge a14 : u5 -> u5 @ blue",
        "edge a15 : u4 -> u5 @ blue",
        "edge b1 : u2 -> u1 @ green",
        "edge b2 : u2 -> u1 @ green",
        "edge b3 : u12 -> u3 @ green",
        "edge b4 : u11 -> u3 @ green",
        "edge b5 : u13 -> u4 @ green",
        "edge b6 : u13 -> u4 @ green",
        "edge b7 : u1 -> u10 @ green",
        "edge c1 : u7 -> u3 @ red",
        "edge c2 : u8 -> u3 @ red",
    ]
) + "\n"

# two groups of two parallel edges meeting at w; u is not separated
E22_TEXT = separated_pair_text(2, 2)

# one vertex collecting two groups from two distinct sources
TWO_SOURCE_TEXT = """\
vertex u
vertex v
vertex w
edge e0 : u -> w @ red
edge e1 : u -> w @ red
edge f0 : v -> w @ blue
edge f1 : v -> w @ blue
"""

# relations w = u + v and w = m*u + n*v
def cancellation_pair_text(m: int, n: int) -> str:
    lines = [
        "vertex u",
        "vertex v",
        "vertex w",
        "edge r1 : u -> w @ red",
        "edge r2 : v -> w @ red",
    ]
    for i in range(m):
        lines.append(f"edge s{i} : u -> w @ blue")
    for i in range(n):
        lines.append(f"edge t{i} : v -> w @ blue")
    return "\n".join(lines) + "\n"


LOOP_TEXT = """\
vertex v
edge e : v -> v @ loop
"""

TWO_CYCLE_TEXT = """\
vertex v0
vertex v1
edge e0 : v0 -> v1 @ red
edge e1 : v1 -> v0 @ red
"""

THREE_CYCLE_TEXT = """\
vertex v0
vertex v1
vertex v2
edge e0 : v0 -> v1 @ red
edge e1 : v1 -> v2 @ red
edge e2 : v2 -> v0 @ red
"""

# a source feeding a loop, the incoming edge and the loop in one group
FED_LOOP_TEXT = """\
vertex u
vertex v
edge e : u -> v @ red
edge l : v -> v @ red
"""


@pytest.fixture
def running_example():
    return parse(RUNNING_EXAMPLE_TEXT)


@pytest.fixture
def e22():
    return separated_pair(2, 2)


@pytest.fixture
def e23():
    return separated_pair(2, 3)


@pytest.fixture
def e33():
    return separated_pair(3, 3)


@pytest.fixture
def two_source():
    return parse(TWO_SOURCE_TEXT)


@pytest.fixture
def loop_graph():
    return parse(LOOP_TEXT)


@pytest.fixture
def two_cycle():
    return parse(TWO_CYCLE_TEXT)


@pytest.fixture
def three_cycle():
    return parse(THREE_CYCLE_TEXT)


@pytest.fixture
def fed_loop():
    return parse(FED_LOOP_TEXT)


@pytest.fixture
def cancellation_pair():
    return lambda m, n: parse(cancellation_pair_text(m, n))
