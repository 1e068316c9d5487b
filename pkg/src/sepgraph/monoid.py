"""Graph monoids and bounded decision procedures for their order.

The monoid of a separated graph is the commutative monoid on the
vertices with one relation v = sum of sources per group at v.  Elements
are coefficient vectors over the sorted generators.  Equality and the
algebraic order are decided by a breadth-first closure of the defining
relations truncated at a total-coefficient bound; verdicts are
three-valued, with False and True only when the truncation provably
did not matter.  The property checkers scan counterexample candidates
smallest first, so a False verdict comes with a minimal witness.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from .graph_core import SeparatedGraph

Element = tuple[int, ...]

DEFAULT_BOUND = 12


class TriBool(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[Element, Element], ...]

    def unit(self, name: str) -> Element:
        i = self.generators.index(name)
        return tuple(
            1 if j == i else 0 for j in range(len(self.generators))
        )

    def zero(self) -> Element:
        return (0,) * len(self.generators)


def presentation(g: SeparatedGraph) -> MonoidPresentation:
    """One relation v = sum of edge sources per group at v."""
    gens = tuple(g.sorted_vertices())
    index = {v: i for i, v in enumerate(gens)}
    relations = []
    for x in g.all_groups():
        left = [0] * len(gens)
        left[index[x.range]] = 1
        right = [0] * len(gens)
        for e in sorted(x.members):
            right[index[g.edges[e].source]] += 1
        relations.append((tuple(left), tuple(right)))
    return MonoidPresentation(gens, tuple(sorted(relations)))


def add(a: Element, b: Element) -> Element:
    return tuple(x + y for x, y in zip(a, b))


def subtract(a: Element, b: Element) -> Element:
    return tuple(x - y for x, y in zip(a, b))


def scale(n: int, a: Element) -> Element:
    return tuple(n * x for x in a)


def dominates(a: Element, b: Element) -> bool:
    """a >= b componentwise."""
    return all(x >= y for x, y in zip(a, b))


def element_key(a: Element) -> tuple:
    """Sort key: total first, then earlier generators preferred."""
    return (sum(a), tuple(-x for x in a))


_TERM = re.compile(r"(?:(\d+)\s*\*\s*)?([A-Za-z0-9_]+)\Z")


def parse_element(pres: MonoidPresentation, text: str) -> Element:
    """Read literals like `2*u+v`; `0` is the zero element."""
    coeffs = [0] * len(pres.generators)
    stripped = text.strip()
    if stripped == "0":
        return tuple(coeffs)
    for raw in stripped.split("+"):
        m = _TERM.match(raw.strip())
        if not m:
            raise ValueError(f"malformed term {raw.strip()!r}")
        count = int(m.group(1)) if m.group(1) else 1
        name = m.group(2)
        if name not in pres.generators:
            raise ValueError(f"unknown generator {name!r}")
        coeffs[pres.generators.index(name)] += count
    return tuple(coeffs)


def render_element(pres: MonoidPresentation, a: Element) -> str:
    terms = []
    for name, c in zip(pres.generators, a):
        if c == 1:
            terms.append(name)
        elif c > 1:
            terms.append(f"{c}*{name}")
    return "+".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def class_closure(
    pres: MonoidPresentation, a: Element, bound: int
) -> tuple[frozenset[Element], bool]:
    """Congruence class of a truncated at the total bound.

    The flag reports saturation: True means no reachable element was
    discarded, so the set is the entire class.
    """
    seen = {a}
    queue = [a]
    saturated = True
    while queue:
        x = queue.pop()
        for left, right in pres.relations:
            for lo, hi in ((left, right), (right, left)):
                if not dominates(x, lo):
                    continue
                y = add(subtract(x, lo), hi)
                if y in seen:
                    continue
                if sum(y) > bound:
                    saturated = False
                    continue
                seen.add(y)
                queue.append(y)
    return frozenset(seen), saturated


def equal(
    pres: MonoidPresentation,
    a: Element,
    b: Element,
    bound: int = DEFAULT_BOUND,
) -> TriBool:
    if a == b:
        return TriBool.TRUE
    ca, sat_a = class_closure(pres, a, bound)
    if b in ca:
        return TriBool.TRUE
    if sat_a:
        return TriBool.FALSE
    cb, sat_b = class_closure(pres, b, bound)
    if ca & cb:
        return TriBool.TRUE
    if sat_b:
        return TriBool.FALSE
    return TriBool.UNKNOWN


def leq(
    pres: MonoidPresentation,
    a: Element,
    b: Element,
    bound: int = DEFAULT_BOUND,
) -> TriBool:
    """Whether a + c = b has a solution, via the class of b."""
    cb, sat_b = class_closure(pres, b, bound)
    if any(dominates(d, a) for d in cb):
        return TriBool.TRUE
    if sat_b:
        return TriBool.FALSE
    return TriBool.UNKNOWN


def _vectors(k: int, total: int):
    if k == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for rest in _vectors(k - 1, total - head):
            yield (head,) + rest


def elements_by_total(
    pres: MonoidPresentation, bound: int
) -> dict[int, list[Element]]:
    k = len(pres.generators)
    return {
        s: sorted(_vectors(k, s), key=element_key)
        for s in range(bound + 1)
    }


def _pairs(by_total: dict[int, list[Element]], ts: int):
    bound = max(by_total)
    for sa in range(min(ts, bound) + 1):
        sb = ts - sa
        if sb > bound:
            continue
        for a in by_total[sa]:
            for b in by_total[sb]:
                yield a, b


def _triples(by_total: dict[int, list[Element]], ts: int):
    bound = max(by_total)
    for sa in range(min(ts, bound) + 1):
        for sb in range(min(ts - sa, bound) + 1):
            sc = ts - sa - sb
            if sc > bound:
                continue
            for a in by_total[sa]:
                for b in by_total[sb]:
                    for c in by_total[sc]:
                        yield a, b, c


def check_unperforation(
    pres: MonoidPresentation, bound: int = DEFAULT_BOUND
) -> tuple[TriBool, tuple[int, Element, Element] | None]:
    """Search for n*a <= n*b with a <= b failing, smallest first."""
    by_total = elements_by_total(pres, bound)
    unknown = False
    for ts in range(2 * bound + 1):
        for n in range(2, bound + 1):
            for a, b in _pairs(by_total, ts):
                hyp = leq(pres, scale(n, a), scale(n, b), bound)
                if hyp is TriBool.FALSE:
                    continue
                if hyp is TriBool.UNKNOWN:
                    unknown = True
                    continue
                concl = leq(pres, a, b, bound)
                if concl is TriBool.FALSE:
                    return TriBool.FALSE, (n, a, b)
                if concl is TriBool.UNKNOWN:
                    unknown = True
    return (TriBool.UNKNOWN if unknown else TriBool.TRUE), None


def check_almost_unperforation(
    pres: MonoidPresentation, bound: int = DEFAULT_BOUND
) -> tuple[TriBool, tuple[int, Element, Element] | None]:
    """Search for (n+1)*a <= n*b with a <= b failing, n >= 2."""
    by_total = elements_by_total(pres, bound)
    unknown = False
    for ts in range(2 * bound + 1):
        for n in range(2, bound + 1):
            for a, b in _pairs(by_total, ts):
                hyp = leq(
                    pres, scale(n + 1, a), scale(n, b), bound
                )
                if hyp is TriBool.FALSE:
                    continue
                if hyp is TriBool.UNKNOWN:
                    unknown = True
                    continue
                concl = leq(pres, a, b, bound)
                if concl is TriBool.FALSE:
                    return TriBool.FALSE, (n, a, b)
                if concl is TriBool.UNKNOWN:
                    unknown = True
    return (TriBool.UNKNOWN if unknown else TriBool.TRUE), None


def _absorbed_increments(
    pres: MonoidPresentation, c: Element, bound: int
) -> tuple[list[Element], bool]:
    """Elements a1 with c + a1 in the class of c, via d >= c there."""
    cc, saturated = class_closure(pres, c, bound)
    found: set[Element] = set()
    for d in cc:
        if not dominates(d, c):
            continue
        room = subtract(d, c)
        for a1 in itertools.product(*(range(x + 1) for x in room)):
            found.add(tuple(a1))
    return sorted(found, key=element_key), saturated


def pseudo_cancellation_violation(
    pres: MonoidPresentation,
    a: Element,
    b: Element,
    c: Element,
    bound: int = DEFAULT_BOUND,
) -> TriBool:
    """Whether (a, b, c) violates pseudo-cancellation: a + c <= b + c
    holds but no absorbed increment a1 of c gives a <= b + a1."""
    hyp = leq(pres, add(a, c), add(b, c), bound)
    if hyp is TriBool.FALSE:
        return TriBool.FALSE
    increments, saturated = _absorbed_increments(pres, c, bound)
    certified = True
    for a1 in increments:
        res = leq(pres, a, add(b, a1), bound)
        if res is TriBool.TRUE:
            return TriBool.FALSE
        if res is TriBool.UNKNOWN:
            certified = False
    if hyp is TriBool.UNKNOWN or not saturated or not certified:
        return TriBool.UNKNOWN
    return TriBool.TRUE


def check_pseudo_cancellation(
    pres: MonoidPresentation, bound: int = DEFAULT_BOUND
) -> tuple[TriBool, tuple[Element, Element, Element] | None]:
    by_total = elements_by_total(pres, bound)
    unknown = False
    for ts in range(3 * bound + 1):
        for a, b, c in _triples(by_total, ts):
            res = pseudo_cancellation_violation(pres, a, b, c, bound)
            if res is TriBool.TRUE:
                return TriBool.FALSE, (a, b, c)
            if res is TriBool.UNKNOWN:
                unknown = True
    return (TriBool.UNKNOWN if unknown else TriBool.TRUE), None


def check_separation(
    pres: MonoidPresentation, bound: int = DEFAULT_BOUND
) -> tuple[TriBool, tuple[Element, Element] | None]:
    """Search for 2a = a+b = 2b with a, b inequivalent."""
    by_total = elements_by_total(pres, bound)
    unknown = False
    for ts in range(2 * bound + 1):
        for a, b in _pairs(by_total, ts):
            e1 = equal(pres, add(a, a), add(a, b), bound)
            if e1 is TriBool.FALSE:
                continue
            e2 = equal(pres, add(a, b), add(b, b), bound)
            if e2 is TriBool.FALSE:
                continue
            if e1 is TriBool.TRUE and e2 is TriBool.TRUE:
                ne = equal(pres, a, b, bound)
                if ne is TriBool.FALSE:
                    return TriBool.FALSE, (a, b)
                if ne is TriBool.UNKNOWN:
                    unknown = True
            else:
                unknown = True
    return (TriBool.UNKNOWN if unknown else TriBool.TRUE), None


CHECKS = {
    "unperforation": check_unperforation,
    "almost-unperforation": check_almost_unperforation,
    "pseudo-cancellation": check_pseudo_cancellation,
    "separation": check_separation,
}
