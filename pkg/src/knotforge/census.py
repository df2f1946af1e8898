"""Built-in census, generated from braid words (composites by connected sum).

Each entry carries expected values that ``verify`` recomputes; they were
frozen from independent evaluations (Alexander matrix, brute-force
colorings, plain state sum) and agree with standard knot tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from knotforge.diagram.core import Diagram
from knotforge.diagram.moves import braid_closure, connected_sum, mirror
from knotforge.notation import emit_braid, emit_pd


@dataclass(frozen=True)
class CensusEntry:
    name: str
    word: tuple[int, ...] | None
    strands: int | None
    recipe: str
    expected: dict = field(default_factory=dict)

    @property
    def braid(self) -> str | None:
        return None if self.word is None else emit_braid(self.word, self.strands)


# name, braid word, strands, expected (det, conway coefficients)
_KNOTS = [
    ("0_1", (), 1, 1, {0: 1}),
    ("3_1", (1, 1, 1), 2, 3, {0: 1, 2: 1}),
    ("4_1", (1, -2, 1, -2), 3, 5, {0: 1, 2: -1}),
    ("5_1", (1, 1, 1, 1, 1), 2, 5, {0: 1, 2: 3, 4: 1}),
    ("5_2", (1, 1, 1, 2, -1, 2), 3, 7, {0: 1, 2: 2}),
    ("6_1", (1, 1, 2, -1, -3, 2, -3), 4, 9, {0: 1, 2: -2}),
    ("6_2", (1, 1, 1, -2, 1, -2), 3, 11, {0: 1, 2: -1, 4: -1}),
    ("6_3", (1, 1, -2, 1, -2, -2), 3, 13, {0: 1, 2: 1, 4: 1}),
    ("7_1", (1,) * 7, 2, 7, {0: 1, 2: 6, 4: 5, 6: 1}),
]

_LINKS = [
    ("L2a1", (1, 1), 2, {1: 1}),
    ("unlink2", (), 2, {}),
]


def _entries() -> list[CensusEntry]:
    out = []
    for name, word, s, det, conway in _KNOTS:
        out.append(CensusEntry(name, word, s, "braid", {"det": det, "conway": conway, "components": 1}))
    out.append(CensusEntry("3_1#3_1", None, None, "3_1 # 3_1", {"det": 9, "conway": {0: 1, 2: 2, 4: 1}, "components": 1}))
    out.append(CensusEntry("3_1#m3_1", None, None, "3_1 # mirror(3_1)", {"det": 9, "conway": {0: 1, 2: 2, 4: 1}, "components": 1}))
    for name, word, s, conway in _LINKS:
        out.append(CensusEntry(name, word, s, "braid", {"conway": conway, "components": 2}))
    return out


ENTRIES: tuple[CensusEntry, ...] = tuple(_entries())


@lru_cache(maxsize=None)
def build(name: str) -> Diagram:
    for e in ENTRIES:
        if e.name != name:
            continue
        if e.word is not None:
            return braid_closure(list(e.word), e.strands)
        if name == "3_1#3_1":
            return connected_sum(build("3_1"), build("3_1"))
        if name == "3_1#m3_1":
            return connected_sum(build("3_1"), mirror(build("3_1")))
    raise KeyError(name)


def knots() -> list[tuple[str, Diagram]]:
    return [(e.name, build(e.name)) for e in ENTRIES if e.expected.get("components") == 1]


def links() -> list[tuple[str, Diagram]]:
    return [(e.name, build(e.name)) for e in ENTRIES if e.expected.get("components", 1) > 1]


def corpus(which: str = "census") -> list[tuple[str, Diagram]]:
    if which == "census":
        return knots() + links()
    if which == "knots":
        return knots()
    if which == "links":
        return links()
    if which == "empty":
        return []
    raise KeyError(which)


def table() -> list[dict]:
    rows = []
    for e in ENTRIES:
        d = build(e.name)
        rows.append(
            {
                "name": e.name,
                "recipe": e.braid or e.recipe,
                "crossings": d.n_crossings,
                "components": d.n_components,
                "pd": emit_pd(d),
            }
        )
    return rows


def verify() -> list[str]:
    """Recompute every cached value; return mismatches (empty when all agree)."""
    from knotforge.invariants import conway, determinant

    problems = []
    for e in ENTRIES:
        d = build(e.name)
        if d.n_components != e.expected["components"]:
            problems.append(f"{e.name}: components {d.n_components} != {e.expected['components']}")
        if "det" in e.expected and determinant(d) != e.expected["det"]:
            problems.append(f"{e.name}: det {determinant(d)} != {e.expected['det']}")
        got = dict(conway(d).terms)
        if got != e.expected["conway"]:
            problems.append(f"{e.name}: conway {got} != {e.expected['conway']}")
    return problems
