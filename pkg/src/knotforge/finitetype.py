"""Alternating sums over crossing changes and over twist regions, and probes.

A probe walks a corpus in a fixed order, evaluates every alternating sum it
is allowed to, and stops at the first non-zero one.  "vanished" therefore
means "vanished on everything tested", nothing more.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from knotforge import __version__
from knotforge.diagram.core import Diagram, DiagramError, PlanarityError, face_map
from knotforge.diagram.moves import change_crossings
from knotforge.diagram.twist import TwistRegion, insert_twists_at
from knotforge.invariants import Invariant, value_to_json

DEFAULT_BUDGET = 200_000


def default_budget() -> int:
    raw = os.environ.get("KNOTFORGE_BUDGET")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return DEFAULT_BUDGET


class BudgetExhausted(RuntimeError):
    pass


class CertificateMismatch(RuntimeError):
    """A certificate failed re-verification through the oracle path."""


@dataclass(frozen=True)
class CrossingCollection:
    diagram: Diagram
    indices: tuple[int, ...]

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if not idx:
            raise ValueError("a crossing collection needs at least one crossing")
        if len(set(idx)) != len(idx):
            raise ValueError("crossing indices must be distinct")
        for i in idx:
            if not 0 <= i < self.diagram.n_crossings:
                raise ValueError(f"crossing index {i} out of range")

    @property
    def order(self) -> int:
        return len(self.indices) - 1

    def resolutions(self) -> Iterable[tuple[int, Diagram]]:
        """(parity, diagram) for every subset of the collection."""
        for vec in itertools.product((0, 1), repeat=len(self.indices)):
            chosen = [i for i, bit in zip(self.indices, vec) if bit]
            yield sum(vec) % 2, change_crossings(self.diagram, chosen)

    def to_json(self) -> dict:
        return {"kind": "crossings", "indices": list(self.indices)}


def _q_ok(region: TwistRegion, q: int, strict: bool) -> bool:
    qj = region.q
    if strict:
        return qj == q
    if q == 0:
        return qj == 0
    return qj % q == 0


@dataclass(frozen=True)
class RegionCollection:
    diagram: Diagram
    regions: tuple[TwistRegion, ...]
    n: int = 1
    q: int = 0
    strict_q: bool = False

    def __post_init__(self):
        object.__setattr__(self, "regions", tuple(self.regions))
        if not self.regions:
            raise ValueError("a region collection needs at least one region")
        if self.n < 1:
            raise ValueError("twist parameter n must be at least 1")
        if self.q < 0:
            raise ValueError("q must be non-negative")
        seen: set[int] = set()
        for r in self.regions:
            arcs = set(r.arcs)
            if arcs & seen:
                raise ValueError("regions must use pairwise disjoint arcs")
            seen |= arcs
            if not _q_ok(r, self.q, self.strict_q):
                raise ValueError(f"region {r.to_json()} has q_j = {r.q}, incompatible with q = {self.q}")

    @property
    def order(self) -> int:
        return len(self.regions) - 1

    def resolutions(self) -> Iterable[tuple[int, Diagram]]:
        for vec in itertools.product((0, 1), repeat=len(self.regions)):
            chosen = [r for r, bit in zip(self.regions, vec) if bit]
            yield sum(vec) % 2, insert_twists_at(self.diagram, chosen, self.n)

    def to_json(self) -> dict:
        return {
            "kind": "regions",
            "regions": [r.to_json() for r in self.regions],
            "q_j": [r.q_signed for r in self.regions],
        }


def _alternating_sum(f: Callable, resolutions) -> object:
    total = None
    for parity, d in resolutions:
        v = f(d)
        total = (v if parity == 0 else -v) if total is None else (total + v if parity == 0 else total - v)
    return total


def alternating_sum_crossings(f: Callable[[Diagram], object], cc: CrossingCollection):
    return _alternating_sum(f, cc.resolutions())


def alternating_sum_twists(f: Callable[[Diagram], object], rc: RegionCollection):
    return _alternating_sum(f, rc.resolutions())


def _is_zero(v) -> bool:
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return v == 0


# -- regions ------------------------------------------------------------------

def _ends(fm, a: int, e: int):
    """(face entered from, face exited into) when the path crosses ``a`` in direction ``e``."""
    return (fm.left[a], fm.right[a]) if e > 0 else (fm.right[a], fm.left[a])


def candidate_regions(d: Diagram, max_k: int) -> list[TwistRegion]:
    """Face-connected strand sequences of length 1..max_k, before any filtering."""
    fm = face_map(d)
    by_face: dict = {}
    for a in d.labels:
        for e in (1, -1):
            by_face.setdefault(_ends(fm, a, e)[0], []).append((a, e))
    pieces = sorted({fm.piece_of_arc[a] for a in d.labels}, key=repr)
    arcs_of_piece = {p: [a for a in d.labels if fm.piece_of_arc[a] == p] for p in pieces}
    out: list[TwistRegion] = []
    seen: set = set()

    def emit(path):
        try:
            r = TwistRegion(tuple(path))
        except DiagramError:
            return
        if r.key() not in seen:
            seen.add(r.key())
            out.append(r)

    def extend(path, visited_pieces):
        emit(path)
        if len(path) == max_k:
            return
        a, e = path[-1]
        face = _ends(fm, a, e)[1]
        nexts = list(by_face.get(face, []))
        # hop to a split piece not yet visited
        for p in pieces:
            if p not in visited_pieces:
                nexts += [(b, s) for b in arcs_of_piece[p] for s in (1, -1)]
        for b, s in nexts:
            if sum(1 for x, _ in path if x == b) >= 2:
                continue
            if any(x == b and y == s for x, y in path):
                continue
            extend(path + [(b, s)], visited_pieces | {fm.piece_of_arc[b]})

    for a in d.labels:
        for e in (1, -1):
            extend([(a, e)], {fm.piece_of_arc[a]})
    return out


def region_enumerator(d: Diagram, max_k: int = 2, q: int = 0, strict_q: bool = False) -> list[TwistRegion]:
    """Parallel-strand bundles of at most ``max_k`` strands that admit a twist box.

    Kept when q_j is 0 mod q (exactly q when strict; exactly 0 when q is 0)
    and a trial one-twist insertion is planar.  Order is deterministic.
    """
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    out = []
    for r in candidate_regions(d, max_k):
        if not _q_ok(r, q, strict_q):
            continue
        try:
            insert_twists_at(d, [r], 1)
        except (PlanarityError, DiagramError):
            continue
        out.append(r)
    return out


def region_collections(
    d: Diagram, regions: Sequence[TwistRegion], size: int, n: int = 1, q: int = 0,
    strict_q: bool = False, limit: int | None = None,
) -> Iterable[RegionCollection]:
    """Collections of ``size`` pairwise disjoint regions whose joint twist is planar."""
    count = 0
    for combo in itertools.combinations(range(len(regions)), size):
        rs = [regions[i] for i in combo]
        arcs = [a for r in rs for a in set(r.arcs)]
        if len(arcs) != len(set(arcs)):
            continue
        try:
            insert_twists_at(d, rs, 1)
        except PlanarityError:
            continue
        yield RegionCollection(d, tuple(rs), n, q, strict_q)
        count += 1
        if limit is not None and count >= limit:
            return


# -- probes -------------------------------------------------------------------

@dataclass
class ProbeReport:
    invariant: str
    order: int
    n: int | None
    q: int | None
    strict: bool | None
    tested_count: int = 0
    status: str = "vanished"
    certificate: dict | None = None
    diagrams: int = 0
    skipped: list = field(default_factory=list)
    per_diagram: list = field(default_factory=list)
    evaluations: int = 0
    budget: int = 0
    per_diagram_cap: int | None = None
    corpus: str | None = None
    flags: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "tool": "knotforge",
            "version": __version__,
            "invariant": self.invariant,
            "order": self.order,
            "n": self.n,
            "q": self.q,
            "strict": self.strict,
            "tested_count": self.tested_count,
            "status": self.status,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        out.update(
            {
                "corpus": self.corpus,
                "diagrams": self.diagrams,
                "skipped": self.skipped,
                "per_diagram": self.per_diagram,
                "evaluations": self.evaluations,
                "budget": self.budget,
                "per_diagram_cap": self.per_diagram_cap,
                "flags": self.flags,
                "note": "vanished means every tested sum vanished; it is evidence, not proof",
            }
        )
        return out


class _Counter:
    def __init__(self, f: Invariant, budget: int):
        self.f = f
        self.budget = budget
        self.used = 0

    def __call__(self, d: Diagram):
        if self.used >= self.budget:
            raise BudgetExhausted
        self.used += 1
        return self.f.evaluate(d)


def _named(corpus) -> list[tuple[str, Diagram]]:
    out = []
    for i, item in enumerate(corpus):
        if isinstance(item, Diagram):
            out.append((f"#{i}", item))
        else:
            name, d = item
            out.append((name, d))
    return out


def _certify(f: Invariant, coll, value, name: str) -> dict:
    check = _alternating_sum(f.oracle, coll.resolutions())
    if check != value or _is_zero(check):
        raise CertificateMismatch(f"oracle gives {check!r}, engine gave {value!r}")
    from knotforge.notation import emit_pd

    return {
        "diagram": name,
        "diagram_pd": emit_pd(coll.diagram),
        "collection": coll.to_json(),
        "value": value_to_json(value),
        "verified_by": "oracle",
    }


def _run(report: ProbeReport, f: Invariant, corpus, collections_of, budget: int) -> ProbeReport:
    counter = _Counter(f, budget)
    report.budget = budget
    try:
        for name, d in _named(corpus):
            if not f.applies_to(d):
                report.skipped.append(name)
                continue
            report.diagrams += 1
            row = [name, 0]
            report.per_diagram.append(row)
            for coll in collections_of(d):
                value = _alternating_sum(counter, coll.resolutions())
                report.tested_count += 1
                row[1] += 1
                if not _is_zero(value):
                    report.status = "certificate"
                    report.certificate = _certify(f, coll, value, name)
                    return report
    except BudgetExhausted:
        report.status = "budget_exhausted"
    finally:
        report.evaluations = counter.used
    return report


def probe_finite_type(
    f: Invariant, corpus, order: int, budget: int | None = None, per_diagram_cap: int | None = None,
) -> ProbeReport:
    """Evaluate every crossing-change sum of size ``order + 1``, lexicographically."""
    if order < 0:
        raise ValueError("order must be non-negative")
    budget = default_budget() if budget is None else budget
    report = ProbeReport(f.name, order, None, None, None, per_diagram_cap=per_diagram_cap)

    def collections_of(d):
        combos = itertools.combinations(range(d.n_crossings), order + 1)
        for i, idx in enumerate(combos):
            if per_diagram_cap is not None and i >= per_diagram_cap:
                return
            yield CrossingCollection(d, idx)

    return _run(report, f, corpus, collections_of, budget)


def probe_nq_finite(
    f: Invariant, corpus, n: int, q: int, order: int, strict_q: bool = False,
    budget: int | None = None, max_k: int = 2, per_diagram_cap: int | None = None,
) -> ProbeReport:
    """Evaluate twist sums over ``order + 1`` disjoint regions, lexicographically."""
    if order < 0:
        raise ValueError("order must be non-negative")
    budget = default_budget() if budget is None else budget
    report = ProbeReport(f.name, order, n, q, strict_q, per_diagram_cap=per_diagram_cap)

    def collections_of(d):
        regions = region_enumerator(d, max_k, q, strict_q)
        yield from region_collections(d, regions, order + 1, n, q, strict_q, per_diagram_cap)

    return _run(report, f, corpus, collections_of, budget)
