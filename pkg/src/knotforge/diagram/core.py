"""Oriented link diagrams as PD crossing lists.

Slot convention: each crossing lists four arc labels counterclockwise,
starting at the incoming under-arc.  The under strand enters at slot 0 and
leaves at slot 2.  A crossing has sign +1 exactly when the over strand runs
from slot 3 to slot 1.

Arcs are numbered ``1..N`` consecutively along each component.  A
crossingless component is a single arc that appears in no crossing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence


class DiagramError(ValueError):
    """A diagram (or a move on one) is malformed."""


class PlanarityError(DiagramError):
    """A construction produced a PD code with no planar realization."""


def in_slots(sign: int) -> tuple[int, int]:
    """(under-in, over-in) slot indices for a crossing of the given sign."""
    return (0, 3) if sign > 0 else (0, 1)


def out_slots(sign: int) -> tuple[int, int]:
    return (2, 1) if sign > 0 else (2, 3)


@dataclass(frozen=True)
class Diagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    signs: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]

    @classmethod
    def unknot(cls) -> "Diagram":
        return cls((), (), ((1,),))

    @classmethod
    def unlink(cls, r: int) -> "Diagram":
        return cls((), (), tuple((i,) for i in range(1, r + 1)))

    def __len__(self) -> int:
        return len(self.crossings)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def is_knot(self) -> bool:
        return len(self.components) == 1

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def labels(self) -> tuple[int, ...]:
        return tuple(a for comp in self.components for a in comp)

    @cached_property
    def component_of(self) -> dict[int, int]:
        return {a: i for i, comp in enumerate(self.components) for a in comp}

    @cached_property
    def successor(self) -> dict[int, int]:
        nxt = {}
        for comp in self.components:
            for i, a in enumerate(comp):
                nxt[a] = comp[(i + 1) % len(comp)]
        return nxt

    @cached_property
    def heads(self) -> dict[int, tuple[int, int]]:
        """label -> (crossing, slot) where the arc ends."""
        out = {}
        for x, (tup, s) in enumerate(zip(self.crossings, self.signs)):
            for slot in in_slots(s):
                out[tup[slot]] = (x, slot)
        return out

    @cached_property
    def tails(self) -> dict[int, tuple[int, int]]:
        """label -> (crossing, slot) where the arc starts."""
        out = {}
        for x, (tup, s) in enumerate(zip(self.crossings, self.signs)):
            for slot in out_slots(s):
                out[tup[slot]] = (x, slot)
        return out

    def is_circle(self, label: int) -> bool:
        """True for the single arc of a crossingless component."""
        return label not in self.heads

    def over_labels(self, x: int) -> tuple[int, int]:
        """(over-in, over-out) arcs at crossing ``x``."""
        tup, s = self.crossings[x], self.signs[x]
        return (tup[3], tup[1]) if s > 0 else (tup[1], tup[3])

    def under_labels(self, x: int) -> tuple[int, int]:
        tup = self.crossings[x]
        return tup[0], tup[2]

    def strand_components(self, x: int) -> tuple[int, int]:
        """(component of the under strand, component of the over strand)."""
        return self.component_of[self.crossings[x][0]], self.component_of[self.over_labels(x)[0]]

    def keyed(self) -> tuple[list[tuple[tuple, int]], list[tuple]]:
        """Crossings and edges with each label ``a`` turned into the key ``(a, 0)``.

        This is the input format of :func:`assemble`; moves build on it.
        """
        crossings = [(tuple((a, 0) for a in tup), s) for tup, s in zip(self.crossings, self.signs)]
        edges = [(a, 0) for a in self.labels]
        return crossings, edges

    def __str__(self) -> str:
        from knotforge.notation import emit_pd

        return emit_pd(self)


def _find(parent: dict, k):
    root = k
    while parent[root] != root:
        root = parent[root]
    while parent[k] != root:
        parent[k], k = root, parent[k]
    return root


def assemble(
    crossings: Sequence[tuple[Sequence[Hashable], int]],
    edges: Iterable[Hashable] = (),
    unions: Iterable[tuple[Hashable, Hashable]] = (),
    track: Sequence[Hashable] | None = None,
):
    """Build a normalized :class:`Diagram` from crossings over arbitrary edge keys.

    Keys must be mutually comparable (tuples of ints throughout the package).
    ``unions`` identifies keys that name the same edge; the smallest key of a
    class represents it.  Any edge class that meets no crossing becomes a
    crossingless component.  Components are ordered by their smallest key and
    numbered from it; crossings are sorted by their slot-0 label.

    With ``track``, returns ``(diagram, labels)`` where ``labels`` gives the
    final arc label of each tracked key.
    """
    parent: dict = {}
    for tup, _ in crossings:
        for k in tup:
            parent.setdefault(k, k)
    for k in edges:
        parent.setdefault(k, k)
    for a, b in unions:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            parent[rb] = ra
    rep = {k: _find(parent, k) for k in parent}

    xs = [(tuple(rep[k] for k in tup), s) for tup, s in crossings]
    head: dict = {}
    tail: dict = {}
    for x, (tup, s) in enumerate(xs):
        if s not in (1, -1):
            raise DiagramError(f"crossing {x} has sign {s!r}")
        for slot in in_slots(s):
            if tup[slot] in head:
                raise DiagramError(f"edge {tup[slot]!r} enters two crossings")
            head[tup[slot]] = (x, slot)
        for slot in out_slots(s):
            if tup[slot] in tail:
                raise DiagramError(f"edge {tup[slot]!r} leaves two crossings")
            tail[tup[slot]] = (x, slot)
    if set(head) != set(tail):
        raise DiagramError("edge ends do not match up")

    reps = sorted(set(rep.values()))
    nxt = {}
    for k, (x, slot) in head.items():
        nxt[k] = xs[x][0][(slot + 2) % 4]

    seen = set()
    label = {}
    comps = []
    n = 0
    for k in reps:
        if k in seen:
            continue
        cycle = [k]
        seen.add(k)
        if k in nxt:
            j = nxt[k]
            while j != k:
                if j in seen:
                    raise DiagramError("edge successor relation is not a permutation")
                cycle.append(j)
                seen.add(j)
                j = nxt[j]
        comp = []
        for j in cycle:
            n += 1
            label[j] = n
            comp.append(n)
        comps.append(tuple(comp))

    relabeled = sorted(((tuple(label[k] for k in tup), s) for tup, s in xs), key=lambda p: p[0][0])
    d = Diagram(
        tuple(t for t, _ in relabeled),
        tuple(s for _, s in relabeled),
        tuple(comps),
    )
    if track is None:
        return d
    return d, [label[rep[k]] for k in track]


def normalize(d: Diagram) -> Diagram:
    """Relabel ``d`` by the standard traversal (identity on normalized diagrams)."""
    crossings, edges = d.keyed()
    return assemble(crossings, edges)


def canonical(d: Diagram) -> Diagram:
    """Normal form independent of where each component's numbering starts.

    Minimizes the relabeled crossing list over every choice of starting arc
    in every component (component order is kept).  Use this to compare
    diagrams that came from different constructions.
    """
    best = None
    starts = [[]]
    for comp in d.components:
        starts = [s + [a] for s in starts for a in comp]
    for choice in starts:
        rank = {}
        n = 0
        for comp, start in zip(d.components, choice):
            i = comp.index(start)
            for a in comp[i:] + comp[:i]:
                n += 1
                rank[a] = n
        crossings = [(tuple((rank[a],) for a in tup), s) for tup, s in zip(d.crossings, d.signs)]
        cand = assemble(crossings, [(rank[a],) for a in d.labels])
        key = (cand.crossings, cand.signs)
        if best is None or key < best[0]:
            best = (key, cand)
    return best[1]


def validate(d: Diagram, check_planar: bool = True) -> list[str]:
    """Return human-readable violations; empty means ``d`` is a valid diagram."""
    problems = []
    labels = [a for comp in d.components for a in comp]
    if not d.components:
        problems.append("components: diagram has no components")
    if any(len(c) == 0 for c in d.components):
        problems.append("components: empty component")
    if len(set(labels)) != len(labels):
        problems.append("components: an arc label is listed in two components")
    label_set = set(labels)
    counts: dict[int, int] = {}
    for x, tup in enumerate(d.crossings):
        if len(tup) != 4:
            problems.append(f"crossing {x}: expected 4 slots, got {len(tup)}")
            continue
        for a in tup:
            counts[a] = counts.get(a, 0) + 1
            if a not in label_set:
                problems.append(f"crossing {x}: arc {a} belongs to no component")
    for a in labels:
        c = counts.get(a, 0)
        if c not in (0, 2):
            problems.append(f"arc {a}: appears {c} times in crossings (expected 2)")
    for a, c in counts.items():
        if c > 2 and a not in label_set:
            problems.append(f"arc {a}: appears {c} times in crossings (expected 2)")
    for comp in d.components:
        zero = [a for a in comp if counts.get(a, 0) == 0]
        if zero and len(comp) != 1:
            problems.append(f"component {comp}: arcs {zero} meet no crossing")
    if len(d.signs) != len(d.crossings) or any(s not in (1, -1) for s in d.signs):
        problems.append("signs: one sign of +1 or -1 per crossing required")
    if problems:
        return problems
    succ = d.successor
    entered = {}
    left = {}
    for x, (tup, s) in enumerate(zip(d.crossings, d.signs)):
        (ui, oi), (uo, oo) = in_slots(s), out_slots(s)
        for i_slot, o_slot, which in ((ui, uo, "under"), (oi, oo, "over")):
            a, b = tup[i_slot], tup[o_slot]
            if succ.get(a) != b:
                problems.append(f"crossing {x}: {which} strand {a}->{b} disagrees with component order")
            if a in entered:
                problems.append(f"arc {a}: enters crossings {entered[a]} and {x}")
            entered[a] = x
            if b in left:
                problems.append(f"arc {b}: leaves crossings {left[b]} and {x}")
            left[b] = x
    if not problems and check_planar and not planarity_check(d):
        problems.append("planarity: face count violates V - E + F = 2")
    return problems


def _dart_partner(d: Diagram) -> dict[tuple[int, int], tuple[int, int]]:
    where: dict[int, list[tuple[int, int]]] = {}
    for x, tup in enumerate(d.crossings):
        for s, a in enumerate(tup):
            where.setdefault(a, []).append((x, s))
    partner = {}
    for a, (p, q) in where.items():
        partner[p] = q
        partner[q] = p
    return partner


def face_orbits(d: Diagram) -> list[list[tuple[int, int]]]:
    """Faces of the 4-valent diagram graph as cycles of darts ``(crossing, slot)``.

    A dart is followed along its edge to the far crossing, then the walk turns
    to the next slot counterclockwise there; the face lies to the right of
    every dart in its orbit.
    """
    partner = _dart_partner(d)
    seen = set()
    faces = []
    for x in range(len(d.crossings)):
        for s in range(4):
            start = (x, s)
            if start in seen:
                continue
            orbit = []
            h = start
            while h not in seen:
                seen.add(h)
                orbit.append(h)
                y, t = partner[h]
                h = (y, (t + 1) % 4)
            faces.append(orbit)
    return faces


def graph_components(d: Diagram) -> list[set[int]]:
    """Crossing sets of the connected pieces of the diagram graph."""
    adj: dict[int, set[int]] = {x: set() for x in range(len(d.crossings))}
    for a, (x, _) in d.heads.items():
        y = d.tails[a][0]
        adj[x].add(y)
        adj[y].add(x)
    out = []
    seen = set()
    for x in adj:
        if x in seen:
            continue
        stack, piece = [x], set()
        while stack:
            y = stack.pop()
            if y in piece:
                continue
            piece.add(y)
            stack.extend(adj[y] - piece)
        seen |= piece
        out.append(piece)
    return out


def planarity_check(d: Diagram) -> bool:
    """Euler's formula ``V - E + F = 2`` on every connected piece."""
    faces = face_orbits(d)
    face_count: dict[int, int] = {}
    piece_of = {}
    pieces = graph_components(d)
    for i, piece in enumerate(pieces):
        for x in piece:
            piece_of[x] = i
    for orbit in faces:
        i = piece_of[orbit[0][0]]
        face_count[i] = face_count.get(i, 0) + 1
    for i, piece in enumerate(pieces):
        v = len(piece)
        if v - 2 * v + face_count.get(i, 0) != 2:
            return False
    return True


@dataclass(frozen=True)
class FaceMap:
    """Which face lies on each side of every arc (sides taken along orientation)."""

    faces: tuple[tuple[tuple[int, int], ...], ...]
    left: dict
    right: dict
    piece_of_face: dict
    piece_of_arc: dict

    def arcs_on(self, face) -> list[int]:
        out = [a for a, f in self.left.items() if f == face]
        out += [a for a, f in self.right.items() if f == face]
        return sorted(set(out))


def face_map(d: Diagram) -> FaceMap:
    """Left/right faces of each arc.

    Faces with crossings are numbered by orbit index.  A crossingless arc
    ``a`` gets the two private faces ``("in", a)`` / ``("out", a)``.
    """
    orbits = face_orbits(d)
    dart_face = {}
    for i, orbit in enumerate(orbits):
        for h in orbit:
            dart_face[h] = i
    pieces = graph_components(d)
    piece_of_x = {x: i for i, p in enumerate(pieces) for x in p}
    left, right, piece_arc = {}, {}, {}
    for a in d.labels:
        if d.is_circle(a):
            left[a], right[a] = ("in", a), ("out", a)
            piece_arc[a] = ("circle", a)
            continue
        right[a] = dart_face[d.tails[a]]
        left[a] = dart_face[d.heads[a]]
        piece_arc[a] = piece_of_x[d.tails[a][0]]
    piece_face = {i: piece_of_x[orbit[0][0]] for i, orbit in enumerate(orbits)}
    return FaceMap(tuple(tuple(o) for o in orbits), left, right, piece_face, piece_arc)
