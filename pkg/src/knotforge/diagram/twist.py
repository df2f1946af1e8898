"""Splicing braids into bundles of parallel strands; full-twist insertion.

A :class:`TwistRegion` describes a path that crosses ``k`` arcs in order.
Picture the path running left to right; arc ``j`` crosses it going up
(direction +1) or down (-1).  Up means the face the path comes from is on
the arc's left.  The path is thickened into a box and a braid on ``k``
strands, read bottom to top, is spliced in.  The box's transverse disk has
boundary linking the link ``sum(directions)`` times.

An arc may be listed twice, with opposite directions.  The stretch of arc
between the two crossing points then runs below the box (for a crossingless
circle, one stretch below and one above).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from knotforge.diagram.core import Diagram, DiagramError, PlanarityError, assemble, planarity_check


@dataclass(frozen=True)
class TwistRegion:
    strands: tuple[tuple[int, int], ...]

    def __post_init__(self):
        strands = tuple((int(a), int(e)) for a, e in self.strands)
        object.__setattr__(self, "strands", strands)
        if not strands:
            raise DiagramError("a twist region needs at least one strand")
        if any(e not in (1, -1) for _, e in strands):
            raise DiagramError("strand directions must be +1 or -1")
        seen: dict[int, list[int]] = {}
        for a, e in strands:
            seen.setdefault(a, []).append(e)
        for a, es in seen.items():
            if len(es) > 2 or (len(es) == 2 and es[0] == es[1]):
                raise DiagramError(f"arc {a} may cross the region at most twice, in opposite directions")

    @property
    def k(self) -> int:
        return len(self.strands)

    @property
    def arcs(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.strands)

    @property
    def q_signed(self) -> int:
        return sum(e for _, e in self.strands)

    @property
    def q(self) -> int:
        return abs(self.q_signed)

    def reversed(self) -> "TwistRegion":
        """The same disk crossed from the other side."""
        return TwistRegion(tuple((a, -e) for a, e in reversed(self.strands)))

    def key(self) -> tuple:
        """Identity of the underlying disk (a region and its reversal agree)."""
        return min(self.strands, self.reversed().strands)

    def to_json(self) -> list:
        return [[a, e] for a, e in self.strands]


def full_twist_word(k: int, n: int) -> list[int]:
    """``(s_1 s_2 ... s_(k-1))^(k|n|)``, letters inverted for negative ``n``."""
    sign = 1 if n >= 0 else -1
    return [sign * i for i in range(1, k)] * (k * abs(n))


def _simulate(directions: Sequence[int], word: Sequence[int], tag: int):
    """Run ``word`` through a box; return crossings over placeholder keys.

    Placeholder ``(tag, strand, i)`` is the i-th segment of a strand counted
    from the bottom of the box.
    """
    k = len(directions)
    at = list(range(k))
    count = [0] * k
    crossings = []
    for letter in word:
        i = abs(letter) - 1
        if not 0 <= i < k - 1:
            raise DiagramError(f"braid letter {letter} out of range for {k} strands")
        a, b = at[i], at[i + 1]  # strand at bottom-left, bottom-right
        bl, br = (tag, a, count[a]), (tag, b, count[b])
        tr, tl = (tag, a, count[a] + 1), (tag, b, count[b] + 1)
        if letter > 0:
            # over runs BL-TR (strand a), under BR-TL (strand b)
            tup = (br, tr, tl, bl) if directions[b] > 0 else (tl, bl, br, tr)
            over_in = bl if directions[a] > 0 else tr
        else:
            # over runs BR-TL (strand b), under BL-TR (strand a)
            tup = (bl, br, tr, tl) if directions[a] > 0 else (tr, tl, bl, br)
            over_in = br if directions[b] > 0 else tl
        slot = tup.index(over_in)
        crossings.append((tup, 1 if slot == 3 else -1))
        count[a] += 1
        count[b] += 1
        at[i], at[i + 1] = b, a
    if at != list(range(k)):
        raise DiagramError("spliced braid must be pure")
    return crossings, count


def insert_braids(
    d: Diagram,
    placements: Sequence[tuple[TwistRegion, Sequence[int]]],
    return_bundles: bool = False,
):
    """Splice a braid word into each region at once; regions must use disjoint arcs.

    Raises :class:`PlanarityError` if the spliced diagram has no planar
    realization (the regions were not bundles of one embedded disk).  With
    ``return_bundles``, also returns for each placement the region formed by
    the arcs just below the new box, where a further box stacks beneath it.
    """
    used: dict[int, int] = {}
    for p, (region, _) in enumerate(placements):
        for a in set(region.arcs):
            if a not in d.component_of:
                raise DiagramError(f"arc {a} is not in the diagram")
            if a in used:
                raise DiagramError(f"arc {a} lies in two regions")
            used[a] = p

    crossings, edges = d.keyed()
    unions = []
    head_key: dict[int, tuple] = {}
    placeholder: dict[tuple, tuple] = {}
    bottoms = []
    for p, (region, word) in enumerate(placements):
        dirs = [e for _, e in region.strands]
        box, count = _simulate(dirs, word, p)
        by_arc: dict[int, list[int]] = {}
        for j, (a, _) in enumerate(region.strands):
            by_arc.setdefault(a, []).append(j)
        for a, js in by_arc.items():
            if len(js) == 1:
                order = js
            else:
                # the downward crossing point comes first along the arc
                order = sorted(js, key=lambda j: dirs[j])
            t = 0
            for j in order:
                c = count[j]
                for i in range(c + 1):
                    seg = i if dirs[j] > 0 else c - i
                    placeholder[(p, j, seg)] = (a, t + i)
                t += c
            if d.is_circle(a):
                unions.append(((a, t), (a, 0)))
            else:
                head_key[a] = (a, t)
        crossings.extend((tuple(placeholder[k] for k in tup), s) for tup, s in box)
        bottoms.append([placeholder[(p, j, 0)] for j in range(len(dirs))])

    fixed = []
    for x, (tup, s) in enumerate(crossings):
        if x < d.n_crossings:
            tup = list(tup)
            for slot in (0, 3) if s > 0 else (0, 1):
                a = tup[slot][0]
                if a in head_key:
                    tup[slot] = head_key[a]
            tup = tuple(tup)
        fixed.append((tup, s))
    track = [k for ks in bottoms for k in ks]
    out, labels = assemble(fixed, edges, unions, track=track)
    if not planarity_check(out):
        names = "; ".join(str(r.to_json()) for r, _ in placements)
        raise PlanarityError(f"splicing at region(s) {names} gives a non-planar diagram")
    if not return_bundles:
        return out
    it = iter(labels)
    bundles = []
    for region, _ in placements:
        bundles.append(TwistRegion(tuple((next(it), e) for _, e in region.strands)))
    return out, bundles


def insert_full_twists(d: Diagram, r: TwistRegion, n: int, return_bundle: bool = False):
    """The t_(2n,q) move: ``n`` full twists on the strands of ``r`` (q = ``r.q``)."""
    if n == 0:
        return (d, r) if return_bundle else d
    result = insert_braids(d, [(r, full_twist_word(r.k, n))], return_bundles=return_bundle)
    if return_bundle:
        out, (bundle,) = result
        return out, bundle
    return result


def insert_twists_at(d: Diagram, regions: Sequence[TwistRegion], n: int) -> Diagram:
    """Apply the ``n``-fold full twist simultaneously at several disjoint regions."""
    if n == 0 or not regions:
        return d
    return insert_braids(d, [(r, full_twist_word(r.k, n)) for r in regions])


def clasp_region(d: Diagram, c: int) -> TwistRegion:
    """Antiparallel pair (incoming under-arc, outgoing over-arc) beside crossing ``c``.

    One full twist here, with ``n = sign(c)``, is isotopic to changing ``c``.
    """
    if not 0 <= c < d.n_crossings:
        raise IndexError(f"crossing index {c} out of range")
    s = d.signs[c]
    return TwistRegion(((d.crossings[c][0], s), (d.over_labels(c)[1], -s)))
