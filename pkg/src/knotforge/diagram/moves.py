"""Local moves and constructions on diagrams."""

from __future__ import annotations

from typing import Sequence

from knotforge.diagram.core import Diagram, DiagramError, assemble, in_slots, out_slots


def _check_index(d: Diagram, c: int) -> None:
    if not 0 <= c < len(d.crossings):
        raise IndexError(f"crossing index {c} out of range for {len(d.crossings)} crossings")


def crossing_change(d: Diagram, c: int) -> Diagram:
    """Swap over and under at crossing ``c``; arc labels are kept."""
    _check_index(d, c)
    return change_crossings(d, [c])


def change_crossings(d: Diagram, indices: Sequence[int]) -> Diagram:
    """Change every crossing in ``indices`` (indices refer to ``d``)."""
    for i in indices:
        _check_index(d, i)
    chosen = set(indices)
    crossings, signs = [], []
    for i, (tup, s) in enumerate(zip(d.crossings, d.signs)):
        if i in chosen:
            a, b, c, e = tup
            tup = (e, a, b, c) if s > 0 else (b, c, e, a)
            s = -s
        crossings.append(tup)
        signs.append(s)
    order = sorted(range(len(crossings)), key=lambda i: crossings[i][0])
    return Diagram(tuple(crossings[i] for i in order), tuple(signs[i] for i in order), d.components)


def mirror(d: Diagram) -> Diagram:
    return change_crossings(d, range(len(d.crossings)))


def reverse(d: Diagram, components: Sequence[int] | None = None) -> Diagram:
    """Reverse the orientation of the given components (all by default)."""
    flip = set(range(d.n_components) if components is None else components)
    comp_of = d.component_of
    keyed = []
    for (a, b, c, e), s in zip(d.crossings, d.signs):
        under_flip = comp_of[a] in flip
        over_flip = comp_of[b] in flip
        tup = (c, e, a, b) if under_flip else (a, b, c, e)
        keyed.append((tuple((x,) for x in tup), -s if under_flip != over_flip else s))
    return assemble(keyed, [(a,) for a in d.labels])


def delete_crossings(d: Diagram, indices: Sequence[int]) -> Diagram:
    """Erase crossings, joining each strand straight through.

    Only meaningful where the result is isotopic (R1/R2 removal); callers
    check the site.
    """
    crossings, edges = d.keyed()
    gone = set(indices)
    unions = []
    kept = []
    for i, (tup, s) in enumerate(crossings):
        if i in gone:
            for si, so in zip(in_slots(s), out_slots(s)):
                unions.append((tup[si], tup[so]))
        else:
            kept.append((tup, s))
    return assemble(kept, edges, unions)


def oriented_smoothing(d: Diagram, c: int) -> Diagram:
    """Remove crossing ``c`` by the orientation-respecting smoothing."""
    _check_index(d, c)
    crossings, edges = d.keyed()
    tup, s = crossings[c]
    (ui, oi), (uo, oo) = in_slots(s), out_slots(s)
    unions = [(tup[ui], tup[oo]), (tup[oi], tup[uo])]
    return assemble(crossings[:c] + crossings[c + 1 :], edges, unions)


def connected_sum(d1: Diagram, d2: Diagram, a1: int | None = None, a2: int | None = None) -> Diagram:
    """Band-join two knots at arcs ``a1`` of ``d1`` and ``a2`` of ``d2`` (default: arc 1)."""
    if d1.n_components != 1 or d2.n_components != 1:
        raise DiagramError("connected sum is defined here for knots only")
    a1 = d1.labels[0] if a1 is None else a1
    a2 = d2.labels[0] if a2 is None else a2
    if a1 not in d1.component_of or a2 not in d2.component_of:
        raise DiagramError("connected-sum arc not present in diagram")
    if d2.n_crossings == 0:
        return d1
    if d1.n_crossings == 0:
        return d2
    crossings = []
    # a1 now runs from its old tail into d2's a2 head; a2's tail feeds a1's old head
    tail1 = d1.tails[a1]
    tail2 = d2.tails[a2]
    for tag, d, tail, other in ((0, d1, tail1, a2), (1, d2, tail2, a1)):
        for x, (tup, s) in enumerate(zip(d.crossings, d.signs)):
            keys = []
            for slot, a in enumerate(tup):
                if (x, slot) == tail:
                    keys.append((1 - tag, other))
                else:
                    keys.append((tag, a))
            crossings.append((tuple(keys), s))
    return assemble(crossings)


def braid_closure(word: Sequence[int], strands: int) -> Diagram:
    """Closure of a braid word; letter ``+i`` is a positive crossing of strands i, i+1.

    All strands run upward, so ``+i`` contributes sign +1 and ``-i`` sign -1.
    """
    if strands < 1:
        raise DiagramError("need at least one strand")
    for letter in word:
        if letter == 0 or abs(letter) > strands - 1:
            raise DiagramError(f"braid letter {letter} out of range for {strands} strands")
    current = [(p, 0) for p in range(strands)]
    crossings = []
    for step, letter in enumerate(word, start=1):
        i = abs(letter) - 1
        bl, br = current[i], current[i + 1]
        tl, tr = (i, step), (i + 1, step)
        if letter > 0:
            tup = (br, tr, tl, bl)  # over BL->TR, under BR->TL
        else:
            tup = (bl, br, tr, tl)  # over BR->TL, under BL->TR
        crossings.append((tup, 1 if letter > 0 else -1))
        current[i], current[i + 1] = tl, tr
    # closing: the top edge of position p is the bottom edge of position p
    unions = [((p, 0), current[p]) for p in range(strands)]
    return assemble(crossings, [(p, 0) for p in range(strands)], unions)


def linking_number(d: Diagram, comp1: int, comp2: int) -> int:
    """Half the signed count of crossings between two distinct components."""
    r = d.n_components
    if not (0 <= comp1 < r and 0 <= comp2 < r) or comp1 == comp2:
        raise DiagramError(f"invalid component pair ({comp1}, {comp2}) for {r} components")
    total = 0
    for x, s in enumerate(d.signs):
        cu, co = d.strand_components(x)
        if {cu, co} == {comp1, comp2}:
            total += s
    if total % 2:
        raise DiagramError("odd crossing count between components; diagram is not closed")
    return total // 2


def writhe(d: Diagram) -> int:
    return d.writhe
