"""Reidemeister moves.

Sites:

* ``R1+``: ``(arc, sign, under_first)`` (or just ``arc``) adds a kink.
* ``R1-``: crossing index of a kink.
* ``R2+``: ``(TwistRegion with two strands, over)`` pushes one strand over the
  other (``over`` is 0 or 1, the index of the upper strand).
* ``R2-``: ``(x, y)`` crossings bounding a bigon with one strand on top.
* ``R3``: index into :func:`face_orbits` of a triangle with one strand over
  both others.

Moves refuse sites that do not admit them instead of guessing.
"""

from __future__ import annotations

from knotforge.diagram.core import (
    Diagram,
    DiagramError,
    PlanarityError,
    assemble,
    face_map,
    face_orbits,
    in_slots,
)
from knotforge.diagram.moves import delete_crossings
from knotforge.diagram.twist import TwistRegion, insert_braids


class MoveError(DiagramError):
    """The chosen site does not admit the requested move."""


_KINKS = {
    (1, True): lambda a, l, b: (a, b, l, l),
    (-1, True): lambda a, l, b: (a, l, l, b),
    (1, False): lambda a, l, b: (l, l, b, a),
    (-1, False): lambda a, l, b: (l, a, b, l),
}


def add_kink(d: Diagram, arc: int, sign: int = 1, under_first: bool = True) -> Diagram:
    if arc not in d.component_of:
        raise MoveError(f"arc {arc} is not in the diagram")
    if sign not in (1, -1):
        raise MoveError("kink sign must be +1 or -1")
    crossings, edges = d.keyed()
    a, l, b = (arc, 0), (arc, 1), (arc, 2)
    unions = []
    if d.is_circle(arc):
        unions.append((b, a))
    else:
        x, slot = d.heads[arc]
        tup = list(crossings[x][0])
        tup[slot] = b
        crossings[x] = (tuple(tup), crossings[x][1])
    crossings.append((_KINKS[(sign, under_first)](a, l, b), sign))
    return assemble(crossings, edges, unions)


def _is_kink(d: Diagram, x: int) -> bool:
    tup = d.crossings[x]
    return any(tup[s] == tup[(s + 1) % 4] for s in range(4))


def _bigon_ok(d: Diagram, x: int, y: int) -> bool:
    if x == y:
        return False
    for orbit in face_orbits(d):
        if len(orbit) != 2 or {orbit[0][0], orbit[1][0]} != {x, y}:
            continue
        # one bigon edge must sit in over slots (odd) at both ends, the
        # other in under slots at both ends
        (x0, s0), (x1, s1) = orbit
        a0 = d.crossings[x0][s0]
        a1 = d.crossings[x1][s1]
        ends0 = [(c, t) for c in (x0, x1) for t in range(4) if d.crossings[c][t] == a0]
        ends1 = [(c, t) for c in (x0, x1) for t in range(4) if d.crossings[c][t] == a1]
        par0 = {t % 2 for _, t in ends0}
        par1 = {t % 2 for _, t in ends1}
        if len(par0) == 1 and len(par1) == 1 and par0 != par1:
            return True
    return False


def _triangle(d: Diagram, face_index: int):
    orbits = face_orbits(d)
    if not 0 <= face_index < len(orbits):
        raise MoveError(f"face {face_index} does not exist")
    orbit = orbits[face_index]
    if len(orbit) != 3 or len({x for x, _ in orbit}) != 3:
        raise MoveError(f"face {face_index} is not a triangle on three crossings")
    return orbit


def _r3_lines(d: Diagram, orbit):
    (x1, s1), (x2, s2), (x3, s3) = orbit
    xs = {1: x1, 2: x2, 3: x3}
    ss = {1: s1, 2: s2, 3: s3}
    # outer ends listed counterclockwise around the triangle
    ends = [(x1, s1 + 1), (x1, s1 + 2), (x3, s3 + 1), (x3, s3 + 2), (x2, s2 + 1), (x2, s2 + 2)]
    ends = [(x, s % 4) for x, s in ends]
    # line i carries the triangle edge leaving x_i: (middle dart, end positions)
    lines = {
        1: ((x1, s1), (1, 4)),
        2: ((x2, s2), (5, 2)),
        3: ((x3, s3), (3, 0)),
    }
    return xs, ss, ends, lines


def r3_move(d: Diagram, face_index: int) -> Diagram:
    orbit = _triangle(d, face_index)
    xs, ss, ends, lines = _r3_lines(d, orbit)
    x1, x2, x3 = xs[1], xs[2], xs[3]
    # crossing of each pair of lines and the slot each line occupies there
    at = {
        (3, 1): (x1, {3: (ss[1] - 1) % 4, 1: ss[1]}),
        (1, 2): (x2, {1: (ss[2] - 1) % 4, 2: ss[2]}),
        (2, 3): (x3, {2: (ss[3] - 1) % 4, 3: ss[3]}),
    }
    over = {}
    for pair, (x, slots) in at.items():
        tops = [ln for ln, s in slots.items() if s % 2 == 1]
        if len(tops) != 1:
            raise MoveError("triangle crossing with inconsistent strands")
        over[frozenset(pair)] = tops[0]
    top_both = [ln for ln in (1, 2, 3) if all(over[frozenset(p)] == ln for p in at if ln in p)]
    bottom_both = [ln for ln in (1, 2, 3) if all(over[frozenset(p)] != ln for p in at if ln in p)]
    if not top_both or not bottom_both:
        raise MoveError("no strand passes over both others in this triangle")

    mids = {ln: d.crossings[dart[0]][dart[1]] for ln, (dart, _) in lines.items()}
    if len(set(mids.values())) != 3:
        raise MoveError("degenerate triangle")
    end_label = [d.crossings[x][s] for x, s in ends]

    def incoming(x, s):
        return s in in_slots(d.signs[x])

    # normalize each line to ends (p, p+3) with p < 3
    norm = {}
    for ln, (_, (u, v)) in lines.items():
        p, q = (u, v) if u < v else (v, u)
        forward = incoming(*ends[p])  # the line enters through end p
        norm[ln] = (p, q, forward)
    # old order along each line from its end p, then reversed
    old_first = {}
    for ln, (p, q, _) in norm.items():
        first_x = ends[p][0]
        others = [m for m in (1, 2, 3) if m != ln]
        pair_x = {m: at[(ln, m) if (ln, m) in at else (m, ln)][0] for m in others}
        old_first[ln] = next(m for m in others if pair_x[m] == first_x)
    new_first = {ln: next(m for m in (1, 2, 3) if m not in (ln, old_first[ln])) for ln in norm}

    def half_edges(ln, partner):
        p, q, forward = norm[ln]
        mid = (mids[ln], 0)
        if new_first[ln] == partner:
            toward_p, toward_q = (end_label[p], 0), mid
        else:
            toward_p, toward_q = mid, (end_label[q], 0)
        inc = p if forward else q
        return [(p, toward_p, inc == p), (q, toward_q, inc == q)]

    crossings, edges = d.keyed()
    kept = [c for i, c in enumerate(crossings) if i not in (x1, x2, x3)]
    for pair, (x, _) in at.items():
        a, b = pair
        top = over[frozenset(pair)]
        under = b if top == a else a
        hs = sorted(
            [(pos, key, inc, ln) for ln, other in ((a, b), (b, a)) for pos, key, inc in half_edges(ln, other)]
        )
        start = next(i for i, h in enumerate(hs) if h[3] == under and h[2])
        hs = hs[start:] + hs[:start]
        over_in = next(i for i, h in enumerate(hs) if h[3] == top and h[2])
        sign = 1 if over_in == 3 else -1
        if sign != d.signs[x]:
            raise MoveError("internal: R3 changed a crossing sign")
        kept.append((tuple(h[1] for h in hs), sign))
    return assemble(kept, edges)


def r3_sites(d: Diagram) -> list[int]:
    sites = []
    for i, orbit in enumerate(face_orbits(d)):
        if len(orbit) == 3 and len({x for x, _ in orbit}) == 3:
            try:
                r3_move(d, i)
            except MoveError:
                continue
            sites.append(i)
    return sites


def r2_add_sites(d: Diagram) -> list[tuple[TwistRegion, int]]:
    """Every two-strand region through one face (or across split pieces)."""
    fm = face_map(d)
    regions = []
    arcs = d.labels
    for a1 in arcs:
        for e1 in (1, -1):
            exit1 = fm.right[a1] if e1 > 0 else fm.left[a1]
            for a2 in arcs:
                if a2 == a1 and not d.is_circle(a1):
                    continue
                for e2 in (1, -1):
                    if a2 == a1 and e2 == e1:
                        continue
                    entry2 = fm.left[a2] if e2 > 0 else fm.right[a2]
                    same_piece = fm.piece_of_arc[a1] == fm.piece_of_arc[a2]
                    if same_piece and not d.is_circle(a1) and entry2 != exit1:
                        continue
                    if a1 == a2 and exit1 != entry2 and not d.is_circle(a1):
                        continue
                    regions.append(TwistRegion(((a1, e1), (a2, e2))))
    sites = []
    seen = set()
    for r in regions:
        if r.strands in seen:
            continue
        seen.add(r.strands)
        for over in (0, 1):
            try:
                insert_braids(d, [(r, [1, -1] if over == 0 else [-1, 1])])
            except (PlanarityError, DiagramError):
                break
            sites.append((r, over))
    return sites


def apply_reidemeister(d: Diagram, move: str, site) -> Diagram:
    if move == "R1+":
        if isinstance(site, int):
            return add_kink(d, site)
        return add_kink(d, *site)
    if move == "R1-":
        x = int(site)
        if not 0 <= x < d.n_crossings or not _is_kink(d, x):
            raise MoveError(f"crossing {site} is not a removable kink")
        return delete_crossings(d, [x])
    if move == "R2+":
        region, over = site
        if region.k != 2:
            raise MoveError("R2 needs a two-strand region")
        try:
            return insert_braids(d, [(region, [1, -1] if over == 0 else [-1, 1])])
        except PlanarityError as exc:
            raise MoveError(str(exc)) from exc
    if move == "R2-":
        x, y = site
        if not (0 <= x < d.n_crossings and 0 <= y < d.n_crossings) or not _bigon_ok(d, x, y):
            raise MoveError(f"crossings {site} do not bound a removable bigon")
        return delete_crossings(d, [x, y])
    if move == "R3":
        return r3_move(d, int(site))
    raise MoveError(f"unknown move {move!r}")


def reidemeister_sites(d: Diagram, move: str) -> list:
    if move == "R1+":
        return [(a, s, u) for a in d.labels for s in (1, -1) for u in (True, False)]
    if move == "R1-":
        return [x for x in range(d.n_crossings) if _is_kink(d, x)]
    if move == "R2+":
        return r2_add_sites(d)
    if move == "R2-":
        out = []
        for orbit in face_orbits(d):
            if len(orbit) == 2:
                x, y = sorted(h[0] for h in orbit)
                if _bigon_ok(d, x, y) and (x, y) not in out:
                    out.append((x, y))
        return out
    if move == "R3":
        return r3_sites(d)
    raise MoveError(f"unknown move {move!r}")


MOVES = ("R1+", "R1-", "R2+", "R2-", "R3")


def random_moves(d: Diagram, count: int, rng) -> tuple[Diagram, list[tuple[str, object]]]:
    """Apply ``count`` moves drawn with ``rng`` (a ``random.Random``); return the log too."""
    log = []
    for _ in range(count):
        options = [(m, reidemeister_sites(d, m)) for m in MOVES]
        options = [(m, s) for m, s in options if s]
        move, sites = rng.choice(options)
        site = rng.choice(sites)
        d = apply_reidemeister(d, move, site)
        log.append((move, site))
    return d, log
