"""Text and JSON forms of diagrams: PD codes, signed Gauss codes, braid words.

PD grammar::

    pd        := [crossing (";" crossing)*] "/" comp+
    crossing  := "X" ["+" | "-"] "[" int "," int "," int "," int "]"
    comp      := "(" int [".." int] ")"

Slots are listed counterclockwise from the incoming under-arc.  The over
strand's direction is read from the component order.  When that is
ambiguous (a two-arc component passing over twice), ``X+``/``X-`` pins the
crossing sign; :func:`emit_pd` writes the marker only where it is needed.

Gauss grammar: components separated by ``|``; each is a run of tokens
``O<id><sign>`` / ``U<id><sign>``, or the single token ``o`` for a
crossingless component.  The empty string is the unknot.

Braid grammar: ``[braid:] s=<strands> w=[l1,l2,...]``.
"""

from __future__ import annotations

import json
import re
from typing import Sequence

from knotforge.diagram.core import Diagram, assemble, normalize, planarity_check, validate
from knotforge.diagram.moves import braid_closure


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int | None = None):
        self.line = self.column = None
        if pos is not None:
            self.line = text.count("\n", 0, pos) + 1
            self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
            message = f"line {self.line}, column {self.column}: {message}"
        super().__init__(message)


class RealizabilityError(ParseError):
    """The code describes no planar diagram."""


_WS = re.compile(r"\s*")
_CROSSING = re.compile(r"X([+-]?)\[\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")
_COMP = re.compile(r"\(\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?\)")


def infer_signs(
    crossings: Sequence[tuple[int, int, int, int]],
    components: Sequence[Sequence[int]],
    markers: dict[int, int] | None = None,
) -> list[int]:
    """Crossing signs implied by the component order.

    Each arc enters exactly one crossing, which settles most two-arc
    components; anything still open takes the step ``a -> a+1`` as the over
    direction.  ``markers`` pins signs by crossing index.
    """
    succ = {}
    for comp in components:
        for i, a in enumerate(comp):
            succ[a] = comp[(i + 1) % len(comp)]
    markers = markers or {}
    options: dict[int, set[int]] = {}
    for x, (a, b, c, e) in enumerate(crossings):
        opts = set()
        if succ.get(b) == e:
            opts.add(-1)
        if succ.get(e) == b:
            opts.add(1)
        if x in markers:
            opts &= {markers[x]}
        options[x] = opts
    signs: dict[int, int] = {}
    used_in = {tup[0] for tup in crossings}
    used_out = {tup[2] for tup in crossings}

    def fix(x, s):
        a, b, c, e = crossings[x]
        signs[x] = s
        used_in.add(e if s > 0 else b)
        used_out.add(b if s > 0 else e)

    while len(signs) < len(crossings):
        progress = False
        for x, opts in options.items():
            if x in signs:
                continue
            a, b, c, e = crossings[x]
            live = {s for s in opts if (e if s > 0 else b) not in used_in and (b if s > 0 else e) not in used_out}
            if not live:
                raise ParseError(f"crossing {x + 1} ({list(crossings[x])}): over strand fits no orientation")
            if len(live) == 1:
                fix(x, live.pop())
                progress = True
        if not progress:
            x = min(i for i in options if i not in signs)
            a, b, c, e = crossings[x]
            fix(x, -1 if e == b + 1 else 1)
    return [signs[x] for x in range(len(crossings))]


def parse_pd(text: str) -> Diagram:
    pos = _WS.match(text, 0).end()
    crossings = []
    starts = []
    markers = {}
    while pos < len(text) and text[pos] == "X":
        m = _CROSSING.match(text, pos)
        if not m:
            raise ParseError("malformed crossing, expected X[a,b,c,d]", text, pos)
        if m.group(1):
            markers[len(crossings)] = 1 if m.group(1) == "+" else -1
        crossings.append(tuple(int(m.group(i)) for i in range(2, 6)))
        starts.append(pos)
        pos = _WS.match(text, m.end()).end()
        if pos < len(text) and text[pos] == ";":
            pos = _WS.match(text, pos + 1).end()
        elif pos < len(text) and text[pos] != "/":
            raise ParseError("expected ';' or '/'", text, pos)
    if pos >= len(text) or text[pos] != "/":
        raise ParseError("expected '/' before the component list", text, pos)
    pos = _WS.match(text, pos + 1).end()
    components = []
    while pos < len(text):
        m = _COMP.match(text, pos)
        if not m:
            raise ParseError("malformed component, expected (a..b)", text, pos)
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        if hi < lo:
            raise ParseError("empty component range", text, pos)
        components.append(tuple(range(lo, hi + 1)))
        pos = _WS.match(text, m.end()).end()
    if not components:
        raise ParseError("no components given", text, pos)
    return _build(crossings, components, markers, text, starts)


def _build(crossings, components, markers=None, text: str = "", starts=None) -> Diagram:
    problems = []
    where = None
    labels = [a for comp in components for a in comp]
    counts: dict[int, int] = {}
    for tup in crossings:
        for a in tup:
            counts[a] = counts.get(a, 0) + 1
    for a, c in sorted(counts.items()):
        if c != 2 or a not in labels:
            problems.append(f"arc {a}: appears {c} times in crossings (expected 2)")
            if where is None and starts:
                where = starts[next(i for i, tup in enumerate(crossings) if a in tup)]
    if len(set(labels)) != len(labels):
        problems.append("components: an arc label is listed twice")
    if problems:
        raise ParseError("invalid diagram: " + "; ".join(problems), text, where)
    signs = infer_signs(crossings, components, markers)
    d = Diagram(tuple(crossings), tuple(signs), tuple(components))
    problems = validate(d, check_planar=False)
    if problems:
        raise ParseError("invalid diagram: " + "; ".join(problems))
    if not planarity_check(d):
        raise RealizabilityError("code is not realizable as a planar diagram")
    return normalize(d)


def emit_pd(d: Diagram) -> str:
    markers: dict[int, int] = {}
    while True:
        inferred = infer_signs(d.crossings, d.components, markers)
        wrong = [x for x, (s, t) in enumerate(zip(inferred, d.signs)) if s != t]
        if not wrong:
            break
        markers[wrong[0]] = d.signs[wrong[0]]
    parts = []
    for x, tup in enumerate(d.crossings):
        mark = "" if x not in markers else ("+" if markers[x] > 0 else "-")
        parts.append(f"X{mark}[{','.join(str(a) for a in tup)}]")
    comps = "".join(f"({c[0]})" if len(c) == 1 else f"({c[0]}..{c[-1]})" for c in d.components)
    body = ";".join(parts)
    return f"{body} / {comps}" if body else f"/ {comps}"


_GAUSS_TOKEN = re.compile(r"([OU])(\d+)([+-])")


def parse_gauss(text: str) -> Diagram:
    stripped = text.strip()
    if not stripped:
        return Diagram.unknot()
    comps_tokens = []
    offset = text.index(stripped)
    for chunk in stripped.split("|"):
        start = offset
        offset += len(chunk) + 1
        body = chunk.strip()
        if body == "o":
            comps_tokens.append([])
            continue
        pos = 0
        toks = []
        while pos < len(chunk):
            if chunk[pos].isspace():
                pos += 1
                continue
            m = _GAUSS_TOKEN.match(chunk, pos)
            if not m:
                raise ParseError("expected O<id><sign> or U<id><sign>", text, start + pos)
            toks.append((m.group(1), int(m.group(2)), 1 if m.group(3) == "+" else -1, start + pos))
            pos = m.end()
        if not toks:
            raise ParseError("empty component (write 'o' for a crossingless circle)", text, start)
        comps_tokens.append(toks)

    passes: dict[int, dict[str, tuple]] = {}
    label = 0
    components = []
    for toks in comps_tokens:
        if not toks:
            label += 1
            components.append((label,))
            continue
        base = label + 1
        n = len(toks)
        for i, (ou, cid, sign, at) in enumerate(toks):
            entry = passes.setdefault(cid, {})
            if ou in entry:
                raise ParseError(f"crossing {cid} has two {ou} passes", text, at)
            entry[ou] = (base + i, base + (i + 1) % n, sign, at)
        components.append(tuple(range(base, base + n)))
        label += n
    crossings = []
    signs = []
    for cid in sorted(passes):
        entry = passes[cid]
        if set(entry) != {"O", "U"}:
            raise ParseError(f"crossing {cid} needs one O and one U pass", text, next(iter(entry.values()))[3])
        oi, oo, so, at = entry["O"]
        ui, uo, su, _ = entry["U"]
        if so != su:
            raise ParseError(f"crossing {cid} has inconsistent signs", text, at)
        crossings.append((ui, oo, uo, oi) if so > 0 else (ui, oi, uo, oo))
        signs.append(so)
    d = Diagram(tuple(crossings), tuple(signs), tuple(components))
    problems = validate(d, check_planar=False)
    if problems:
        raise ParseError("invalid diagram: " + "; ".join(problems))
    if not planarity_check(d):
        raise RealizabilityError("Gauss code is not realizable as a planar diagram")
    return normalize(d)


def emit_gauss(d: Diagram) -> str:
    comps = []
    for comp in d.components:
        if len(comp) == 1 and d.is_circle(comp[0]):
            comps.append("o")
            continue
        toks = []
        for a in comp:
            x, slot = d.heads[a]
            ou = "U" if slot == 0 else "O"
            toks.append(f"{ou}{x + 1}{'+' if d.signs[x] > 0 else '-'}")
        comps.append("".join(toks))
    if comps == ["o"]:
        return ""
    return "|".join(comps)


_BRAID = re.compile(r"\s*(?:braid\s*:\s*)?s\s*=\s*(\d+)\s+w\s*=\s*\[([^\]]*)\]\s*$")


def parse_braid(text: str) -> tuple[list[int], int]:
    m = _BRAID.match(text)
    if not m:
        raise ParseError("expected 'braid: s=<n> w=[...]'", text, 0)
    strands = int(m.group(1))
    body = m.group(2).strip()
    try:
        word = [int(tok) for tok in body.split(",")] if body else []
    except ValueError:
        raise ParseError("braid letters must be integers", text, m.start(2)) from None
    for letter in word:
        if letter == 0 or abs(letter) > strands - 1:
            raise ParseError(f"braid letter {letter} out of range for {strands} strands", text, m.start(2))
    return word, strands


def emit_braid(word: Sequence[int], strands: int) -> str:
    return f"braid: s={strands} w=[{','.join(str(x) for x in word)}]"


def diagram_from_braid(text: str) -> Diagram:
    word, strands = parse_braid(text)
    return braid_closure(word, strands)


def diagram_to_json(d: Diagram) -> dict:
    return {
        "crossings": [list(t) for t in d.crossings],
        "signs": list(d.signs),
        "components": [list(c) for c in d.components],
    }


def diagram_from_json(obj: dict | str) -> Diagram:
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.doc, exc.pos) from None
    try:
        crossings = [tuple(int(a) for a in t) for t in obj["crossings"]]
        components = [tuple(int(a) for a in c) for c in obj["components"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"diagram JSON needs integer 'crossings' and 'components' ({exc})") from None
    if any(len(t) != 4 for t in crossings):
        raise ParseError("every crossing needs four arc labels")
    if "signs" in obj and obj["signs"] is not None:
        d = Diagram(tuple(crossings), tuple(int(s) for s in obj["signs"]), tuple(components))
        problems = validate(d)
        if problems:
            raise ParseError("invalid diagram: " + "; ".join(problems))
        return normalize(d)
    return _build(crossings, components)


DIAGRAM_JSON_SCHEMA = {
    "type": "object",
    "required": ["crossings", "components"],
    "properties": {
        "crossings": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4},
        },
        "signs": {"type": "array", "items": {"enum": [1, -1]}},
        "components": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
        },
    },
}


def parse_any(text: str) -> Diagram:
    """Dispatch on the leading token: JSON object, braid, PD, or Gauss."""
    s = text.strip()
    if s.startswith("{"):
        return diagram_from_json(s)
    if s.startswith("braid") or s.startswith("s="):
        return diagram_from_braid(s)
    if s.startswith("X") or s.startswith("/"):
        return parse_pd(s)
    return parse_gauss(s)


def from_keyed(crossings, edges=()) -> Diagram:
    return assemble(crossings, edges)
