"""Exact invariant engines behind one name-addressable interface.

Names: ``jones``, ``conway``, ``det``, ``colorings:m``, ``arf``, ``a:n``,
``c:n`` and ``components``.  Every engine has a second, independent
evaluation path (``Invariant.oracle``) used by the test-suite and by the
probes to re-check certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable

from knotforge.algebra import IntMatrix, LaurentPoly, count_solutions_mod, substitute_exp
from knotforge.diagram.core import Diagram, _find
from knotforge.diagram.moves import change_crossings, oriented_smoothing

MAX_BRACKET_CROSSINGS = 60
MAX_STATE_SUM_CROSSINGS = 16


class InvariantError(ValueError):
    """The invariant is not defined on this input."""


class UnknownInvariant(KeyError):
    pass


def _need_knot(d: Diagram, what: str) -> None:
    if d.n_components != 1:
        raise InvariantError(f"{what} is defined for knots; diagram has {d.n_components} components")


# -- Kauffman bracket ---------------------------------------------------------

_DELTA = {2: -1, -2: -1}


def _pmul(p: dict, q: dict) -> dict:
    out: dict[int, int] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _smoothings(tup):
    a, b, c, e = tup
    # A-smoothing joins slots 0-1 and 2-3; B joins 1-2 and 3-0
    return (((a, b), (c, e)), 1), (((b, c), (e, a)), -1)


def _crossing_order(d: Diagram) -> list[int]:
    """Greedy order keeping the set of half-processed arcs small."""
    left = set(range(d.n_crossings))
    order = []
    open_arcs: set[int] = set()
    while left:
        best = max(left, key=lambda x: (sum(1 for a in d.crossings[x] if a in open_arcs), -x))
        left.remove(best)
        order.append(best)
        for a in d.crossings[best]:
            open_arcs ^= {a}
    return order


def _join(match: dict, u: int, v: int) -> tuple[dict, int]:
    """Add a strand u-v to a partial matching; return (matching, loops closed)."""
    if u == v:
        return match, 1
    m = dict(match)
    pu = m.pop(u, None)
    pv = m.pop(v, None)
    if pu is None and pv is None:
        m[u], m[v] = v, u
        return m, 0
    if pu is not None and pv is not None:
        if pu == v:
            return m, 1
        m[pu], m[pv] = pv, pu
        return m, 0
    end, new = (pu, v) if pu is not None else (pv, u)
    m[end], m[new] = new, end
    return m, 0


@lru_cache(maxsize=4096)
def _bracket_terms(d: Diagram) -> tuple:
    if d.n_crossings > MAX_BRACKET_CROSSINGS:
        raise InvariantError(f"bracket refuses diagrams above {MAX_BRACKET_CROSSINGS} crossings")
    states: dict[tuple, dict] = {(): {0: 1}}
    for x in _crossing_order(d):
        nxt: dict[tuple, dict] = {}
        for key, poly in states.items():
            base = dict(key)
            for pairs, weight in _smoothings(d.crossings[x]):
                m, loops = base, 0
                for u, v in pairs:
                    m, closed = _join(m, u, v)
                    loops += closed
                p = {e + weight: c for e, c in poly.items()}
                for _ in range(loops):
                    p = _pmul(p, _DELTA)
                k = tuple(sorted(m.items()))
                acc = nxt.setdefault(k, {})
                for e, c in p.items():
                    acc[e] = acc.get(e, 0) + c
        states = {k: {e: c for e, c in v.items() if c} for k, v in nxt.items()}
    total = states.get((), {})
    circles = sum(1 for comp in d.components if len(comp) == 1 and d.is_circle(comp[0]))
    for _ in range(circles):
        total = _pmul(total, _DELTA)
    # every state closed at least one loop; drop the normalizing delta
    return LaurentPoly("A", total).exact_divide(LaurentPoly("A", _DELTA)).terms


def kauffman_bracket(d: Diagram) -> LaurentPoly:
    return LaurentPoly("A", _bracket_terms(d))


def bracket_state_sum(d: Diagram) -> LaurentPoly:
    """Reference bracket: the plain sum over all 2^c states."""
    if d.n_crossings > MAX_STATE_SUM_CROSSINGS:
        raise InvariantError(f"state sum refuses diagrams above {MAX_STATE_SUM_CROSSINGS} crossings")
    delta = LaurentPoly("A", _DELTA)
    total = LaurentPoly("A")
    for state in itertools.product((0, 1), repeat=d.n_crossings):
        parent = {a: a for a in d.labels}
        for x, choice in enumerate(state):
            for u, v in _smoothings(d.crossings[x])[choice][0]:
                ru, rv = _find(parent, u), _find(parent, v)
                parent[ru] = rv
        loops = len({_find(parent, a) for a in d.labels})
        a_count = state.count(0)
        b_count = len(state) - a_count
        total = total + LaurentPoly.monomial("A", a_count - b_count) * delta ** (loops - 1)
    return total


def _jones_from_bracket(bracket: LaurentPoly, writhe: int) -> LaurentPoly:
    f = LaurentPoly.monomial("A", -3 * writhe, (-1) ** writhe) * bracket
    return LaurentPoly("u", {-e: c for e, c in f.terms})


def jones(d: Diagram) -> LaurentPoly:
    """Jones polynomial in ``u`` with ``u**4 = t``; unknot is 1."""
    return _jones_from_bracket(kauffman_bracket(d), d.writhe)


def jones_t(d: Diagram) -> LaurentPoly:
    """Jones polynomial of a knot in ``t``."""
    _need_knot(d, "jones in t")
    return jones(d).divide_exponents(4, "t")


def vassiliev_coefficient(d: Diagram, n: int, poly: LaurentPoly | None = None) -> Fraction:
    """Coefficient of x^n after substituting t = e^x in the Jones polynomial."""
    if n < 0:
        raise InvariantError("order must be non-negative")
    _need_knot(d, "a_n")
    p = jones(d) if poly is None else poly
    return substitute_exp(p, Fraction(1, 4), n)[n]


# -- Conway polynomial ---------------------------------------------------------

def _walk(d: Diagram, reverse_order: bool = False, shift: int = 0):
    """Arc order of the skein traversal: components in order, each from its base arc."""
    comps = list(d.components)
    if reverse_order:
        comps.reverse()
    for comp in comps:
        k = shift % len(comp)
        yield from comp[k:] + comp[:k]


def _first_bad(d: Diagram, reverse_order: bool, shift: int) -> tuple[int | None, int]:
    """First crossing reached along its under strand, and the number of such crossings."""
    seen = set()
    bad = []
    for a in _walk(d, reverse_order, shift):
        if d.is_circle(a):
            continue
        x, slot = d.heads[a]
        if x in seen:
            continue
        seen.add(x)
        if slot == 0:
            bad.append(x)
    return (bad[0] if bad else None), len(bad)


def _skein(d: Diagram, reverse_order: bool, shift: int, memo: dict) -> dict:
    if d in memo:
        return memo[d]
    x, badness = _first_bad(d, reverse_order, shift)
    if x is None:
        result = {0: 1} if d.n_components == 1 else {}
    else:
        switched = change_crossings(d, [x])
        _, b2 = _first_bad(switched, reverse_order, shift)
        assert b2 < badness, "skein measure must decrease"
        smoothed = oriented_smoothing(d, x)
        assert smoothed.n_crossings < d.n_crossings
        s = d.signs[x]
        result = dict(_skein(switched, reverse_order, shift, memo))
        for e, c in _skein(smoothed, reverse_order, shift, memo).items():
            result[e + 1] = result.get(e + 1, 0) + s * c
        result = {e: c for e, c in result.items() if c}
    memo[d] = result
    return result


_CONWAY_MEMO: dict = {}


def conway(d: Diagram) -> LaurentPoly:
    """Conway polynomial by the descending-diagram skein recursion."""
    if len(_CONWAY_MEMO) > 200_000:
        _CONWAY_MEMO.clear()
    return LaurentPoly("z", _skein(d, False, 0, _CONWAY_MEMO))


def conway_alt(d: Diagram) -> LaurentPoly:
    """The same skein run with reversed component order and shifted basepoints."""
    return LaurentPoly("z", _skein(d, True, 1, {}))


def conway_coefficient(d: Diagram, n: int) -> int:
    return conway(d).coeff(n)


# -- Fox colorings and the determinant ----------------------------------------

def coloring_matrix(d: Diagram) -> tuple[IntMatrix, list[int]]:
    """Rows: crossings, 2*over - under_in - under_out; columns: over-arcs."""
    parent = {a: a for a in d.labels}
    for x in range(d.n_crossings):
        b, e = d.over_labels(x)
        rb, re_ = _find(parent, b), _find(parent, e)
        if rb != re_:
            parent[max(rb, re_)] = min(rb, re_)
    reps = sorted({_find(parent, a) for a in d.labels})
    col = {r: i for i, r in enumerate(reps)}
    rows = []
    for x in range(d.n_crossings):
        row = [0] * len(reps)
        a, _, c, _ = d.crossings[x]
        row[col[_find(parent, d.over_labels(x)[0])]] += 2
        row[col[_find(parent, a)]] -= 1
        row[col[_find(parent, c)]] -= 1
        rows.append(row)
    return IntMatrix.from_rows(rows, len(reps)), reps


@lru_cache(maxsize=4096)
def colorings(d: Diagram, m: int) -> int:
    if m < 2:
        raise InvariantError("colorings need m >= 2")
    mat, _ = coloring_matrix(d)
    if mat.rows == 0:
        return m**mat.cols
    return count_solutions_mod(mat, m)


def colorings_brute_force(d: Diagram, m: int) -> int:
    """Count colorings of the arcs between crossings by backtracking."""
    if m < 2:
        raise InvariantError("colorings need m >= 2")
    labels = list(d.labels)
    constraints: dict[int, list] = {a: [] for a in labels}
    for x in range(d.n_crossings):
        a, b, c, e = d.crossings[x]
        for rule in (("eq", b, e), ("fox", b, a, c)):
            for lab in rule[1:]:
                constraints[lab].append(rule)
    color: dict[int, int] = {}

    def ok(rule) -> bool:
        if any(lab not in color for lab in rule[1:]):
            return True
        if rule[0] == "eq":
            return color[rule[1]] == color[rule[2]]
        return (2 * color[rule[1]] - color[rule[2]] - color[rule[3]]) % m == 0

    def go(i: int) -> int:
        if i == len(labels):
            return 1
        lab = labels[i]
        total = 0
        for v in range(m):
            color[lab] = v
            if all(ok(r) for r in constraints[lab]):
                total += go(i + 1)
        del color[lab]
        return total

    return go(0)


@lru_cache(maxsize=4096)
def determinant(d: Diagram) -> int:
    _need_knot(d, "determinant")
    if d.n_crossings == 0:
        return 1
    mat, _ = coloring_matrix(d)
    return abs(mat.minor(0, 0).determinant())


def _poly_det(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free (Bareiss) determinant over Z[t]."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.constant("t", 1)
    a = [list(r) for r in rows]
    sign = 1
    prev = LaurentPoly.constant("t", 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly("t")
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_divide(prev)
        prev = a[k][k]
    return a[n - 1][n - 1] * sign


def alexander(d: Diagram) -> LaurentPoly:
    """Symmetrized Alexander polynomial of a knot, Delta(1) = 1."""
    _need_knot(d, "alexander")
    if d.n_crossings == 0:
        return LaurentPoly.constant("t", 1)
    parent = {a: a for a in d.labels}
    for x in range(d.n_crossings):
        b, e = d.over_labels(x)
        rb, re_ = _find(parent, b), _find(parent, e)
        if rb != re_:
            parent[max(rb, re_)] = min(rb, re_)
    col = {r: i for i, r in enumerate(sorted({_find(parent, a) for a in d.labels}))}
    one = LaurentPoly.constant("t", 1)
    t = LaurentPoly.monomial("t", 1)
    rows = []
    for x in range(d.n_crossings):
        row = [LaurentPoly("t") for _ in col]
        a, _, c, _ = d.crossings[x]
        k = col[_find(parent, d.over_labels(x)[0])]
        i, j = col[_find(parent, a)], col[_find(parent, c)]
        # Fox derivatives of x_j = x_k^s x_i x_k^-s, abelianized (times t when s < 0)
        if d.signs[x] > 0:
            row[k], row[i], row[j] = row[k] + (one - t), row[i] + t, row[j] - one
        else:
            row[k], row[i], row[j] = row[k] + (t - one), row[i] + one, row[j] - t
        rows.append(row)
    minor = [r[1:] for r in rows[1:]]
    p = _poly_det(minor)
    if p.is_zero():
        raise InvariantError("degenerate Alexander matrix")
    shift = -(p.min_degree + p.max_degree) // 2
    p = p * LaurentPoly.monomial("t", shift)
    if p.evaluate(1) < 0:
        p = -p
    return p


def conway_from_alexander(p: LaurentPoly) -> LaurentPoly:
    """Rewrite a symmetric Delta(t) as a polynomial in z = t^(1/2) - t^(-1/2)."""
    z2 = LaurentPoly("t", {1: 1, 0: -2, -1: 1})
    out: dict[int, int] = {}
    rest = p
    while not rest.is_zero():
        k = rest.max_degree
        if k < 0:
            raise InvariantError("Alexander polynomial is not symmetric")
        c = rest.coeff(k)
        out[2 * k] = c
        rest = rest - z2**k * c
    return LaurentPoly("z", out)


def arf(d: Diagram) -> int:
    _need_knot(d, "arf")
    return conway(d).coeff(2) % 2


def component_count(d: Diagram) -> int:
    return d.n_components


# -- registry -----------------------------------------------------------------

@dataclass(frozen=True)
class Invariant:
    name: str
    value_kind: str  # "integer" | "LaurentPoly" | "rational"
    evaluate: Callable[[Diagram], Any]
    oracle: Callable[[Diagram], Any]
    knot_only: bool = False

    def __call__(self, d: Diagram):
        return self.evaluate(d)

    def applies_to(self, d: Diagram) -> bool:
        return d.n_components == 1 or not self.knot_only


def _conway_oracle(d: Diagram) -> LaurentPoly:
    if d.n_components == 1:
        return conway_from_alexander(alexander(d))
    return conway_alt(d)


def _jones_oracle(d: Diagram) -> LaurentPoly:
    return _jones_from_bracket(bracket_state_sum(d), d.writhe)


def _parse_index(name: str, head: str, lo: int) -> int:
    try:
        n = int(name.split(":", 1)[1])
    except (IndexError, ValueError):
        raise UnknownInvariant(name) from None
    if n < lo:
        raise UnknownInvariant(f"{name}: {head} index must be at least {lo}")
    return n


def get_invariant(name: str) -> Invariant:
    name = name.strip()
    if name == "jones":
        return Invariant(name, "LaurentPoly", jones, _jones_oracle)
    if name == "conway":
        return Invariant(name, "LaurentPoly", conway, _conway_oracle)
    if name == "det":
        return Invariant(
            name, "integer", determinant,
            lambda d: abs(alexander(d).evaluate(-1)) if d.n_crossings else 1, knot_only=True,
        )
    if name == "arf":
        return Invariant(name, "integer", arf, lambda d: _conway_oracle(d).coeff(2) % 2, knot_only=True)
    if name == "components":
        return Invariant(name, "integer", component_count, lambda d: len(d.components))
    if name.startswith("colorings:"):
        m = _parse_index(name, "colorings", 2)
        return Invariant(name, "integer", lambda d: colorings(d, m), lambda d: colorings_brute_force(d, m))
    if name.startswith("a:"):
        n = _parse_index(name, "a", 0)
        return Invariant(
            name, "rational",
            lambda d: vassiliev_coefficient(d, n),
            lambda d: vassiliev_coefficient(d, n, _jones_oracle(d)),
            knot_only=True,
        )
    if name.startswith("c:"):
        n = _parse_index(name, "c", 0)
        return Invariant(name, "integer", lambda d: conway(d).coeff(n), lambda d: _conway_oracle(d).coeff(n))
    raise UnknownInvariant(name)


REGISTERED = ("jones", "conway", "det", "colorings:2", "colorings:3", "colorings:5", "arf", "a:2", "a:3", "c:2", "components")


def format_value(v) -> str:
    if isinstance(v, LaurentPoly):
        return v.to_text()
    return str(v)


def value_to_json(v):
    if isinstance(v, LaurentPoly):
        return v.to_json()
    if isinstance(v, Fraction):
        return str(v)
    return v
