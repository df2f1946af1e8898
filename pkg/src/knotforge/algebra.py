"""Exact arithmetic: Laurent polynomials, truncated series, integer matrices.

Everything here is immutable and uses Python integers / ``Fraction``, so
coefficients never overflow.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class VariableMismatch(ValueError):
    """Arithmetic between polynomials in different variables."""


class LaurentPoly:
    """One-variable Laurent polynomial with integer coefficients.

    >>> t = LaurentPoly.monomial("t", 1)
    >>> (t + t**-1) * (t - t**-1)
    LaurentPoly('-1*t^-2 + 1*t^2')
    """

    __slots__ = ("var", "_terms", "_hash")

    def __init__(self, var: str, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e, c in items:
            if int(c) != c:
                raise TypeError(f"non-integer coefficient {c!r}")
            acc[int(e)] = acc.get(int(e), 0) + int(c)
        self.var = var
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self._hash = None

    @classmethod
    def constant(cls, var: str, c: int) -> "LaurentPoly":
        return cls(var, {0: c})

    @classmethod
    def monomial(cls, var: str, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls(var, {exp: coeff})

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """(exponent, coefficient) pairs sorted by exponent, zeros dropped."""
        return self._terms

    def coeff(self, exp: int) -> int:
        for e, c in self._terms:
            if e == exp:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[0][0]

    @property
    def max_degree(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no degree")
        return self._terms[-1][0]

    def span(self) -> int:
        return self.max_degree - self.min_degree if self._terms else 0

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var:
                raise VariableMismatch(f"cannot combine {self.var!r} with {other.var!r}")
            return other
        if isinstance(other, int):
            return LaurentPoly(self.var, {0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(self.var, list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.var, [(e, -c) for e, c in self._terms])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(self.var, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only unit monomials can be inverted")
            e, c = self._terms[0]
            return LaurentPoly(self.var, {e * k: c ** (-k)})
        result = LaurentPoly(self.var, {0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == (((0, other),) if other else ())
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.var == other.var and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, self._terms))
        return self._hash

    def substitute_power(self, k: int, var: str | None = None) -> "LaurentPoly":
        """Replace the variable ``v`` by ``w**k`` (``k`` may be negative)."""
        return LaurentPoly(var or self.var, [(e * k, c) for e, c in self._terms])

    def divide_exponents(self, k: int, var: str) -> "LaurentPoly":
        """Inverse of :meth:`substitute_power`; every exponent must be divisible by ``k``."""
        if any(e % k for e, _ in self._terms):
            raise ValueError(f"exponents of {self} are not all divisible by {k}")
        return LaurentPoly(var, [(e // k, c) for e, c in self._terms])

    def evaluate(self, value):
        """Evaluate at an integer or Fraction (exact)."""
        total = Fraction(0)
        for e, c in self._terms:
            total += c * Fraction(value) ** e
        return total

    def exact_divide(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ``ValueError`` when there is a remainder."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self._terms)
        quotient: dict[int, int] = {}
        lead_e, lead_c = other._terms[-1]
        floor = (self.min_degree - other.min_degree) if self._terms else 0
        while rem:
            top = max(rem)
            shift = top - lead_e
            c = rem[top]
            if shift < floor or c % lead_c:
                raise ValueError(f"{self} is not divisible by {other}")
            q = c // lead_c
            quotient[shift] = q
            for e, oc in other._terms:
                rem[e + shift] = rem.get(e + shift, 0) - q * oc
                if rem[e + shift] == 0:
                    del rem[e + shift]
        return LaurentPoly(self.var, quotient)

    # text / json forms

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self._terms):
            body = f"{abs(c)}*{self.var}^{e}"
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    __str__ = to_text

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    _TERM = re.compile(r"\s*([+-])?\s*(\d+)\*([A-Za-z]\w*)\^(-?\d+)\s*")

    @classmethod
    def from_text(cls, text: str, var: str | None = None) -> "LaurentPoly":
        """Parse the ``"-1*t^-4 + 1*t^-3"`` form produced by :meth:`to_text`."""
        s = text.strip()
        if s == "0":
            if var is None:
                raise ValueError("zero polynomial needs an explicit variable")
            return cls(var)
        pos = 0
        terms = []
        seen_var = var
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or (pos > 0 and m.group(1) is None):
                raise ValueError(f"bad polynomial term at column {pos + 1}: {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            v = m.group(3)
            if seen_var is not None and v != seen_var:
                raise VariableMismatch(f"mixed variables {seen_var!r} and {v!r}")
            seen_var = v
            terms.append((int(m.group(4)), sign * int(m.group(2))))
            pos = m.end()
        return cls(seen_var, terms)

    def to_json(self) -> dict:
        return {"var": self.var, "terms": [[e, c] for e, c in self._terms]}

    @classmethod
    def from_json(cls, obj: dict | str) -> "LaurentPoly":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["var"], [(e, c) for e, c in obj["terms"]])


def laurent_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if a.var != b.var:
        raise VariableMismatch(f"cannot multiply {a.var!r} by {b.var!r}")
    return a * b


class TruncatedSeries:
    """Power series in ``x`` with exact rational coefficients, cut at ``order``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence = ()):
        if order < 0:
            raise ValueError("order must be non-negative")
        cs = [Fraction(c) for c in list(coeffs)[: order + 1]]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n > self.order:
            raise IndexError(f"x^{n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.order != self.order:
            raise ValueError("series truncated at different orders")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(n, out)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        body = " + ".join(f"({c})*x^{i}" for i, c in enumerate(self.coeffs) if c) or "0"
        return f"TruncatedSeries[{self.order}]({body})"


def substitute_exp(p: LaurentPoly, scale, order: int) -> TruncatedSeries:
    """Expand ``sum c_k exp(k*scale*x)`` up to ``x**order``.

    With ``scale=1`` this is the substitution ``t = e^x``; a variable that is a
    fractional power of ``t`` (``u = t**(1/4)``) uses ``scale=1/4``.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    scale = Fraction(scale)
    out = [Fraction(0)] * (order + 1)
    for k, c in p.terms:
        rate = k * scale
        term = Fraction(c)
        for n in range(order + 1):
            out[n] += term
            term = term * rate / (n + 1)
    return TruncatedSeries(order, out)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = [
            [sum(self.entries[i][k] * other.entries[k][j] for k in range(self.cols)) for j in range(other.cols)]
            for i in range(self.rows)
        ]
        return IntMatrix.from_rows(out, other.cols)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k]), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def minor(self, drop_row: int, drop_col: int) -> "IntMatrix":
        rows = [
            [x for j, x in enumerate(r) if j != drop_col] for i, r in enumerate(self.entries) if i != drop_row
        ]
        return IntMatrix.from_rows(rows, self.cols - 1)


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``U @ m @ V == D`` and ``d_i | d_(i+1)``."""
    r, c = m.rows, m.cols
    a = m.tolist()
    u = [[int(i == j) for j in range(r)] for i in range(r)]
    v = [[int(i == j) for j in range(c)] for i in range(c)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    for t in range(min(r, c)):
        row_nnz = [sum(1 for j in range(t, c) if a[i][j]) for i in range(r)]
        col_nnz = [sum(1 for i in range(t, r) if a[i][j]) for j in range(c)]
        # smallest entry first, then least fill-in (Markowitz count)
        nonzero = [
            (abs(a[i][j]), (row_nnz[i] - 1) * (col_nnz[j] - 1), i, j)
            for i in range(t, r)
            for j in range(t, c)
            if a[i][j]
        ]
        if not nonzero:
            break
        _, _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    add_row(i, t, -q)
                    if a[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    add_col(j, t, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: pivot must divide the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            negate_row(t)
    return IntMatrix.from_rows(a, c), IntMatrix.from_rows(u, r), IntMatrix.from_rows(v, c)


def _prime_powers(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _valuation(x: int, p: int, cap: int) -> int:
    v = 0
    while v < cap and x % p == 0:
        x //= p
        v += 1
    return v


def _count_mod_prime_power(rows: list[list[int]], cols: int, p: int, e: int) -> int:
    """Solutions of ``A x = 0`` over ``Z/p^e`` by diagonalizing over that local ring."""
    mod = p**e
    a = [[x % mod for x in row] for row in rows]
    r = len(a)
    count = 1
    rank = 0
    for t in range(min(r, cols)):
        best = None
        for i in range(t, r):
            for j in range(t, cols):
                if a[i][j]:
                    v = _valuation(a[i][j], p, e)
                    if best is None or v < best[0]:
                        best = (v, i, j)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, pi, pj = best
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        pv = p**v
        inv = pow(a[t][t] // pv, -1, mod)
        a[t] = [(x * inv) % mod for x in a[t]]  # pivot is now exactly p^v
        for i in range(r):
            if i != t and a[i][t]:
                k = a[i][t] // pv
                a[i] = [(x - k * y) % mod for x, y in zip(a[i], a[t])]
        for j in range(t + 1, cols):
            if a[t][j]:
                k = a[t][j] // pv
                for row in a:
                    row[j] = (row[j] - k * row[t]) % mod
        count *= pv
        rank += 1
    return count * mod ** (cols - rank)


def count_solutions_mod(m: IntMatrix, modulus: int) -> int:
    """Number of ``x`` in ``Z_modulus^cols`` with ``m @ x == 0 (mod modulus)``.

    Computed one prime power at a time (Chinese remainder theorem), each by
    elimination over ``Z/p^e``, so entries never exceed the modulus.
    """
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    rows = m.tolist()
    count = 1
    for p, e in _prime_powers(modulus):
        count *= _count_mod_prime_power(rows, m.cols, p, e)
    return count


def count_solutions_mod_snf(m: IntMatrix, modulus: int) -> int:
    """The same count read off the integer Smith normal form."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    d, _, _ = smith_normal_form(m)
    diag = [x for x in d.diagonal() if x]
    count = 1
    for x in diag:
        count *= math.gcd(x, modulus)
    return count * modulus ** (m.cols - len(diag))
