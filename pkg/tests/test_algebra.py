import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from knotforge.algebra import (
    IntMatrix,
    LaurentPoly,
    TruncatedSeries,
    VariableMismatch,
    count_solutions_mod,
    count_solutions_mod_snf,
    laurent_mul,
    smith_normal_form,
    substitute_exp,
)

T = LaurentPoly.monomial("t", 1)
ONE = LaurentPoly.constant("t", 1)


def poly(var="t"):
    return st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(lambda d: LaurentPoly(var, d))


def matrices(max_dim=4, lo=-5, hi=5):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    ).map(IntMatrix.from_rows)


class TestLaurent:
    def test_difference_of_squares(self):
        tinv = LaurentPoly.monomial("t", -1)
        assert laurent_mul(T + tinv, T - tinv) == LaurentPoly("t", {2: 1, -2: -1})

    def test_identity_and_binomial(self):
        p = LaurentPoly("t", {-3: 2, 1: -1})
        assert p * ONE == p
        assert (ONE + T) ** 3 == LaurentPoly("t", {0: 1, 1: 3, 2: 3, 3: 1})

    def test_no_stored_zeros(self):
        p = LaurentPoly("t", {0: 0, 1: 2, 3: 0})
        assert p.terms == ((1, 2),)
        assert (T - T).is_zero()

    def test_variable_mismatch(self):
        with pytest.raises(VariableMismatch):
            laurent_mul(T, LaurentPoly.monomial("z", 1))

    def test_text_form(self):
        p = LaurentPoly("t", {-4: -1, -3: 1, -1: 1})
        assert p.to_text() == "-1*t^-4 + 1*t^-3 + 1*t^-1"
        assert LaurentPoly.from_text(p.to_text()) == p
        assert LaurentPoly("t").to_text() == "0"

    def test_json_form(self):
        p = LaurentPoly("t", {-4: -1, 2: 7})
        assert p.to_json() == {"var": "t", "terms": [[-4, -1], [2, 7]]}
        assert LaurentPoly.from_json(p.to_json()) == p

    @given(poly(), poly())
    def test_degree_bounds_add_under_product(self, p, q):
        r = p * q
        if p.is_zero() or q.is_zero():
            assert r.is_zero()
        else:
            assert r.min_degree == p.min_degree + q.min_degree
            assert r.max_degree == p.max_degree + q.max_degree

    @given(poly(), poly())
    def test_exact_divide_inverts_product(self, p, q):
        if not q.is_zero():
            assert (p * q).exact_divide(q) == p

    @given(poly())
    def test_text_round_trip(self, p):
        assert LaurentPoly.from_text(p.to_text(), "t") == p


class TestSeries:
    def test_exp_of_t(self):
        s = substitute_exp(T, 1, 2)
        assert list(s.coeffs) == [1, 1, Fraction(1, 2)]

    def test_constant(self):
        s = substitute_exp(ONE, Fraction(1, 4), 5)
        assert s[0] == 1 and all(s[i] == 0 for i in range(1, 6))

    def test_cosh_like(self):
        s = substitute_exp(T + LaurentPoly.monomial("t", -1), 1, 2)
        assert list(s.coeffs) == [2, 0, 1]

    def test_truncation(self):
        a = TruncatedSeries(2, [1, 1, 1])
        assert (a * a).order == 2
        assert len((a * a).coeffs) == 3

    @given(poly("u"), poly("u"), st.sampled_from([Fraction(1), Fraction(1, 4)]), st.integers(0, 4))
    def test_ring_homomorphism(self, p, q, scale, order):
        lhs = substitute_exp(p * q, scale, order)
        rhs = substitute_exp(p, scale, order) * substitute_exp(q, scale, order)
        assert lhs == rhs


class TestSmith:
    def test_identity(self):
        d, _, _ = smith_normal_form(IntMatrix.identity(3))
        assert d == IntMatrix.identity(3)

    def test_already_diagonal(self):
        d, _, _ = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 4]]))
        assert d.diagonal() == [2, 4]

    def test_worked_example(self):
        d, _, _ = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 10]]))
        assert d.diagonal() == [2, 2]

    @given(matrices())
    def test_factorization_and_chain(self, m):
        d, u, v = smith_normal_form(m)
        assert u @ m @ v == d
        if u.rows <= 4:
            assert abs(u.determinant()) == 1
        if v.rows <= 4:
            assert abs(v.determinant()) == 1
        diag = d.diagonal()
        for i in range(d.rows):
            for j in range(d.cols):
                if i != j:
                    assert d[i, j] == 0
        nz = [x for x in diag if x]
        assert all(x > 0 for x in nz)
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        assert diag[: len(nz)] == nz


def brute_count(m: IntMatrix, modulus: int) -> int:
    rows = m.tolist()
    return sum(
        1
        for x in itertools.product(range(modulus), repeat=m.cols)
        if all(sum(a * b for a, b in zip(row, x)) % modulus == 0 for row in rows)
    )


class TestCountSolutions:
    def test_examples(self):
        assert count_solutions_mod(IntMatrix.zeros(1, 1), 5) == 5
        assert count_solutions_mod(IntMatrix.identity(2), 7) == 1
        assert count_solutions_mod(IntMatrix.from_rows([[3]]), 6) == 3

    def test_rejects_small_modulus(self):
        with pytest.raises(ValueError):
            count_solutions_mod(IntMatrix.identity(1), 1)

    @given(matrices(max_dim=3), st.integers(2, 9))
    def test_agrees_with_enumeration(self, m, modulus):
        expected = brute_count(m, modulus)
        assert count_solutions_mod(m, modulus) == expected
        assert count_solutions_mod_snf(m, modulus) == expected

    def test_agrees_with_enumeration_4x4(self):
        import random

        rng = random.Random(11)
        for _ in range(40):
            m = IntMatrix.from_rows([[rng.randint(-5, 5) for _ in range(4)] for _ in range(4)])
            modulus = rng.randint(2, 6)
            assert count_solutions_mod(m, modulus) == brute_count(m, modulus)
