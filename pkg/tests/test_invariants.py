from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from knotforge import census
from knotforge.algebra import LaurentPoly
from knotforge.diagram import Diagram, apply_reidemeister, braid_closure, connected_sum, mirror
from knotforge.invariants import (
    REGISTERED,
    InvariantError,
    UnknownInvariant,
    alexander,
    arf,
    bracket_state_sum,
    colorings,
    colorings_brute_force,
    component_count,
    conway,
    conway_alt,
    conway_from_alexander,
    determinant,
    format_value,
    get_invariant,
    jones,
    jones_t,
    kauffman_bracket,
    vassiliev_coefficient,
)

P = LaurentPoly
words = st.integers(2, 4).flatmap(
    lambda s: st.tuples(
        st.lists(st.integers(1, s - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=8),
        st.just(s),
    )
)


class TestBracket:
    def test_kink(self):
        for sign, exp in ((1, 3), (-1, -3)):
            k = apply_reidemeister(Diagram.unknot(), "R1+", (1, sign, True))
            assert kauffman_bracket(k) == LaurentPoly.monomial("A", exp, -1)

    def test_trefoil(self, trefoil):
        want = P("A", {-7: 1, -3: -1, 5: -1})
        assert kauffman_bracket(trefoil) == want
        assert bracket_state_sum(trefoil) == want

    def test_unlink(self):
        assert kauffman_bracket(Diagram.unlink(2)) == P("A", {-2: -1, 2: -1})

    @settings(max_examples=40)
    @given(words)
    def test_matches_state_sum(self, ws):
        d = braid_closure(*ws)
        assert kauffman_bracket(d) == bracket_state_sum(d)


class TestJones:
    def test_trefoil(self, trefoil):
        assert jones_t(trefoil) == P("t", {1: 1, 3: 1, 4: -1})

    def test_figure8(self, figure8):
        assert jones_t(figure8) == P("t", {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})

    def test_unknot(self):
        assert jones(Diagram.unknot()) == LaurentPoly.constant("u", 1)

    def test_mirror(self, knots):
        for _, d in knots:
            assert jones(mirror(d)) == jones(d).substitute_power(-1)

    def test_connected_sum(self, trefoil, figure8):
        assert jones(connected_sum(trefoil, figure8)) == jones(trefoil) * jones(figure8)

    def test_knot_only_t_form(self):
        with pytest.raises(InvariantError):
            jones_t(census.build("L2a1"))


class TestVassiliev:
    def test_low_orders(self, knots):
        for _, d in knots:
            assert vassiliev_coefficient(d, 0) == 1
            assert vassiliev_coefficient(d, 1) == 0

    def test_values(self, trefoil, figure8):
        assert vassiliev_coefficient(trefoil, 2) == -3
        assert vassiliev_coefficient(figure8, 2) == 3
        assert vassiliev_coefficient(trefoil, 3) == -6
        assert isinstance(vassiliev_coefficient(trefoil, 3), Fraction)

    def test_a2_tracks_c2(self, knots):
        for _, d in knots:
            assert vassiliev_coefficient(d, 2) == -3 * conway(d).coeff(2)


class TestConway:
    def test_examples(self, trefoil, figure8):
        assert conway(Diagram.unknot()) == LaurentPoly.constant("z", 1)
        assert conway(trefoil) == P("z", {0: 1, 2: 1})
        assert conway(figure8) == P("z", {0: 1, 2: -1})
        assert conway(Diagram.unlink(2)).is_zero()
        assert conway(census.build("L2a1")) == P("z", {1: 1})

    def test_alexander(self, trefoil):
        assert alexander(trefoil) == P("t", {-1: 1, 0: -1, 1: 1})

    def test_oracles_agree(self):
        for _, d in census.corpus():
            if d.n_components == 1:
                assert conway_from_alexander(alexander(d)) == conway(d)
            assert conway_alt(d) == conway(d)

    @settings(max_examples=40)
    @given(words)
    def test_oracles_agree_random(self, ws):
        d = braid_closure(*ws)
        assert conway_alt(d) == conway(d)
        if d.n_components == 1:
            assert conway_from_alexander(alexander(d)) == conway(d)

    def test_skein(self, trefoil):
        from knotforge.diagram import crossing_change, oriented_smoothing

        for c in range(3):
            lhs = conway(trefoil) - conway(crossing_change(trefoil, c))
            assert lhs == LaurentPoly.monomial("z", 1) * conway(oriented_smoothing(trefoil, c))


class TestColorings:
    def test_determinants(self, trefoil, figure8):
        assert determinant(trefoil) == 3
        assert determinant(figure8) == 5
        assert determinant(Diagram.unknot()) == 1

    def test_determinant_odd(self, knots):
        for _, d in knots:
            assert determinant(d) % 2 == 1
            assert determinant(d) == abs(alexander(d).evaluate(-1))

    def test_counts(self, trefoil):
        assert colorings(trefoil, 3) == 9
        assert colorings(trefoil, 2) == 2
        assert colorings(Diagram.unknot(), 7) == 7
        assert colorings(Diagram.unlink(2), 3) == 9

    def test_prime_divides_determinant(self, knots):
        for _, d in knots:
            det = determinant(d)
            for p in (3, 5, 7, 11, 13):
                assert (det % p == 0) == (colorings(d, p) > p)

    def test_brute_force(self):
        for _, d in census.corpus():
            for m in (2, 3, 4, 5):
                assert colorings(d, m) == colorings_brute_force(d, m)

    def test_modulus_guard(self, trefoil):
        with pytest.raises(InvariantError):
            colorings(trefoil, 1)


class TestSmallInvariants:
    def test_arf(self, trefoil, figure8):
        assert arf(trefoil) == 1
        assert arf(figure8) == 1
        assert arf(Diagram.unknot()) == 0
        assert arf(census.build("5_2")) == 0

    def test_components(self):
        assert component_count(Diagram.unlink(2)) == 2
        assert component_count(census.build("3_1")) == 1


class TestRegistry:
    def test_registered_names(self, trefoil):
        for name in REGISTERED:
            f = get_invariant(name)
            assert f.name == name
            assert f(trefoil) == f.oracle(trefoil)

    def test_indexed(self, trefoil):
        assert get_invariant("colorings:7")(trefoil) == 7
        assert get_invariant("c:2")(trefoil) == 1
        assert get_invariant("a:2")(trefoil) == -3

    def test_unknown(self):
        for name in ("nope", "colorings:1", "colorings:x", "a:-1"):
            with pytest.raises(UnknownInvariant):
                get_invariant(name)

    def test_knot_only(self):
        det = get_invariant("det")
        assert not det.applies_to(Diagram.unlink(2))
        assert get_invariant("jones").applies_to(Diagram.unlink(2))

    def test_format(self, trefoil):
        assert format_value(3) == "3"
        assert format_value(conway(trefoil)) == conway(trefoil).to_text()
