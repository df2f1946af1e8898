import json

import pytest
from hypothesis import given, strategies as st

from knotforge import census
from knotforge.diagram import Diagram, braid_closure, canonical, mirror
from knotforge.invariants import conway, determinant, jones
from knotforge.notation import (
    DIAGRAM_JSON_SCHEMA,
    ParseError,
    RealizabilityError,
    diagram_from_braid,
    diagram_from_json,
    diagram_to_json,
    emit_braid,
    emit_gauss,
    emit_pd,
    parse_any,
    parse_braid,
    parse_gauss,
    parse_pd,
)

words = st.integers(2, 4).flatmap(
    lambda s: st.tuples(
        st.lists(st.integers(1, s - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=9),
        st.just(s),
    )
)


class TestPD:
    def test_standard_trefoil_is_left_handed(self):
        d = parse_pd("X[1,4,2,5];X[3,6,4,1];X[5,2,6,3] / (1..6)")
        assert canonical(d) == canonical(braid_closure([-1, -1, -1], 2))
        assert d.writhe == -3

    def test_unknot(self):
        assert parse_pd("/ (1)") == Diagram.unknot()
        assert emit_pd(Diagram.unknot()) == "/ (1)"

    def test_kink_is_valid(self):
        d = parse_pd("X[1,1,2,2] / (1..2)")
        assert d.n_crossings == 1 and jones(d) == jones(Diagram.unknot())

    def test_multiplicity_error_has_position(self):
        with pytest.raises(ParseError) as err:
            parse_pd("X[1,1,1,2] / (1..2)")
        assert "arc 1" in str(err.value)
        assert (err.value.line, err.value.column) == (1, 1)

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse_pd("X[1,2,2,1];\n  X[3,4 / (1..4)")
        assert (err.value.line, err.value.column) == (2, 3)

    def test_missing_slash(self):
        with pytest.raises(ParseError):
            parse_pd("X[1,2,2,1]")

    def test_markers_round_trip_on_hopf(self):
        h = census.build("L2a1")
        for d in (h, mirror(h)):
            assert parse_pd(emit_pd(d)) == d

    @given(words)
    def test_round_trip(self, ws):
        d = braid_closure(*ws)
        assert parse_pd(emit_pd(d)) == d


class TestGauss:
    def test_trefoil(self):
        d = parse_gauss("O1+U2+O3+U1+O2+U3+")
        assert canonical(d) == canonical(braid_closure([1, 1, 1], 2))
        assert determinant(d) == 3

    def test_empty_is_unknot(self):
        assert parse_gauss("") == Diagram.unknot()
        assert parse_gauss("o|o") == Diagram.unlink(2)

    def test_not_realizable(self):
        with pytest.raises(RealizabilityError):
            parse_gauss("O1+O2+U1+U2+")

    def test_inconsistent_sign(self):
        with pytest.raises(ParseError):
            parse_gauss("O1+U1-")

    def test_garbage(self):
        with pytest.raises(ParseError):
            parse_gauss("O1+X2")

    @given(words)
    def test_round_trip(self, ws):
        d = braid_closure(*ws)
        assert canonical(parse_gauss(emit_gauss(d))) == canonical(d)

    def test_census(self):
        for _, d in census.corpus():
            e = parse_gauss(emit_gauss(d))
            assert conway(e) == conway(d) and jones(e) == jones(d)


class TestBraid:
    def test_parse_and_emit(self):
        assert parse_braid("braid: s=3 w=[1,-2,1,-2]") == ([1, -2, 1, -2], 3)
        assert parse_braid("s=2 w=[]") == ([], 2)
        assert emit_braid([1, 1, 1], 2) == "braid: s=2 w=[1,1,1]"
        assert diagram_from_braid("s=2 w=[1,1,1]") == braid_closure([1, 1, 1], 2)

    def test_bad(self):
        for text in ("s=2 w=[3]", "s=2 w=[0]", "w=[1]", "s=2 w=[1,a]"):
            with pytest.raises(ParseError):
                diagram_from_braid(text)


class TestJSON:
    def test_round_trip(self):
        for _, d in census.corpus():
            text = json.dumps(diagram_to_json(d))
            assert diagram_from_json(text) == d
            assert diagram_from_json(json.loads(text)) == d

    def test_schema_keys(self, trefoil):
        obj = diagram_to_json(trefoil)
        assert set(DIAGRAM_JSON_SCHEMA["required"]) <= set(obj) <= set(DIAGRAM_JSON_SCHEMA["properties"])

    def test_bad_json(self):
        with pytest.raises(ParseError):
            diagram_from_json("{not json")
        with pytest.raises(ParseError):
            diagram_from_json({"crossings": [[1, 2, 3]], "components": [[1, 2, 3]]})
        with pytest.raises(ParseError):
            diagram_from_json({"crossings": [[1, 1, 1, 2]], "signs": [1], "components": [[1, 2]]})


def test_parse_any_dispatch(trefoil):
    assert canonical(parse_any(emit_pd(trefoil))) == canonical(trefoil)
    assert canonical(parse_any(emit_gauss(trefoil))) == canonical(trefoil)
    assert parse_any("braid: s=2 w=[1,1,1]") == trefoil
    assert parse_any(json.dumps(diagram_to_json(trefoil))) == trefoil
