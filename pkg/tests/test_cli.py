import json

import pytest

from knotforge.cli import main, parse_region
from knotforge.notation import ParseError, parse_pd
from knotforge.invariants import determinant


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_round_trip(capsys):
    code, out, _ = run(capsys, "parse", "--gauss", "O1+U2+O3+U1+O2+U3+")
    assert code == 0
    assert determinant(parse_pd(out.strip())) == 3


def test_parse_json(capsys):
    code, out, _ = run(capsys, "parse", "3_1", "--to", "json")
    obj = json.loads(out)
    assert code == 0 and obj["crossings"] == 3 and obj["writhe"] == 3


def test_parse_error(capsys):
    code, _, err = run(capsys, "parse", "--pd", "X[1,1,1,2] / (1..2)")
    assert code == 1 and "line 1, column 1" in err


def test_usage_error_exits_one():
    with pytest.raises(SystemExit) as exc:
        main(["probe"])
    assert exc.value.code == 1


def test_invariant_values(capsys):
    assert run(capsys, "invariant", "3_1", "--name", "det")[1] == "3\n"
    assert run(capsys, "invariant", "--braid", "s=1 w=[]", "--name", "colorings:7")[1] == "7\n"
    code, out, _ = run(capsys, "invariant", "3_1", "--name", "jones")
    assert code == 0 and out == "1*t^1 + 1*t^3 - 1*t^4\n"


def test_invariant_json_and_stats(capsys):
    code, out, _ = run(capsys, "invariant", "4_1", "--name", "jones", "--format", "json", "--stats")
    obj = json.loads(out)
    assert code == 0
    assert obj["invariant"] == "jones" and obj["stats"]["span"] == 4


def test_unknown_invariant(capsys):
    code, _, err = run(capsys, "invariant", "3_1", "--name", "nope")
    assert code == 2 and "nope" in err


def test_knot_only_on_link(capsys):
    code, _, _ = run(capsys, "invariant", "L2a1", "--name", "det")
    assert code == 1


def test_twist_unlink_to_hopf(capsys):
    code, out, _ = run(capsys, "twist", "--braid", "s=2 w=[]", "--region", "1:+1,2:+1", "--n", "1")
    assert code == 0
    pd, q, delta = out.strip().splitlines()
    assert q == "q=2" and delta == "crossings +2"
    assert parse_pd(pd).n_crossings == 2


def test_twist_rejected(capsys):
    code, _, err = run(capsys, "twist", "4_1", "--region", "1:+1,3:+1")
    assert code == 5 and "rejected" in err
    code, _, _ = run(capsys, "twist", "4_1", "--region", "1:+1,1:+1")
    assert code == 5


def test_parse_region():
    assert parse_region("3:+1, 7:-1").strands == ((3, 1), (7, -1))
    with pytest.raises(ParseError):
        parse_region("3:x")


def test_csum(capsys):
    code, out, _ = run(capsys, "csum", "3_1", "3_1")
    assert code == 0 and determinant(parse_pd(out.strip())) == 9
    code, _, _ = run(capsys, "csum", "3_1", "L2a1")
    assert code == 1


def test_census(capsys):
    code, out, err = run(capsys, "census", "--verify")
    assert code == 0 and "verify: ok" in err
    assert out.splitlines()[1].startswith("3_1")


def test_census_json(capsys, tmp_path):
    path = tmp_path / "census.csv"
    code, out, _ = run(capsys, "census", "--format", "json", "--csv", str(path))
    assert code == 0
    names = [e["name"] for e in json.loads(out)["entries"]]
    assert "7_1" in names and path.read_text().startswith("name,")


def test_probe_vanished(capsys):
    code, out, _ = run(capsys, "probe", "ft", "--invariant", "components", "--order", "0")
    obj = json.loads(out)
    assert code == 0 and obj["status"] == "vanished"


def test_probe_certificate_with_files(capsys, tmp_path):
    fig = tmp_path / "probe.png"
    rep = tmp_path / "probe.json"
    table = tmp_path / "probe.csv"
    code, out, _ = run(
        capsys, "probe", "ft", "--invariant", "colorings:3", "--order", "1",
        "-o", str(rep), "--csv", str(table), "--figure", str(fig),
    )
    assert code == 3
    assert json.loads(rep.read_text()) == json.loads(out)
    assert fig.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert table.read_text().splitlines()[0] == "diagram,collections_tested"


def test_probe_budget(capsys):
    code, out, _ = run(capsys, "probe", "ft", "--invariant", "a:2", "--order", "2", "--budget", "10")
    assert code == 4 and json.loads(out)["status"] == "budget_exhausted"


def test_probe_unknown(capsys):
    code, _, _ = run(capsys, "probe", "nq", "--invariant", "bogus", "--order", "0")
    assert code == 2


def test_probe_corpus_file(capsys, tmp_path):
    path = tmp_path / "corpus.txt"
    path.write_text("# two knots\ns=2 w=[1,1,1]\nO1+U2+O3+U1+O2+U3+\n")
    code, out, _ = run(capsys, "probe", "ft", "--invariant", "c:2", "--order", "2", "--corpus", str(path))
    obj = json.loads(out)
    assert code == 0 and obj["diagrams"] == 2


def test_probe_nq_deterministic(capsys):
    argv = ["probe", "nq", "--invariant", "c:2", "--order", "1", "--n", "1", "--q", "2", "--cap", "5"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
