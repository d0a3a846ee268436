import io
import json

import pytest

from sspforge.cli import main, parse_flags, parse_params
from sspforge.reductions import ClaimFlags

SS = {"problem": "ss", "numbers": [1, 2, 3, 4], "target": 5}


@pytest.fixture
def files(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_lists_solutions(capsys, files):
    code, out, _ = run(capsys, "solve", files("ss.json", SS), "--all")
    assert code == 0
    assert out.splitlines() == ["count: 2", "{a2,a3}", "{a1,a4}"]


def test_solve_unsatisfiable_is_not_an_error(capsys, files):
    path = files("unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n")
    code, out, _ = run(capsys, "solve", path)
    assert (code, out) == (0, "count: 0\n")


def test_solve_budget_exit_code(capsys, files):
    code, _, err = run(capsys, "solve", files("ss.json", SS), "--budget", "2")
    assert code == 2 and "budget" in err


def test_solve_json_and_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(SS)))
    code, out, _ = run(capsys, "solve", "-", "--all", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 2 and doc["solutions"] == [["a2", "a3"], ["a1", "a4"]]


def test_invalid_documents_exit_one(capsys, files):
    bad = files("bad.json", {"problem": "mvc", "vertices": ["u"], "edges": [["u"]], "k": 1})
    code, _, err = run(capsys, "solve", bad)
    assert code == 1 and "edges[0]" in err
    code, _, _ = run(capsys, "solve", files("junk.json", "{"))
    assert code == 1
    code, _, _ = run(capsys, "solve", "/nonexistent/file.json")
    assert code == 1


def test_reduce_writes_target_document(capsys, files):
    code, out, _ = run(capsys, "reduce", "ss_to_p", files("ss.json", SS))
    assert code == 0 and json.loads(out)["numbers"] == [1, 2, 3, 4, 6, 6]


def test_reduce_trace_and_kind_mismatch(capsys, files):
    k3 = files("k3.json", {"problem": "dhc", "vertices": ["a", "b", "c"],
                           "arcs": [["a", "b"], ["b", "c"], ["c", "a"]]})
    code, out, _ = run(capsys, "reduce", "dhc_to_uhc", k3, "--trace")
    doc = json.loads(out)
    assert code == 0 and len(doc["target"]["vertices"]) == 9
    assert ["(a,b)", "{a_out,b_in}"] in doc["embedding"]
    code, _, _ = run(capsys, "reduce", "ss_to_ks", k3)
    assert code == 1


def test_verify_random_trials(capsys):
    code, out, _ = run(capsys, "verify", "tsat_to_esat", "--random", "100")
    lines = out.splitlines()
    assert code == 0 and lines[-1] == "claims matched: yes"
    assert sum(line.startswith("trial") for line in lines) == 100


def test_verify_expected_failure_matches_claims(capsys, files):
    clause = files("bad.json", {"problem": "esat", "variables": ["x1", "x2", "x3"],
                                "clauses": [[1, 2, 3]]})
    code, out, _ = run(capsys, "verify", "esat_to_mis", clause)
    assert code == 0 and "spr=no" in out and "claims matched: yes" in out


def test_verify_tampered_claims_exit_four(capsys, files):
    code, out, _ = run(capsys, "verify", "mis_to_mvc", "--random", "2",
                       "--claims", "ssp=yes,spr=yes")
    assert code == 4 and "claims matched: no" in out
    code, _, _ = run(capsys, "verify", "ss_to_ks", files("ss.json", SS), "--claims", "ssp,spr")
    assert code == 0


def test_verify_json_report(capsys):
    code, out, _ = run(capsys, "verify", "ss_to_ks", "--random", "2", "--params",
                       "count=4,max_value=5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["reports"]) == 2 and doc["claims_matched"]


def test_certify(capsys, files):
    code, out, _ = run(capsys, "certify", "ss_to_p", files("ss.json", SS))
    assert code == 0
    assert "certificate: valid" in out and "s_all: {a6}" in out
    code, _, _ = run(capsys, "certify", "mis_to_mvc", files(
        "g.json", {"problem": "mis", "vertices": ["u"], "edges": [], "k": 1}))
    assert code == 1


def test_compose(capsys, files):
    code, out, _ = run(capsys, "compose", "uhp_to_uhc", "uhc_to_tsp")
    assert code == 0 and out.startswith("uhp_to_uhc+uhc_to_tsp: UHP -> TSP")
    code, out, _ = run(capsys, "compose", "uhp_to_uhc", "uhc_to_tsp", "--verify",
                       "--random", "3")
    assert code == 0 and "claims matched: yes" in out
    code, _, _ = run(capsys, "compose", "ss_to_p", "ss_to_ks")
    assert code == 1


def test_graph_commands(capsys):
    code, out, _ = run(capsys, "graph", "--path", "esat", "mis", "--require", "ssp,spr")
    assert (code, out) == (0, "esat_to_osat, osat_to_mis\n")
    code, out, _ = run(capsys, "graph", "--path", "sat", "sat")
    assert (code, out) == (0, "")
    code, out, _ = run(capsys, "graph", "--format", "dot")
    assert code == 0 and out.startswith("digraph reductions {")
    code, out, _ = run(capsys, "graph", "--format", "json")
    assert len(json.loads(out)["edges"]) == 40


def test_gen_and_list(capsys):
    code, out, _ = run(capsys, "gen", "mvc", "--seed", "3", "--params", '{"vertices": 4}')
    assert code == 0 and json.loads(out)["problem"] == "mvc"
    code, out, _ = run(capsys, "list", "--source", "mvc")
    assert code == 0 and len(out.splitlines()) == 9
    code, out, _ = run(capsys, "list", "--problems")
    assert len(out.splitlines()) == 31


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    assert main(["gen", "ss", "--seed", "1", "-o", str(target)]) == 0
    assert json.loads(target.read_text())["problem"] == "ss"
    assert capsys.readouterr().out == ""


def test_option_parsers():
    assert parse_params("count=4,density=0.5,name=x") == {"count": 4, "density": 0.5, "name": "x"}
    assert parse_flags("ssp") == ClaimFlags(True, False)
    assert parse_flags("ssp=no,spr=yes") == ClaimFlags(False, True)
    with pytest.raises(Exception):
        parse_flags("fast")
    with pytest.raises(Exception):
        parse_params("novalue")


def test_commands_are_byte_stable(capsys, files):
    ss = files("ss.json", SS)
    for argv in (["solve", ss, "--all"], ["verify", "esat_to_osat", "--random", "3"],
                 ["graph"], ["gen", "dhp", "--seed", "2"]):
        first = run(capsys, *argv)
        assert run(capsys, *argv) == first
