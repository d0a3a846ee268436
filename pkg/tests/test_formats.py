import hashlib
import json

import pytest

from sspforge.formats import (
    ParseError, SchemaError, ValidationError, dumps, fingerprint, import_dimacs_cnf,
    instance_document, parse_instance, parse_solutions, serialize_instance, serialize_report,
    solutions_document,
)
from sspforge.problems import (
    CNF, PROBLEM_IDS, NumbersPayload, enumerate_solutions, generate_instance, make_instance,
)
from sspforge.reductions import get_reduction
from sspforge.verifier import full_report


@pytest.mark.parametrize("kind", PROBLEM_IDS)
def test_round_trip_on_generated_instances(kind):
    for seed in range(20):
        inst = generate_instance(kind, None, seed)
        text = serialize_instance(inst)
        back = parse_instance(text)
        assert back == inst and back.name == inst.name
        assert serialize_instance(back) == text


def test_schema_example():
    inst = parse_instance({"problem": "ss", "numbers": [1, 2, 3, 4], "target": 5})
    assert inst.kind == "SS" and inst.payload == NumbersPayload((1, 2, 3, 4), 5)


def test_optimality_recheck_is_opt_in():
    doc = {"problem": "mvc", "vertices": ["u", "v", "w"], "edges": [["u", "v"]], "k": 1}
    assert parse_instance(doc, check_optimum=True).payload.k == 1
    doc["k"] = 2
    assert parse_instance(doc).payload.k == 2
    with pytest.raises(ValidationError) as info:
        parse_instance(doc, check_optimum=True)
    assert info.value.path == "k"


def test_malformed_edge_reports_its_path():
    doc = {"problem": "mvc", "vertices": ["u", "v"], "edges": [["u"]], "k": 1}
    with pytest.raises(ValidationError) as info:
        parse_instance(doc)
    assert info.value.path == "edges[0]"


@pytest.mark.parametrize("doc, path", [
    ({"problem": "mvc", "vertices": ["u"], "edges": [], "k": 0, "colour": 1}, "colour"),
    ({"problem": "mvc", "vertices": ["u"], "edges": []}, "k"),
    ({"problem": "nope"}, "problem"),
    ({"version": 2, "problem": "ss", "numbers": [], "target": 0}, "version"),
])
def test_strict_schema(doc, path):
    with pytest.raises(SchemaError) as info:
        parse_instance(doc)
    assert info.value.path == path


def test_validation_errors_carry_paths():
    with pytest.raises(ValidationError) as info:
        parse_instance({"problem": "mvc", "vertices": ["u", "v"], "edges": [["u", "x"]], "k": 1})
    assert info.value.path == "edges[0]"
    with pytest.raises(ValidationError) as info:
        parse_instance({"problem": "ss", "numbers": [1, True], "target": 1})
    assert info.value.path == "numbers[1]"
    with pytest.raises(SchemaError):
        parse_instance("{not json")
    with pytest.raises(SchemaError):
        parse_instance("[]")


def test_large_integers_are_strings():
    big = 2 ** 60 + 1
    inst = make_instance("SS", NumbersPayload((big, 3), big))
    doc = instance_document(inst)
    assert doc["numbers"] == [str(big), 3] and doc["target"] == str(big)
    assert parse_instance(json.loads(dumps(doc))) == inst


def test_esat_to_ss_output_survives_json():
    esat = generate_instance("ESAT", {"variables": 12, "clauses": 14}, 0)
    target = get_reduction("esat_to_ss").build(esat).target
    assert parse_instance(serialize_instance(target)) == target


def test_fingerprint_ignores_metadata_and_is_stable():
    a = parse_instance({"problem": "ss", "numbers": [1, 2, 3, 4], "target": 5, "name": "a"})
    b = parse_instance({"problem": "ss", "numbers": [1, 2, 3, 4], "target": 5, "note": "x"})
    canonical = '{"numbers":[1,2,3,4],"problem":"ss","target":5,"version":1}'
    expected = hashlib.sha256(canonical.encode()).hexdigest()[:16]
    assert fingerprint(a) == fingerprint(b) == expected
    c = parse_instance({"problem": "ss", "numbers": [1, 2, 3, 4], "target": 6})
    assert fingerprint(c) != fingerprint(a)


def test_solutions_document_round_trip():
    inst = generate_instance("MVC", None, 4)
    sols = enumerate_solutions(None, inst)
    doc = solutions_document(inst, sols)
    assert doc["count"] == len(sols) and doc["fingerprint"] == fingerprint(inst)
    assert parse_solutions(doc, inst).masks == sols.masks


def test_dimacs_examples():
    inst = import_dimacs_cnf("c demo\np cnf 2 1\n1 -2 0\n")
    assert inst.kind == "SAT"
    assert inst.payload == CNF(("x1", "x2"), ((1, -2),))
    empty = import_dimacs_cnf("p cnf 1 1\n0\n")
    assert empty.payload.clauses == ((),)
    multi = import_dimacs_cnf("p cnf 3 2\n1 2\n 3 0 -1 0\n")
    assert multi.payload.clauses == ((1, 2, 3), (-1,))


@pytest.mark.parametrize("text, line", [
    ("p cnf 2 2\n1 -2 0\n", 2),
    ("1 2 0\n", 1),
    ("p cnf 1 1\n2 0\n", 2),
    ("p cnf 1 1\n1 x 0\n", 2),
    ("p cnf 2 1\n1 2\n", 2),
    ("p dnf 1 1\n", 1),
])
def test_dimacs_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        import_dimacs_cnf(text)
    assert info.value.line == line


def test_report_shapes():
    ss = make_instance("SS", NumbersPayload((1, 2, 3, 4), 5))
    doc = serialize_report(full_report(get_reduction("ss_to_ks"), ss))
    assert doc["ssp"] is True and doc["spr"] is True and doc["counts"] == [2, 2]
    assert "elapsed" not in doc and doc["partition"]["valid"]

    four = make_instance("SAT", CNF(("x1", "x2", "x3", "x4"), ((1, 2, 3, 4),)))
    doc = serialize_report(full_report(get_reduction("sat_to_tsat_naive"), four))
    assert doc["spr"] is False and 1 <= len(doc["witnesses"]["spr"]) <= 3

    unsat = make_instance("TSAT", CNF(("x1",), ((1,), (-1,))))
    doc = serialize_report(full_report(get_reduction("tsat_to_esat"), unsat))
    assert doc["vacuous"] is True and doc["counts"] == [0, 0]


def test_report_serialization_is_deterministic():
    inst = generate_instance("ESAT", {"variables": 3, "clauses": 2}, 1)
    red = get_reduction("esat_to_osat")
    a = dumps(serialize_report(full_report(red, inst)))
    b = dumps(serialize_report(full_report(red, inst)))
    assert a == b
