"""Acceptance suite: one PASS/FAIL line per criterion, each under its runtime limit."""

import json
import subprocess
import sys
import time
from functools import wraps

import pytest

from sspforge.compendium import compose, compose_ids
from sspforge.core import GenerationFailed, UnsupportedShape, lit
from sspforge.formats import parse_instance, serialize_instance
from sspforge.problems import (
    CNF, PROBLEM_IDS, GraphK, enumerate_solutions, generate_instance, make_instance,
    universe_of,
)
from sspforge.reductions import REGISTRY, get_reduction, lift_solution
from sspforge.verifier import (
    check_parsimonious, classify_partition, full_report, mask_names, parsimony_witnesses,
    sweep_instance,
)

RESULTS = {}


def criterion(number, title, limit):
    """Record PASS/FAIL and wall time; a run over the limit fails."""
    def wrap(fn):
        @wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                RESULTS[number] = ("FAIL", title, time.perf_counter() - start, limit)
                raise
            elapsed = time.perf_counter() - start
            verdict = "PASS" if elapsed < limit else "FAIL"
            RESULTS[number] = (verdict, title, elapsed, limit)
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"
        return run
    return wrap


def report_lines():
    lines = []
    for number in sorted(RESULTS):
        verdict, title, elapsed, limit = RESULTS[number]
        lines.append(f"criterion {number:>2} {verdict}  {title} ({elapsed:.2f}s / {limit}s)")
    return lines


def cnf(kind, n, clauses):
    return make_instance(kind, CNF(tuple(f"x{i}" for i in range(1, n + 1)), tuple(clauses)))


def names(universe, mask):
    return set(mask_names(universe, mask))


@criterion(1, "VC single edge k=2: 3 covers vs 9 dominating sets", 1)
def test_c01_cardinality_counterexample():
    vc = make_instance("VC", GraphK(("u", "v"), ((0, 1),), 2))
    assert check_parsimonious(get_reduction("vc_to_ds_demo"), vc) == (False, 3, 9)


@criterion(2, "naive clause split is ambiguous, modified split is parsimonious", 5)
def test_c02_naive_vs_modified_split():
    four = cnf("SAT", 4, [(1, 2, 3, 4)])
    naive = full_report(get_reduction("sat_to_tsat_naive"), four)
    assert not naive.spr_holds and naive.claims_matched
    witness = naive.witnesses["spr"][0]
    helpers = [set(t) - set(witness["source"]) for t in witness["targets"]]
    assert {"h1"} in helpers and {"~h1"} in helpers

    modified = full_report(get_reduction("sat_to_tsat"), four)
    src = len(enumerate_solutions(None, four))
    tgt = len(enumerate_solutions(None, get_reduction("sat_to_tsat").build(four).target))
    assert modified.spr_holds and modified.source_count == src == tgt == 15


@criterion(3, "3SAT to E3SAT certificate on {{x1},{x2,x3}}", 5)
def test_c03_padding_certificate():
    tsat = cnf("TSAT", 3, [(1,), (2, 3)])
    red = get_reduction("tsat_to_esat")
    cert = classify_partition(red, tsat)
    tu = universe_of(red.build(tsat).target)
    assert cert.valid
    assert names(tu, cert.s_all) == {"h1", "h2", "h3"}
    assert names(tu, cert.s_nev) == {"~h1", "~h2", "~h3"}
    holds, s, t = check_parsimonious(red, tsat)
    assert holds and s == t


# lifts of the clause (x1,x2,x3); cases 1, 4 and 7 are spelled out, the rest follow
CASE_TABLE = {
    ("x1", "~x2", "~x3"): {"z1_1", "~z2_1", "~z3_1", "~h1_1", "~h2_1", "~h3_1",
                           "~g1_1", "g2_1", "~g3_1"},
    ("x1", "x2", "~x3"): {"~z1_1", "z2_1", "~z3_1", "h1_1", "~h2_1", "~h3_1",
                          "g1_1", "~g2_1", "g3_1"},
    ("x1", "x2", "x3"): {"~z1_1", "~z2_1", "z3_1", "h1_1", "h2_1", "~h3_1",
                         "~g1_1", "g2_1", "g3_1"},
}


@criterion(4, "E3SAT to 1-in-3SAT: seven lifts of one clause", 10)
def test_c04_seven_cases():
    red = get_reduction("esat_to_osat")
    src = cnf("ESAT", 3, [(1, 2, 3)])
    target = red.build(src).target
    sources = enumerate_solutions(None, src)
    targets = enumerate_solutions(None, target)
    assert len(sources) == 7 and len(targets) == 7
    tu = universe_of(target)
    seen = set()
    for s in sources:
        base = {str(e) for e in s.members()}
        lifted = {str(e) for e in lift_solution(red, src, s).members()}
        extending = [t for t in targets.masks if base <= names(tu, t)]
        assert len(extending) == 1 and names(tu, extending[0]) == lifted
        key = tuple(sorted(base, key=lambda n: n.lstrip("~")))
        if key in CASE_TABLE:
            assert lifted - base == CASE_TABLE[key]
            seen.add(key)
        assert lifted.isdisjoint({"~" + n for n in lifted})
    assert seen == set(CASE_TABLE)


@criterion(5, "negative suite: overcounting gadgets and complement reductions", 60)
def test_c05_negative_suite():
    clause = cnf("ESAT", 3, [(1, 2, 3)])
    mis = full_report(get_reduction("esat_to_mis"), clause)
    assert mis.target_count > mis.source_count and not mis.spr_holds and mis.claims_matched
    full = next(w for w in parsimony_witnesses(get_reduction("esat_to_mis"), clause)
                if w["source"] == ["x1", "x2", "x3"])
    assert len(full["targets"]) == 3

    mvc = full_report(get_reduction("esat_to_mvc"), clause)
    assert not mvc.spr_holds and mvc.claims_matched

    for rid in ("cq_to_mvc", "mis_to_mvc"):
        red = get_reduction(rid)
        for seed in range(20):
            r = full_report(red, sweep_instance(red, seed))
            assert not r.ssp_holds and r.spr_holds and r.claims_matched


SPR_POSITIVE = [r for r in REGISTRY
                if r.claims.ssp and r.claims.spr and r.id != "osat_to_stt"]


@criterion(6, "100 supported instances per SSP+SPR entry, claims matched", 600)
def test_c06_spr_positive_sweep():
    for red in SPR_POSITIVE:
        checked = skipped = seed = 0
        while checked < 100:
            inst = sweep_instance(red, seed)
            seed += 1
            try:
                r = full_report(red, inst)
            except UnsupportedShape:
                skipped += 1
                assert skipped <= 100, f"{red.id}: generator rarely yields supported shapes"
                continue
            assert r.claims_matched, f"{red.id} seed {seed - 1}"
            if not r.premise_failure:
                assert r.ssp_holds and r.spr_holds and r.partition.valid, red.id
            checked += 1


@criterion(7, "1-in-3SAT to Steiner tree on the smallest instance", 120)
def test_c07_steiner_special_case():
    src = cnf("OSAT", 3, [(1, 2, 3)])
    r = full_report(get_reduction("osat_to_stt"), src)
    assert r.source_count == r.target_count, (
        f"{r.source_count} assignments vs {r.target_count} Steiner trees")
    assert r.partition.valid


def _small_graphs(kind):
    for seed in range(50):
        params = {"vertices": 3 + seed % 3, "density": 0.6}
        try:
            yield generate_instance(kind, params, seed)
        except GenerationFailed:
            continue


@criterion(8, "Hamiltonian chains preserve counts end to end", 300)
def test_c08_hamiltonian_chain():
    directed = compose(get_reduction("dhc_to_uhc"))
    path_to_tour = compose_ids("uhp_to_uhc", "uhc_to_tsp")
    checked = 0
    for red, kind in ((directed, "DHC"), (path_to_tour, "UHP")):
        for inst in _small_graphs(kind):
            assert len(inst.payload.vertices) <= 5
            r = full_report(red, inst)
            end = len(enumerate_solutions(None, red.build(inst).target))
            assert r.source_count == r.target_count == end, f"{red.id} on {inst.name}"
            assert r.spr_holds and r.ssp_holds
            checked += 1
    assert checked >= 80


@criterion(9, "subset-sum digit layout on the two-clause example", 5)
def test_c09_subset_sum_digits():
    src = cnf("ESAT", 3, [(-1, -2, 3), (1, -2, -3)])
    red = get_reduction("esat_to_ss")
    target = red.build(src).target.payload
    assert target.target == int("111" "100" "100", 2)
    expected = ["100000001", "100001000", "010000000", "010001001", "001001000",
                "001000001", "000001000", "000010000", "000000001", "000000010"]
    assert [format(n, "09b") for n in target.numbers] == expected
    holds, s, t = check_parsimonious(red, src)
    assert holds and s == t == len(enumerate_solutions(None, src))


def _cli(*argv):
    out = subprocess.run([sys.executable, "-m", "sspforge.cli", *argv],
                         capture_output=True, timeout=60)
    return out.returncode, out.stdout, out.stderr


@criterion(10, "format round trips and byte-stable CLI output", 60)
def test_c10_round_trip_and_determinism(tmp_path):
    for kind in PROBLEM_IDS:
        for seed in range(20):
            inst = generate_instance(kind, None, seed)
            text = serialize_instance(inst)
            assert parse_instance(text) == inst and serialize_instance(parse_instance(text)) == text

    ss = tmp_path / "ss.json"
    ss.write_text(json.dumps({"problem": "ss", "numbers": [1, 2, 3, 4], "target": 5}))
    commands = [
        ["solve", str(ss), "--all"],
        ["reduce", "ss_to_p", str(ss), "--trace"],
        ["verify", "esat_to_osat", "--random", "5", "--format", "json"],
        ["certify", "ss_to_p", str(ss)],
        ["compose", "uhp_to_uhc", "uhc_to_tsp", "--verify", "--random", "3"],
        ["graph", "--format", "dot"],
        ["graph", "--format", "json"],
        ["gen", "dhp", "--seed", "2"],
        ["list"],
    ]
    for argv in commands:
        first = _cli(*argv)
        assert first[0] == 0, (argv, first[2])
        assert _cli(*argv) == first, argv


if __name__ == "__main__":
    pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
