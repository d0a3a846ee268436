import pytest

from sspforge.core import BudgetExceeded, NoEmbedding
from sspforge.problems import (
    CNF, GraphK, HamPayload, NumbersPayload, generate_instance, make_instance, universe_of,
    verify_solution,
)
from sspforge.reductions import REGISTRY, get_reduction
from sspforge.verifier import (
    MAX_WITNESSES, check_parsimonious, check_ssp, classify_partition, full_report,
    mask_names, parsimony_witnesses, reconstruct, search_counterexample, sweep,
)

SS_EXAMPLE = make_instance("SS", NumbersPayload((1, 2, 3, 4), 5))
FOUR_CLAUSE = make_instance("SAT", CNF(("x1", "x2", "x3", "x4"), ((1, 2, 3, 4),)))
ALL_POSITIVE = make_instance("ESAT", CNF(("x1", "x2", "x3"), ((1, 2, 3),)))
K4 = make_instance("UHC", HamPayload(tuple("abcd"),
                                     ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))))


def names(universe, mask):
    return set(mask_names(universe, mask))


def test_check_ssp_examples():
    assert check_ssp(get_reduction("uhc_to_tsp"), K4)[0]
    assert check_ssp(get_reduction("sat_to_tsat_naive"), FOUR_CLAUSE)[0]
    esat = generate_instance("ESAT", {"variables": 3, "clauses": 1}, 0)
    with pytest.raises(NoEmbedding):
        check_ssp(get_reduction("esat_to_cq"), esat)


def test_check_parsimonious_examples():
    vc = make_instance("VC", GraphK(("u", "v"), ((0, 1),), 2))
    assert check_parsimonious(get_reduction("vc_to_ds_demo"), vc) == (False, 3, 9)
    holds, s, t = check_parsimonious(get_reduction("sat_to_tsat"), FOUR_CLAUSE)
    assert holds and s == t == 15
    tsat = make_instance("TSAT", CNF(("x1", "x2", "x3"), ((1,), (2, 3))))
    holds, s, t = check_parsimonious(get_reduction("tsat_to_esat"), tsat)
    assert holds and s == t


def test_naive_split_witness_has_both_helper_polarities():
    report = full_report(get_reduction("sat_to_tsat_naive"), FOUR_CLAUSE)
    assert not report.spr_holds and report.ssp_holds
    assert report.source_count < report.target_count
    w = report.witnesses["spr"]
    assert 1 <= len(w) <= MAX_WITNESSES
    assert report.partition.failure_reason == "two target solutions share a representative part"


def test_esat_to_mis_three_equivalents():
    report = full_report(get_reduction("esat_to_mis"), ALL_POSITIVE)
    assert (report.source_count, report.target_count) == (7, 12)
    # witnesses are capped, so ask for the full list
    full = next(w for w in parsimony_witnesses(get_reduction("esat_to_mis"), ALL_POSITIVE)
                if w["source"] == ["x1", "x2", "x3"])
    assert len(full["targets"]) == 3


def test_partition_of_padding_reduction():
    tsat = make_instance("TSAT", CNF(("x1", "x2", "x3"), ((1,), (2, 3))))
    red = get_reduction("tsat_to_esat")
    cert = classify_partition(red, tsat)
    tu = universe_of(red.build(tsat).target)
    assert cert.valid
    assert names(tu, cert.s_all) == {"h1", "h2", "h3"}
    assert names(tu, cert.s_nev) == {"~h1", "~h2", "~h3"}
    assert cert.s_link == 0


def test_partition_of_subset_sum_to_partition():
    red = get_reduction("ss_to_p")
    cert = classify_partition(red, SS_EXAMPLE)
    tu = universe_of(red.build(SS_EXAMPLE).target)
    assert cert.valid
    assert names(tu, cert.s_all) == {"a6"}
    # the balancing number M+1 is in no solution, so it lands in s_nev
    assert names(tu, cert.s_nev) == {"a5"}
    assert cert.s_link == 0


def test_partition_of_uhc_to_tsp_puts_heavy_edges_in_s_nev():
    five = generate_instance("UHC", {"vertices": 5, "density": 0.6}, 2)
    red = get_reduction("uhc_to_tsp")
    built = red.build(five)
    cert = classify_partition(red, five)
    tp = built.target.payload
    tu = universe_of(built.target)
    heavy = {str(e) for e, w in zip(tu, tp.weights) if w == 1}
    assert cert.valid
    assert names(tu, cert.s_nev) == heavy
    assert cert.s_all == 0 and cert.s_link == 0


def test_partition_sets_are_disjoint_and_total():
    for red in REGISTRY:
        if not red.has_embedding or red.id == "osat_to_stt":
            continue
        inst = next(sweep(red, 1)).instance
        cert = classify_partition(red, inst)
        full = universe_of(red.build(inst).target).full
        parts = [cert.s_rep, cert.s_all, cert.s_nev, cert.s_link]
        assert sum(parts) == full and (cert.s_rep | cert.s_all | cert.s_nev | cert.s_link) == full


def test_reconstruction_is_sound():
    for rid in ("tsat_to_esat", "esat_to_osat", "mvc_to_vcv", "dhp_to_uhp", "odm_to_dm"):
        red = get_reduction(rid)
        for trial in sweep(red, 3, seed=5):
            if trial.report is None or trial.report.premise_failure:
                continue
            built = red.build(trial.instance)
            cert = trial.report.partition
            assert cert.valid
            rebuilt = reconstruct(cert, built)
            assert len(rebuilt) == trial.report.target_count
            assert all(verify_solution(None, built.target, m) for m in rebuilt)


def test_full_report_examples():
    r = full_report(get_reduction("ss_to_ks"), SS_EXAMPLE)
    assert (r.ssp_holds, r.spr_holds, r.source_count, r.target_count) == (True, True, 2, 2)
    assert r.claims_matched and len(r.fingerprint) == 16

    tri = make_instance("CQ", GraphK(("u", "v", "w"), ((0, 1), (0, 2), (1, 2)), 3))
    r = full_report(get_reduction("cq_to_mvc"), tri)
    assert (r.ssp_holds, r.spr_holds, r.source_count, r.target_count) == (False, True, 1, 1)
    assert r.ssp_reason == "no registered f_I" and r.claims_matched

    path = make_instance("MVC", GraphK(tuple("abcd"), ((0, 1), (1, 2), (2, 3)), 2))
    red = get_reduction("mvc_to_vcv")
    r = full_report(red, path)
    assert r.ssp_holds and r.spr_holds
    assert names(universe_of(red.build(path).target), r.partition.s_all) == {"v_all"}


def test_vacuous_report():
    unsat = make_instance("TSAT", CNF(("x1",), ((1,), (-1,))))
    r = full_report(get_reduction("tsat_to_esat"), unsat)
    assert r.vacuous and r.partition.vacuous and r.partition.valid
    assert r.ssp_holds and r.spr_holds


def test_spr_implies_equal_counts():
    for red in REGISTRY[:12]:
        for trial in sweep(red, 2):
            if trial.report and trial.report.spr_holds:
                assert trial.report.source_count == trial.report.target_count


def test_counterexample_search_finds_known_failures():
    found = search_counterexample(get_reduction("esat_to_mis"), "spr", trials=50)
    assert found is not None
    inst, report = found
    assert report.target_count > report.source_count
    assert search_counterexample(get_reduction("mis_to_mvc"), "ssp", trials=1) is not None


def test_counterexample_search_exhausts_without_failure():
    assert search_counterexample(get_reduction("tsat_to_esat"), "spr", trials=200) is None


def test_budget_overruns_are_recorded_not_raised():
    errors = []
    result = search_counterexample(get_reduction("esat_to_dhp"), "spr", trials=3,
                                   budget=10, errors=errors)
    assert result is None
    assert len(errors) == 3 and all("budget" in e for _, e in errors)
    with pytest.raises(BudgetExceeded):
        full_report(get_reduction("esat_to_dhp"), ALL_POSITIVE, budget=10)


def test_sweep_is_deterministic():
    red = get_reduction("mvc_to_fas")
    a = [(t.seed, t.report.source_count, t.report.target_count) for t in sweep(red, 5, seed=3)]
    b = [(t.seed, t.report.source_count, t.report.target_count) for t in sweep(red, 5, seed=3)]
    assert a == b and [s for s, _, _ in a] == [3, 4, 5, 6, 7]


def test_odm_premise_failure_releases_the_claim():
    red = get_reduction("odm_to_dm")
    checked = 0
    for trial in sweep(red, 20):
        r = trial.report
        if r.premise_failure:
            assert r.claims_matched
        else:
            assert r.spr_holds and r.ssp_holds
            checked += 1
    assert checked > 0
