"""Pruned enumerators checked against the 2^|U| filter, plus the documented examples."""

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from sspforge.core import (
    BudgetExceeded, GenerationFailed, InvalidInstance, KindMismatch, NoSolution, lit,
    vertex,
)
from sspforge.problems import (
    BRUTE_FORCE_LIMIT, CNF, PROBLEM_IDS, DigraphK, GraphK, HamPayload, NumbersPayload,
    SetFamily, brute_force, enumerate_solutions, generate_instance, get_problem, make_instance,
    minimum_cardinality, universe_of, verify_solution, with_k,
)

TRIANGLE = ((0, 1), (0, 2), (1, 2))


def graph(kind, names, edges, k):
    return make_instance(kind, GraphK(tuple(names), tuple(edges), k))


def names_of(sols):
    return sorted(sorted(str(e) for e in s.members()) for s in sols)


@pytest.mark.parametrize("kind", PROBLEM_IDS)
def test_enumerator_matches_brute_force(kind):
    checked = 0
    for seed in range(8):
        inst = generate_instance(kind, None, seed)
        if len(universe_of(inst)) > BRUTE_FORCE_LIMIT:
            continue
        fast = enumerate_solutions(None, inst)
        slow = brute_force(None, inst)
        assert fast.masks == slow.masks, (kind, seed)
        for m in fast.masks:
            assert verify_solution(None, inst, m)
        checked += 1
    assert checked >= 4


@pytest.mark.parametrize("kind", PROBLEM_IDS)
def test_generator_is_deterministic(kind):
    a = generate_instance(kind, None, 11)
    b = generate_instance(kind, None, 11)
    assert a == b


def test_sat_generator_example_is_reproducible():
    params = {"variables": 3, "clauses": 2, "max_len": 4}
    assert generate_instance("SAT", params, 7) == generate_instance("SAT", params, 7)


def test_generated_cardinality_instances_carry_their_optimum():
    inst = generate_instance("MVC", {"vertices": 5, "density": 0.5}, 1)
    assert inst.payload.k == minimum_cardinality(None, with_k(inst, 0))


def test_esat_generator_uses_three_distinct_variables():
    inst = generate_instance("ESAT", {"variables": 4, "clauses": 2}, 3)
    for clause in inst.payload.clauses:
        assert len({abs(x) for x in clause}) == 3


def test_generator_rejects_unknown_params():
    with pytest.raises(InvalidInstance):
        generate_instance("SS", {"bogus": 1}, 0)
    with pytest.raises(InvalidInstance):
        generate_instance("SS", {"count": -1}, 0)


def test_generation_failure_is_reported():
    # no Hamiltonian cycle can exist on a single vertex
    with pytest.raises((GenerationFailed, InvalidInstance)):
        generate_instance("UHC", {"vertices": 1, "density": 0.0}, 0, tries=5)


# ---------------------------------------------------------------- documented examples

def test_vc_single_edge_has_three_covers():
    vc = graph("VC", "uv", [(0, 1)], 2)
    assert verify_solution(None, vc, [vertex("u")])
    assert names_of(enumerate_solutions(None, vc)) == [["u"], ["u", "v"], ["v"]]


def test_ds_gadget_has_nine_dominating_sets():
    names = ["u", "v", "uv_1", "uv_2", "uv_3"]
    edges = [(0, 1)] + [(0, i) for i in (2, 3, 4)] + [(1, i) for i in (2, 3, 4)]
    ds = graph("DS", names, sorted(edges), 2)
    assert len(enumerate_solutions(None, ds)) == 9


def test_osat_single_clause_candidate():
    osat = make_instance("OSAT", CNF(("x1", "x2", "x3"), ((1, 2, 3),)))
    cand = [lit("x1"), lit("x2", False), lit("x3", False)]
    assert verify_solution(None, osat, cand)
    assert len(enumerate_solutions(None, osat)) == 3


def test_uhc_triangle_has_one_cycle():
    k3 = make_instance("UHC", HamPayload(("u", "v", "w"), TRIANGLE))
    assert verify_solution(None, k3, universe_of(k3).full)
    assert len(enumerate_solutions(None, k3)) == 1


def test_subset_sum_example():
    ss = make_instance("SS", NumbersPayload((1, 2, 3, 4), 5))
    assert not verify_solution(None, ss, 0b0001)
    assert sorted(enumerate_solutions(None, ss).masks) == [0b0110, 0b1001]


def test_empty_clause_is_unsatisfiable():
    sat = make_instance("SAT", CNF(("x1",), ((),)))
    assert len(enumerate_solutions(None, sat)) == 0


def test_minimum_cardinality_examples():
    assert minimum_cardinality("MVC", graph("MVC", "uvw", TRIANGLE, 0)) == 2
    assert minimum_cardinality("MIS", graph("MIS", "uvw", TRIANGLE, 0)) == 1
    assert minimum_cardinality("MVC", graph("MVC", "uvw", [], 0)) == 0


def test_minimum_cardinality_errors():
    acyclic = make_instance("FVS", DigraphK(("a", "b"), ((0, 1),), 0))
    assert minimum_cardinality(None, acyclic) == 0
    with pytest.raises(KindMismatch):
        minimum_cardinality(None, make_instance("SS", NumbersPayload((1,), 1)))
    with pytest.raises(NoSolution):
        minimum_cardinality(None, make_instance("SC", SetFamily(("a",), (), 0)))


def test_threshold_versus_exact_cardinality():
    # VC counts every cover up to k, MVC only those of size exactly k
    assert len(enumerate_solutions(None, graph("VC", "uvw", TRIANGLE, 3))) == 4
    assert len(enumerate_solutions(None, graph("MVC", "uvw", TRIANGLE, 2))) == 3


def test_enumeration_respects_budget():
    inst = generate_instance("MIS", {"vertices": 12, "density": 0.2}, 0)
    with pytest.raises(BudgetExceeded):
        enumerate_solutions(None, inst, budget=5)


def test_kind_mismatch_and_validation():
    with pytest.raises(KindMismatch):
        enumerate_solutions("MIS", make_instance("SS", NumbersPayload((1,), 1)))
    with pytest.raises(InvalidInstance):
        graph("MVC", "uv", [(0, 5)], 1)
    with pytest.raises(InvalidInstance):
        graph("MVC", "uu", [], 1)
    with pytest.raises(KindMismatch):
        get_problem("nope")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 12), max_size=8), st.integers(0, 40))
def test_subset_sum_against_combinations(values, target):
    ss = make_instance("SS", NumbersPayload(tuple(values), target))
    expected = set()
    for r in range(len(values) + 1):
        for combo in combinations(range(len(values)), r):
            if sum(values[i] for i in combo) == target:
                expected.add(sum(1 << i for i in combo))
    assert enumerate_solutions(None, ss).masks == expected


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.sets(st.tuples(st.integers(0, 6), st.integers(0, 6)), max_size=12),
       st.integers(0, 7))
def test_graph_kinds_against_brute_force(n, pairs, k):
    edges = sorted({(min(a, b), max(a, b)) for a, b in pairs if a != b and max(a, b) < n})
    names = [f"v{i}" for i in range(n)]
    for kind in ("VC", "MVC", "DS", "MDS", "MIS", "CQ"):
        inst = graph(kind, names, edges, min(k, n))
        assert enumerate_solutions(None, inst).masks == brute_force(None, inst).masks, kind
