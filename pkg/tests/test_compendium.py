import json

import pytest

from sspforge.compendium import (
    build_graph, chain_targets, compose, compose_ids, export_dot, export_graph, export_json,
    graph_from_json, materialize, transitive_paths,
)
from sspforge.core import KindMismatch
from sspforge.formats import instance_document
from sspforge.problems import generate_instance
from sspforge.reductions import ClaimFlags, get_reduction
from sspforge.verifier import full_report

BOTH = ClaimFlags(True, True)


def test_composition_conjoins_claims():
    c = compose_ids("tsat_to_esat", "esat_to_osat")
    assert (c.source, c.target, c.claims) == ("TSAT", "OSAT", BOTH)
    assert c.links == ("tsat_to_esat", "esat_to_osat")
    assert compose_ids("mis_to_mvc", "mvc_to_sc").claims == ClaimFlags(False, True)


def test_single_composition_is_the_reduction_itself():
    red = get_reduction("dhc_to_uhc")
    assert compose(red) is red


def test_mismatched_chain():
    with pytest.raises(KindMismatch):
        compose_ids("ss_to_p", "ss_to_ks")


def test_composed_chain_matches_direct_route():
    chained = compose_ids("uhp_to_uhc", "uhc_to_tsp")
    direct = get_reduction("uhp_to_tsp")
    for seed in range(6):
        inst = generate_instance("UHP", {"vertices": 5, "density": 0.6}, seed)
        a, b = full_report(chained, inst), full_report(direct, inst)
        assert (a.source_count, a.target_count) == (b.source_count, b.target_count)
        assert a.ssp_holds and a.spr_holds and a.partition.valid


def test_composition_is_associative():
    ids = ("tsat_to_esat", "esat_to_osat", "osat_to_mis")
    left = compose(compose_ids(*ids[:2]), get_reduction(ids[2]))
    right = compose(get_reduction(ids[0]), compose_ids(*ids[1:]))
    for seed in range(4):
        inst = generate_instance("TSAT", {"variables": 3, "clauses": 2}, seed)
        assert instance_document(left.build(inst).target) == \
            instance_document(right.build(inst).target)


def test_chain_targets_lists_every_stage():
    inst = generate_instance("TSAT", {"variables": 3, "clauses": 1}, 0)
    stages = chain_targets(compose_ids("tsat_to_esat", "esat_to_osat"), inst)
    assert [s.kind for s in stages] == ["TSAT", "ESAT", "OSAT"]


def test_transitive_path_examples():
    assert transitive_paths("esat", "mis", BOTH) == [["esat_to_osat", "osat_to_mis"]]
    assert transitive_paths("ss", "tms", BOTH) == [["ss_to_p", "p_to_tms"]]
    assert transitive_paths("mis", "dm", BOTH) == []
    assert transitive_paths("sat", "sat") == []


def test_paths_are_shortest_first_and_bounded():
    paths = transitive_paths("sat", "mis")
    assert paths and paths == sorted(paths, key=lambda c: (len(c), c))
    assert all(len(c) <= 6 for c in paths)
    assert not any("sat_to_tsat_naive" in c for c in paths)
    assert any("sat_to_tsat_naive" in c for c in transitive_paths("sat", "mis", include_demo=True))


def test_paths_exhibit_the_required_properties():
    chain = transitive_paths("esat", "mis", BOTH)[0]
    red = materialize(chain)
    for seed in range(3):
        inst = generate_instance("ESAT", {"variables": 3, "clauses": 2}, seed)
        r = full_report(red, inst)
        assert r.ssp_holds and r.spr_holds and r.partition.valid


def test_dot_export_styles_edges_by_claims():
    dot = export_dot(build_graph())
    edges = [l for l in dot.splitlines() if "->" in l]
    assert len(edges) == 40
    nodes = [l for l in dot.splitlines() if "[label=" in l and "->" not in l]
    assert len(nodes) == 31
    dashed = [l.split('id="')[1].split('"')[0] for l in edges if "style=dashed" in l]
    assert sorted(dashed) == ["cq_to_mvc", "esat_to_cq", "mis_to_mvc"]
    demos = [l for l in edges if 'class="demo"' in l]
    assert len(demos) == 2 and all("style=dotted" in l for l in demos)
    assert export_dot(build_graph()) == dot


def test_spr_only_filter():
    g = build_graph(claims=ClaimFlags(False, True))
    assert [e.id for e in g.edges] == ["esat_to_cq", "mis_to_mvc", "cq_to_mvc"]


def test_empty_graph():
    g = build_graph(registry=())
    assert export_json(g) == {"version": 1, "nodes": [], "edges": []}
    assert "->" not in export_dot(g)


def test_json_export_round_trips():
    g = build_graph()
    g.derived.append(compose_ids("uhp_to_uhc", "uhc_to_tsp"))
    doc = export_graph(g, "json")
    back = graph_from_json(json.dumps(doc))
    assert back == g
    assert export_graph(back, "json") == doc
    with pytest.raises(ValueError):
        export_graph(g, "svg")
