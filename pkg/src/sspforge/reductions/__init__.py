"""Registry of executable reductions between subset search problems."""

from __future__ import annotations

from ..core import InvalidInstance
from ..problems import generate_instance, get_problem, with_k
from . import complements, covers, gadgets, hamiltonian, matching, numbers, satisfiability
from .base import (
    Built, ClaimFlags, ReductionDef, apply_reduction, embed_element, embed_mask,
    embedding, encoding_size, lift_solution, raw_lift, raw_unlift, unlift_solution,
)

BOTH = ClaimFlags(True, True)
SSP_ONLY = ClaimFlags(True, False)
SPR_ONLY = ClaimFlags(False, True)

_SAT = {"variables": 3, "clauses": 2}
_GRAPH = {"vertices": 5, "density": 0.5}
_SMALL_GRAPH = {"vertices": 4, "density": 0.5}


def _odm_source(seed: int):
    osat = generate_instance("OSAT", {"variables": 3, "clauses": 1}, seed)
    return matching.osat_to_odm(osat).target


def _slack_vc_source(seed: int):
    # one above the optimum, the regime where the demo loses parsimony
    for attempt in range(50):
        vc = generate_instance("VC", {"vertices": 3, "density": 0.6}, seed * 50 + attempt)
        if vc.payload.edges:
            return with_k(vc, vc.payload.k + 1)
    raise InvalidInstance("no VC draw with an edge")


def _entry(id, source, target, construct, claims, anchor, **kw) -> ReductionDef:
    return ReductionDef(id=id, source=source, target=target, construct=construct,
                        claims=claims, anchor=anchor, **kw)


REGISTRY: tuple[ReductionDef, ...] = (
    _entry("sat_to_tsat_naive", "SAT", "TSAT", satisfiability.sat_to_tsat_naive, SSP_ONLY,
           "recursive clause splitting without guards", has_lift=False, demo=True,
           sweep_params={"variables": 4, "clauses": 2, "max_len": 5}),
    _entry("sat_to_tsat", "SAT", "TSAT", satisfiability.sat_to_tsat, BOTH,
           "clause splitting with guard clauses",
           sweep_params={"variables": 4, "clauses": 3, "max_len": 5}),
    _entry("tsat_to_esat", "TSAT", "ESAT", satisfiability.tsat_to_esat, BOTH,
           "padding with a forced helper block", sweep_params={"variables": 3, "clauses": 3}),
    _entry("esat_to_osat", "ESAT", "OSAT", satisfiability.esat_to_osat, BOTH,
           "seven clauses over nine helpers per clause", sweep_params=_SAT),
    _entry("esat_to_mis", "ESAT", "MIS", gadgets.esat_to_mis, SSP_ONLY,
           "literal edges and clause triangles", has_lift=False, sweep_params=_SAT),
    _entry("esat_to_mvc", "ESAT", "MVC", gadgets.esat_to_mvc, SSP_ONLY,
           "literal edges and clause triangles", has_lift=False, sweep_params=_SAT),
    _entry("esat_to_mds", "ESAT", "MDS", gadgets.esat_to_mds, BOTH,
           "literal gadgets with two private vertices", sweep_params=_SAT),
    _entry("esat_to_cq", "ESAT", "CQ", gadgets.esat_to_cq, SPR_ONLY,
           "one vertex per clause-satisfying assignment", has_embedding=False,
           growth=None, sweep_params=_SAT),
    _entry("esat_to_ss", "ESAT", "SS", gadgets.esat_to_ss, BOTH,
           "base-2 digit encoding", sweep_params=_SAT),
    _entry("esat_to_dhp", "ESAT", "DHP", hamiltonian.esat_to_dhp, BOTH,
           "variable rows with one-way clause triangles", sweep_params=_SAT),
    _entry("esat_to_dhc", "ESAT", "DHC", hamiltonian.esat_to_dhc, BOTH,
           "variable rows with a closing arc", sweep_params=_SAT),
    _entry("osat_to_stt", "OSAT", "STT", gadgets.osat_to_stt, BOTH,
           "diamond chain with clause paths", sweep_params={"variables": 3, "clauses": 1}),
    _entry("osat_to_mvc", "OSAT", "MVC", gadgets.osat_to_mvc, BOTH,
           "literal edges and clause triangles", sweep_params={"variables": 4, "clauses": 2}),
    _entry("osat_to_mis", "OSAT", "MIS", gadgets.osat_to_mis, BOTH,
           "literal edges and clause triangles", sweep_params={"variables": 4, "clauses": 2}),
    _entry("osat_to_odm", "OSAT", "ODM", matching.osat_to_odm, BOTH,
           "occurrence wheels with singleton elements",
           sweep_params={"variables": 3, "clauses": 2}),
    _entry("odm_to_dm", "ODM", "DM", matching.odm_to_dm, BOTH,
           "three rotated copies with singleton triples", sweep_source=_odm_source),
    _entry("ss_to_ks", "SS", "KS", numbers.ss_to_ks, BOTH,
           "equal price and weight", sweep_params={"count": 6, "max_value": 9}),
    _entry("ss_to_p", "SS", "P", numbers.ss_to_p, BOTH,
           "two balancing numbers, the last one forced", sweep_params={"count": 6, "max_value": 9}),
    _entry("p_to_tms", "P", "TMS", numbers.p_to_tms, BOTH,
           "deadline at half the total", sweep_params={"count": 6, "max_value": 9}),
    _entry("mvc_to_mds", "MVC", "MDS", covers.mvc_to_mds, BOTH,
           "edge subdivisions and a pendant hub", sweep_params=_SMALL_GRAPH),
    _entry("mvc_to_sc", "MVC", "SC", covers.mvc_to_sc, BOTH,
           "vertex to its incident edges", sweep_params=_GRAPH),
    _entry("mvc_to_hs", "MVC", "HS", covers.mvc_to_hs, BOTH,
           "edge to its endpoint pair", sweep_params=_GRAPH),
    _entry("mvc_to_fvs", "MVC", "FVS", covers.mvc_to_fvs, BOTH,
           "edge to a 2-cycle", sweep_params=_GRAPH),
    _entry("mvc_to_fas", "MVC", "FAS", covers.mvc_to_fas, BOTH,
           "vertex arcs and parallel edge paths", sweep_params=_SMALL_GRAPH),
    _entry("mvc_to_ufl", "MVC", "UFL", covers.mvc_to_ufl, BOTH,
           "edges as clients, vertices as facilities", sweep_params=_GRAPH),
    _entry("mvc_to_pcen", "MVC", "PCEN", covers.mvc_to_pcen, BOTH,
           "edges as clients with p set to k", sweep_params=_GRAPH),
    _entry("mvc_to_pmed", "MVC", "PMED", covers.mvc_to_pmed, BOTH,
           "edges as clients with p set to k", sweep_params=_GRAPH),
    _entry("mvc_to_vcv", "MVC", "VCV", covers.mvc_to_vcv, BOTH,
           "an added fixed isolated vertex", sweep_params=_GRAPH),
    _entry("mis_to_mvc", "MIS", "MVC", complements.mis_to_mvc, SPR_ONLY,
           "complement of the vertex set", has_embedding=False, sweep_params=_GRAPH),
    _entry("mis_to_cq", "MIS", "CQ", complements.mis_to_cq, BOTH,
           "complement graph", sweep_params=_GRAPH),
    _entry("mis_to_sp", "MIS", "SP", complements.mis_to_sp, BOTH,
           "vertex to itself plus its incident edges", sweep_params=_GRAPH),
    _entry("sp_to_mis", "SP", "MIS", complements.sp_to_mis, BOTH,
           "set to vertex, overlaps to edges", sweep_params={"elements": 5, "sets": 5, "max_size": 3}),
    _entry("cq_to_mis", "CQ", "MIS", complements.cq_to_mis, BOTH,
           "complement graph", sweep_params=_GRAPH),
    _entry("cq_to_mvc", "CQ", "MVC", complements.cq_to_mvc, SPR_ONLY,
           "complement graph and complement vertex set", has_embedding=False,
           sweep_params=_GRAPH),
    _entry("dhc_to_uhc", "DHC", "UHC", hamiltonian.dhc_to_uhc, BOTH,
           "three-way vertex split", sweep_params={"vertices": 4, "density": 0.5}),
    _entry("dhp_to_uhp", "DHP", "UHP", hamiltonian.dhp_to_uhp, BOTH,
           "three-way vertex split", sweep_params={"vertices": 4, "density": 0.5}),
    _entry("uhc_to_tsp", "UHC", "TSP", hamiltonian.uhc_to_tsp, BOTH,
           "complete graph with 0/1 weights", sweep_params={"vertices": 5, "density": 0.6}),
    _entry("uhp_to_uhc", "UHP", "UHC", hamiltonian.uhp_to_uhc, BOTH,
           "a new vertex joined to both ends", sweep_params={"vertices": 5, "density": 0.6}),
    _entry("uhp_to_tsp", "UHP", "TSP", hamiltonian.uhp_to_tsp, BOTH,
           "complete graph plus a new vertex", sweep_params={"vertices": 5, "density": 0.6}),
    _entry("vc_to_ds_demo", "VC", "DS", covers.vc_to_ds_demo, SSP_ONLY,
           "edge subdivisions at a threshold", has_lift=False, demo=True,
           sweep_params={"vertices": 3, "density": 0.5}, sweep_source=_slack_vc_source),
)

_BY_ID = {r.id: r for r in REGISTRY}


def get_reduction(rid: str) -> ReductionDef:
    try:
        return _BY_ID[rid.lower()]
    except KeyError:
        raise InvalidInstance(f"unknown reduction {rid!r}") from None


def list_reductions(source: str | None = None, target: str | None = None,
                    ssp: bool | None = None, spr: bool | None = None,
                    include_demo: bool = True) -> list[ReductionDef]:
    """Registry entries matching every given filter, in registry order."""
    src = get_problem(source).id if source else None
    tgt = get_problem(target).id if target else None
    out = []
    for r in REGISTRY:
        if src and r.source != src or tgt and r.target != tgt:
            continue
        if ssp is not None and r.claims.ssp != ssp:
            continue
        if spr is not None and r.claims.spr != spr:
            continue
        if r.demo and not include_demo:
            continue
        out.append(r)
    return out


__all__ = [
    "BOTH", "Built", "ClaimFlags", "REGISTRY", "ReductionDef", "SPR_ONLY", "SSP_ONLY",
    "apply_reduction", "embed_element", "embed_mask", "embedding", "encoding_size",
    "get_reduction", "lift_solution", "list_reductions", "raw_lift", "raw_unlift",
    "unlift_solution",
]
