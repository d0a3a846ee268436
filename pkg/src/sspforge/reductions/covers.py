"""Reductions out of (minimum) vertex cover, plus the threshold demonstration."""

from __future__ import annotations

from ..core import Instance, arc, facility, obj, setidx, vertex
from ..problems import DigraphK, FacilityPayload, GraphK, SetFamily, VCVPayload
from .base import Built, target
from .gadgets import GraphBuilder
from .satisfiability import Names


def _identity_vertices(p: GraphK) -> dict:
    return {vertex(v): vertex(v) for v in p.vertices}


def _dominating_gadget(p: GraphK, per_edge: int, hub: bool) -> tuple[GraphBuilder, dict]:
    g = GraphBuilder()
    for v in p.vertices:
        g.add(v)
    for u, v in p.edges:
        g.link(p.vertices[u], p.vertices[v])
    if hub:
        iso = g.add("v_iso")
        degree = [0] * len(p.vertices)
        for u, v in p.edges:
            degree[u] += 1
            degree[v] += 1
        for v, d in zip(p.vertices, degree):
            if d == 0:
                g.link(v, iso)
        for i in range(1, p.k + 3):
            g.link(iso, g.add(f"v_iso^{i}"))
    for u, v in p.edges:
        a, b = p.vertices[u], p.vertices[v]
        for i in range(1, per_edge + 1):
            w = g.add(f"{a}{b}_{i}")
            g.link(a, w)
            g.link(b, w)
    return g, _identity_vertices(p)


def mvc_to_mds(inst: Instance) -> Built:
    p = inst.payload
    g, emb = _dominating_gadget(p, p.k + 1, hub=True)
    out = target("MDS", g.graph(p.k + 1))
    iso = vertex(g.vertices[len(p.vertices)])
    return Built(inst, out, emb, lambda members: list(members) + [iso])


def vc_to_ds_demo(inst: Instance) -> Built:
    p = inst.payload
    degree = [0] * len(p.vertices)
    for u, v in p.edges:
        degree[u] += 1
        degree[v] += 1
    hub = 0 in degree
    g, emb = _dominating_gadget(p, p.k + 1, hub=hub)
    out = target("DS", g.graph(p.k + 1 if hub else p.k))
    extra = [vertex(g.vertices[len(p.vertices)])] if hub else []
    return Built(inst, out, emb, lambda members: list(members) + extra)


def mvc_to_sc(inst: Instance) -> Built:
    p = inst.payload
    names = tuple(f"e{i + 1}" for i in range(len(p.edges)))
    sets = tuple(tuple(i for i, e in enumerate(p.edges) if v in e)
                 for v in range(len(p.vertices)))
    out = target("SC", SetFamily(names, sets, p.k, exact=True))
    emb = {vertex(v): setidx(i) for i, v in enumerate(p.vertices)}
    return Built(inst, out, emb, lambda members: [emb[x] for x in members])


def mvc_to_hs(inst: Instance) -> Built:
    p = inst.payload
    out = target("HS", SetFamily(p.vertices, tuple(p.edges), p.k, exact=True))
    emb = {vertex(v): obj(v) for v in p.vertices}
    return Built(inst, out, emb, lambda members: [emb[x] for x in members])


def mvc_to_fvs(inst: Instance) -> Built:
    p = inst.payload
    arcs = []
    for u, v in p.edges:
        arcs += [(u, v), (v, u)]
    out = target("FVS", DigraphK(p.vertices, tuple(arcs), p.k))
    return Built(inst, out, _identity_vertices(p), lambda members: list(members))


def mvc_to_fas(inst: Instance) -> Built:
    p = inst.payload
    n = len(p.vertices)
    names = Names(())
    vertices: list[str] = []
    index: dict[str, int] = {}

    def add(base):
        name = names(base)
        index[name] = len(vertices)
        vertices.append(name)
        return name

    ends = [(add(f"{v}.0"), add(f"{v}.1")) for v in p.vertices]
    arcs = [(index[a], index[b]) for a, b in ends]
    for u, v in p.edges:
        for a, b in ((u, v), (v, u)):
            for i in range(1, n + 2):
                mid = add(f"{p.vertices[a]}{p.vertices[b]}_{i}")
                arcs.append((index[ends[a][1]], index[mid]))
                arcs.append((index[mid], index[ends[b][0]]))
    out = target("FAS", DigraphK(tuple(vertices), tuple(arcs), p.k))
    emb = {vertex(v): arc(*ends[i]) for i, v in enumerate(p.vertices)}
    return Built(inst, out, emb, lambda members: [emb[x] for x in members])


def _cost_matrix(p: GraphK) -> tuple:
    far = len(p.vertices) + 1
    return tuple(tuple(0 if f in e else far for f in range(len(p.vertices)))
                 for e in p.edges)


def _facility(inst: Instance, kind: str) -> Built:
    p = inst.payload
    clients = tuple(f"e{i + 1}" for i in range(len(p.edges)))
    if kind == "UFL":
        payload = FacilityPayload(p.vertices, clients, (1,) * len(p.vertices),
                                  _cost_matrix(p), p.k)
    else:
        payload = FacilityPayload(p.vertices, clients, (), _cost_matrix(p), 0, p.k)
    out = target(kind, payload)
    emb = {vertex(v): facility(v) for v in p.vertices}
    return Built(inst, out, emb, lambda members: [emb[x] for x in members])


def mvc_to_ufl(inst: Instance) -> Built:
    return _facility(inst, "UFL")


def mvc_to_pcen(inst: Instance) -> Built:
    return _facility(inst, "PCEN")


def mvc_to_pmed(inst: Instance) -> Built:
    return _facility(inst, "PMED")


def mvc_to_vcv(inst: Instance) -> Built:
    p = inst.payload
    new = Names(p.vertices)("v_all")
    out = target("VCV", VCVPayload(p.vertices + (new,), p.edges, p.k + 1, len(p.vertices)))
    return Built(inst, out, _identity_vertices(p),
                 lambda members: list(members) + [vertex(new)])
