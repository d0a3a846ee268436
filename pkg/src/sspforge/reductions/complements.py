"""Independent set, clique, vertex cover and set packing via complements and overlaps."""

from __future__ import annotations

from ..core import Instance, setidx, vertex
from ..problems import GraphK, SetFamily
from .base import Built, target
from .satisfiability import Names


def _complement_edges(p: GraphK) -> tuple:
    n = len(p.vertices)
    present = set(p.edges)
    return tuple((a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in present)


def _identity(p: GraphK) -> dict:
    return {vertex(v): vertex(v) for v in p.vertices}


def _complement_lift(p: GraphK):
    everything = {vertex(v) for v in p.vertices}

    def flip(members):
        return everything - set(members)
    return flip


def mis_to_mvc(inst: Instance) -> Built:
    p = inst.payload
    out = target("MVC", GraphK(p.vertices, p.edges, len(p.vertices) - p.k))
    flip = _complement_lift(p)
    return Built(inst, out, None, flip, flip)


def cq_to_mvc(inst: Instance) -> Built:
    p = inst.payload
    out = target("MVC", GraphK(p.vertices, _complement_edges(p), len(p.vertices) - p.k))
    flip = _complement_lift(p)
    return Built(inst, out, None, flip, flip)


def mis_to_cq(inst: Instance) -> Built:
    p = inst.payload
    out = target("CQ", GraphK(p.vertices, _complement_edges(p), p.k))
    return Built(inst, out, _identity(p), lambda members: list(members))


def cq_to_mis(inst: Instance) -> Built:
    p = inst.payload
    out = target("MIS", GraphK(p.vertices, _complement_edges(p), p.k))
    return Built(inst, out, _identity(p), lambda members: list(members))


def mis_to_sp(inst: Instance) -> Built:
    p = inst.payload
    n = len(p.vertices)
    names = Names(p.vertices)
    elements = p.vertices + tuple(names(f"{p.vertices[u]}-{p.vertices[v]}") for u, v in p.edges)
    sets = []
    for v in range(n):
        sets.append((v,) + tuple(n + i for i, e in enumerate(p.edges) if v in e))
    out = target("SP", SetFamily(elements, tuple(sets), p.k))
    emb = {vertex(v): setidx(i) for i, v in enumerate(p.vertices)}
    return Built(inst, out, emb, lambda members: [emb[x] for x in members])


def sp_to_mis(inst: Instance) -> Built:
    p = inst.payload
    masks = p.set_masks()
    names = tuple(f"S{i + 1}" for i in range(len(p.sets)))
    edges = tuple((a, b) for a in range(len(masks)) for b in range(a + 1, len(masks))
                  if masks[a] & masks[b])
    out = target("MIS", GraphK(names, edges, p.k))
    emb = {setidx(i): vertex(v) for i, v in enumerate(names)}
    return Built(inst, out, emb, lambda members: [emb[x] for x in members])
