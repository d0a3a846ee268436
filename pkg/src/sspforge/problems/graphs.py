"""Vertex-set problems on graphs and the two directed feedback-set problems."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from ..core import Budget, InvalidInstance, Payload, arc, bit_indices, popcount, vertex
from .base import (
    ProblemDef, check_int, check_names, check_pairs, cliques_of_size,
    hitting_sets, pick_constraint, random_pairs, register, vertex_names,
)


@dataclass(frozen=True)
class GraphK(Payload):
    vertices: tuple = ()
    edges: tuple = ()  # sorted index pairs
    k: int = 0

    def adjacency(self) -> list[int]:
        def build():
            adj = [0] * len(self.vertices)
            for u, v in self.edges:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
            return adj
        return self.cached("adj", build)


@dataclass(frozen=True)
class VCVPayload(GraphK):
    fixed: int = 0


@dataclass(frozen=True)
class DigraphK(Payload):
    vertices: tuple = ()
    arcs: tuple = ()  # ordered index pairs
    k: int = 0

    def successors(self) -> list[list[int]]:
        def build():
            succ = [[] for _ in self.vertices]
            for u, v in self.arcs:
                succ[u].append(v)
            return succ
        return self.cached("succ", build)


def _validate_graph(p: GraphK) -> None:
    check_names(p.vertices, "vertices")
    check_pairs(p.edges, len(p.vertices), "edges", directed=False)
    check_int(p.k, "k")


def _validate_vcv(p: VCVPayload) -> None:
    _validate_graph(p)
    if not isinstance(p.fixed, int) or not 0 <= p.fixed < len(p.vertices):
        raise InvalidInstance("fixed vertex out of range", "fixed")


def _validate_digraph(p: DigraphK) -> None:
    check_names(p.vertices, "vertices")
    check_pairs(p.arcs, len(p.vertices), "arcs", directed=True)
    check_int(p.k, "k")


def _vertex_universe(p) -> list:
    return [vertex(v) for v in p.vertices]


def _arc_universe(p: DigraphK) -> list:
    return [arc(p.vertices[u], p.vertices[v]) for u, v in p.arcs]


def _edge_masks(p: GraphK) -> list[int]:
    return p.cached("edge_masks", lambda: [1 << u | 1 << v for u, v in p.edges])


def _closed_nbhd(p: GraphK) -> list[int]:
    adj = p.adjacency()
    return p.cached("closed", lambda: [adj[v] | 1 << v for v in range(len(adj))])


def is_cover(p: GraphK, mask: int) -> bool:
    return all(mask & e for e in _edge_masks(p))


def is_dominating(p: GraphK, mask: int) -> bool:
    return all(mask & n for n in _closed_nbhd(p))


def is_independent(p: GraphK, mask: int) -> bool:
    adj = p.adjacency()
    return all(not adj[v] & mask for v in bit_indices(mask))


def is_clique(p: GraphK, mask: int) -> bool:
    adj = p.adjacency()
    return all((mask & ~(1 << v)) & ~adj[v] == 0 for v in bit_indices(mask))


# ---------------------------------------------------------------- cycles

def _acyclic(n: int, arcs: list[tuple[int, int]]) -> bool:
    indeg = [0] * n
    succ = [[] for _ in range(n)]
    for u, v in arcs:
        succ[u].append(v)
        indeg[v] += 1
    queue = deque(i for i in range(n) if indeg[i] == 0)
    seen = 0
    while queue:
        u = queue.popleft()
        seen += 1
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return seen == n


def _shortest_cycles(n: int, arcs: list[tuple[int, int, int]]):
    """Yield (vertex_mask, arc_mask) of a shortest cycle through each vertex.

    `arcs` carries (u, v, arc_bit).
    """
    succ = [[] for _ in range(n)]
    for u, v, b in arcs:
        succ[u].append((v, b))
    for s in range(n):
        parent = {s: None}
        queue = deque([s])
        closing = None
        while queue and closing is None:
            u = queue.popleft()
            for v, b in succ[u]:
                if v == s:
                    closing = (u, b)
                    break
                if v not in parent:
                    parent[v] = (u, b)
                    queue.append(v)
        if closing is None:
            continue
        vmask = 1 << s
        amask = 1 << closing[1]
        u = closing[0]
        while u != s:
            vmask |= 1 << u
            pu, b = parent[u]
            amask |= 1 << b
            u = pu
        yield vmask, amask


def _fvs_violation(p: DigraphK):
    n = len(p.vertices)
    arcs = [(u, v, i) for i, (u, v) in enumerate(p.arcs)]

    def violation(chosen: int, forbidden: int):
        live = [(u, v, b) for u, v, b in arcs if not (chosen >> u & 1 or chosen >> v & 1)]
        return pick_constraint((vm for vm, _ in _shortest_cycles(n, live)), chosen, forbidden)

    return violation


def _fas_violation(p: DigraphK):
    n = len(p.vertices)
    arcs = [(u, v, i) for i, (u, v) in enumerate(p.arcs)]

    def violation(chosen: int, forbidden: int):
        live = [a for a in arcs if not chosen >> a[2] & 1]
        return pick_constraint((am for _, am in _shortest_cycles(n, live)), chosen, forbidden)

    return violation


def _verify_fvs(p: DigraphK, mask: int) -> bool:
    if popcount(mask) != p.k:
        return False
    live = [(u, v) for u, v in p.arcs if not (mask >> u & 1 or mask >> v & 1)]
    return _acyclic(len(p.vertices), live)


def _verify_fas(p: DigraphK, mask: int) -> bool:
    if popcount(mask) != p.k:
        return False
    live = [a for i, a in enumerate(p.arcs) if not mask >> i & 1]
    return _acyclic(len(p.vertices), live)


# ---------------------------------------------------------------- enumerators

def _enum_cover(p: GraphK, budget: Budget, exact: bool):
    edges = _edge_masks(p)
    return hitting_sets(len(p.vertices),
                        lambda c, f: pick_constraint(edges, c, f),
                        p.k, exact, budget)


def _enum_dominating(p: GraphK, budget: Budget, exact: bool):
    nbhd = _closed_nbhd(p)
    return hitting_sets(len(p.vertices),
                        lambda c, f: pick_constraint(nbhd, c, f),
                        p.k, exact, budget)


def _enum_vcv(p: VCVPayload, budget: Budget):
    cons = [1 << p.fixed] + _edge_masks(p)
    return hitting_sets(len(p.vertices),
                        lambda c, f: pick_constraint(cons, c, f),
                        p.k, True, budget)


def _enum_mis(p: GraphK, budget: Budget):
    n = len(p.vertices)
    full = (1 << n) - 1
    adj = p.adjacency()
    co = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    return cliques_of_size(n, co, p.k, budget)


def _enum_cq(p: GraphK, budget: Budget):
    return cliques_of_size(len(p.vertices), p.adjacency(), p.k, budget)


# ---------------------------------------------------------------- generators

def _gen_graph(params: dict, rng: random.Random) -> GraphK:
    n = params["vertices"]
    return GraphK(vertex_names(n), random_pairs(rng, n, params["density"], False), 0)


def _gen_vcv(params: dict, rng: random.Random) -> VCVPayload:
    g = _gen_graph(params, rng)
    if not g.vertices:
        return None
    return VCVPayload(g.vertices, g.edges, 0, rng.randrange(len(g.vertices)))


def _gen_digraph(params: dict, rng: random.Random) -> DigraphK:
    n = params["vertices"]
    return DigraphK(vertex_names(n), random_pairs(rng, n, params["density"], True), 0)


_GRAPH = {"vertices": 5, "density": 0.5}
_DIGRAPH = {"vertices": 4, "density": 0.35}


def _def(pid, title, ptype, universe, validate, verify, enum, gen, defaults, optimum):
    return register(ProblemDef(
        id=pid, title=title, payload_type=ptype, universe=universe,
        validate=validate, verify=verify, enumerate=enum, generate=gen,
        default_params=defaults, optimum=optimum,
    ))


_def("VC", "Vertex Cover", GraphK, _vertex_universe, _validate_graph,
     lambda p, m: popcount(m) <= p.k and is_cover(p, m),
     lambda p, b: _enum_cover(p, b, False), _gen_graph, _GRAPH, "min")
_def("MVC", "Minimum Vertex Cover", GraphK, _vertex_universe, _validate_graph,
     lambda p, m: popcount(m) == p.k and is_cover(p, m),
     lambda p, b: _enum_cover(p, b, True), _gen_graph, _GRAPH, "min")
_def("DS", "Dominating Set", GraphK, _vertex_universe, _validate_graph,
     lambda p, m: popcount(m) <= p.k and is_dominating(p, m),
     lambda p, b: _enum_dominating(p, b, False), _gen_graph, _GRAPH, "min")
_def("MDS", "Minimum Dominating Set", GraphK, _vertex_universe, _validate_graph,
     lambda p, m: popcount(m) == p.k and is_dominating(p, m),
     lambda p, b: _enum_dominating(p, b, True), _gen_graph, _GRAPH, "min")
_def("MIS", "Maximum Independent Set", GraphK, _vertex_universe, _validate_graph,
     lambda p, m: popcount(m) == p.k and is_independent(p, m),
     _enum_mis, _gen_graph, _GRAPH, "max")
_def("CQ", "Clique", GraphK, _vertex_universe, _validate_graph,
     lambda p, m: popcount(m) == p.k and is_clique(p, m),
     _enum_cq, _gen_graph, _GRAPH, "max")
_def("VCV", "Vertex Cover through a fixed Vertex", VCVPayload, _vertex_universe,
     _validate_vcv,
     lambda p, m: popcount(m) == p.k and bool(m >> p.fixed & 1) and is_cover(p, m),
     _enum_vcv, _gen_vcv, _GRAPH, "min")
_def("FVS", "Feedback Vertex Set", DigraphK, _vertex_universe, _validate_digraph,
     _verify_fvs,
     lambda p, b: hitting_sets(len(p.vertices), _fvs_violation(p), p.k, True, b),
     _gen_digraph, _DIGRAPH, "min")
_def("FAS", "Feedback Arc Set", DigraphK, _arc_universe, _validate_digraph,
     _verify_fas,
     lambda p, b: hitting_sets(len(p.arcs), _fas_violation(p), p.k, True, b),
     _gen_digraph, _DIGRAPH, "min")
