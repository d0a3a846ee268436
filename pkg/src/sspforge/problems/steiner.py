"""Steiner Tree with a total-weight threshold."""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass

from ..core import Budget, InvalidInstance, Payload, bit_indices, edge
from .base import ProblemDef, check_int, check_names, check_pairs, register, vertex_names


@dataclass(frozen=True)
class SteinerPayload(Payload):
    vertices: tuple = ()
    edges: tuple = ()
    weights: tuple = ()
    terminals: tuple = ()  # vertex indices
    k: int = 0


def _validate(p: SteinerPayload) -> None:
    check_names(p.vertices, "vertices")
    n = len(p.vertices)
    check_pairs(p.edges, n, "edges", directed=False)
    if not isinstance(p.weights, tuple) or len(p.weights) != len(p.edges):
        raise InvalidInstance("one weight per edge is required", "weights")
    for i, w in enumerate(p.weights):
        check_int(w, f"weights[{i}]")
    if not isinstance(p.terminals, tuple):
        raise InvalidInstance("terminals must be a tuple", "terminals")
    for i, x in enumerate(p.terminals):
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
            raise InvalidInstance("terminal out of range", f"terminals[{i}]")
    if len(set(p.terminals)) != len(p.terminals):
        raise InvalidInstance("duplicate terminal", "terminals")
    check_int(p.k, "k")


def is_steiner_tree(p: SteinerPayload, mask: int) -> bool:
    chosen = [p.edges[i] for i in bit_indices(mask)]
    if sum(p.weights[i] for i in bit_indices(mask)) > p.k:
        return False
    if not chosen:
        return len(p.terminals) <= 1
    touched = {x for e in chosen for x in e}
    if len(chosen) != len(touched) - 1:
        return False
    if any(t not in touched for t in p.terminals):
        return False
    # |E| = |V| - 1 plus connected means a tree
    parent = {x: x for x in touched}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in chosen:
        parent[find(u)] = find(v)
    return len({find(x) for x in touched}) == 1


def _enumerate(p: SteinerPayload, budget: Budget):
    """Grow trees from the first terminal by branching on frontier edges.

    Each subtree is emitted at the unique leaf where every boundary edge has
    been excluded.  A Dijkstra bound from the current tree to the farthest
    missing terminal prunes branches that cannot stay within k.
    """
    n = len(p.vertices)
    budget.tick()
    if len(p.terminals) <= 1:
        # the empty edge set is the one-vertex tree
        yield 0
    if not p.terminals:
        return
    inc = [[] for _ in range(n)]
    for i, (u, v) in enumerate(p.edges):
        inc[u].append((i, v))
        inc[v].append((i, u))
    terminals = p.terminals
    root = terminals[0]

    def lower_bound(tree: int, excluded: int, weight: int) -> bool:
        missing = [x for x in terminals if not tree >> x & 1]
        if not missing:
            return True
        dist = [None] * n
        heap = [(0, x) for x in bit_indices(tree)]
        for _, x in heap:
            dist[x] = 0
        heapq.heapify(heap)
        while heap:
            d, x = heapq.heappop(heap)
            if d > dist[x]:
                continue
            for i, y in inc[x]:
                if excluded >> i & 1:
                    continue
                nd = d + p.weights[i]
                if dist[y] is None or nd < dist[y]:
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
        worst = 0
        for x in missing:
            if dist[x] is None:
                return False
            worst = max(worst, dist[x])
        return weight + worst <= p.k

    def frontier(tree: int, excluded: int):
        for x in bit_indices(tree):
            for i, y in inc[x]:
                if not excluded >> i & 1 and not tree >> y & 1:
                    return i, y
        return None

    def rec(tree: int, mask: int, excluded: int, weight: int):
        budget.tick()
        if weight > p.k or not lower_bound(tree, excluded, weight):
            return
        f = frontier(tree, excluded)
        if f is None:
            if all(tree >> x & 1 for x in terminals) and mask:
                yield mask
            return
        i, y = f
        yield from rec(tree | 1 << y, mask | 1 << i, excluded, weight + p.weights[i])
        yield from rec(tree, mask, excluded | 1 << i, weight)

    yield from rec(1 << root, 0, 0, 0)


def _gen(params: dict, rng: random.Random):
    n = params["vertices"]
    if n < 2:
        return None
    links = set()
    order = list(range(n))
    rng.shuffle(order)
    for a, b in zip(order, order[1:]):
        links.add((min(a, b), max(a, b)))
    for a in range(n):
        for b in range(a + 1, n):
            if rng.random() < params["density"]:
                links.add((a, b))
    links = tuple(sorted(links))
    weights = tuple(rng.randint(1, params["max_weight"]) for _ in links)
    terms = tuple(sorted(rng.sample(range(n), min(n, params["terminals"]))))
    return SteinerPayload(vertex_names(n), links, weights, terms,
                          rng.randint(1, params["max_weight"] * (n - 1)))


register(ProblemDef(
    id="STT", title="Steiner Tree", payload_type=SteinerPayload,
    universe=lambda p: [edge(p.vertices[u], p.vertices[v]) for u, v in p.edges],
    validate=_validate, verify=is_steiner_tree, enumerate=_enumerate,
    generate=_gen,
    default_params={"vertices": 5, "density": 0.3, "terminals": 3, "max_weight": 3},
))
