"""Hamiltonian paths and cycles, directed and undirected, plus TSP."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..core import Budget, InvalidInstance, Payload, arc, bit_indices, edge, popcount
from .base import ProblemDef, check_int, check_names, check_pairs, register, vertex_names


@dataclass(frozen=True)
class HamPayload(Payload):
    vertices: tuple = ()
    links: tuple = ()  # arcs for DHP/DHC, sorted edges for UHP/UHC
    s: int | None = None
    t: int | None = None


@dataclass(frozen=True)
class TSPPayload(Payload):
    vertices: tuple = ()
    edges: tuple = ()
    weights: tuple = ()
    k: int = 0


def _validate(p: HamPayload, directed: bool, path: bool) -> None:
    check_names(p.vertices, "vertices")
    n = len(p.vertices)
    check_pairs(p.links, n, "arcs" if directed else "edges", directed)
    if path:
        for name in ("s", "t"):
            x = getattr(p, name)
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise InvalidInstance("endpoint out of range", name)
        if p.s == p.t:
            raise InvalidInstance("path endpoints must differ", "t")
    elif p.s is not None or p.t is not None:
        raise InvalidInstance("cycle instances carry no endpoints", "s")


def _validate_tsp(p: TSPPayload) -> None:
    check_names(p.vertices, "vertices")
    check_pairs(p.edges, len(p.vertices), "edges", directed=False)
    if not isinstance(p.weights, tuple) or len(p.weights) != len(p.edges):
        raise InvalidInstance("one weight per edge is required", "weights")
    for i, w in enumerate(p.weights):
        check_int(w, f"weights[{i}]")
    check_int(p.k, "k")


# ---------------------------------------------------------------- verification

def _connected(n: int, links: list[tuple[int, int]]) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in links:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(n)}) == 1


def _degrees(n: int, links, directed: bool):
    out = [0] * n
    inn = [0] * n
    for u, v in links:
        out[u] += 1
        inn[v] += 1
    if directed:
        return inn, out
    return [a + b for a, b in zip(inn, out)], None


def is_ham_cycle(n: int, links: list[tuple[int, int]], directed: bool) -> bool:
    if n < (2 if directed else 3) or len(links) != n:
        return False
    a, b = _degrees(n, links, directed)
    if directed:
        if any(x != 1 for x in a) or any(x != 1 for x in b):
            return False
    elif any(x != 2 for x in a):
        return False
    # degree-regular and connected means a single cycle
    return _connected(n, links)


def is_ham_path(n: int, links: list[tuple[int, int]], directed: bool, s: int, t: int) -> bool:
    if n < 2 or len(links) != n - 1:
        return False
    a, b = _degrees(n, links, directed)
    if directed:
        for v in range(n):
            want_in = 0 if v == s else 1
            want_out = 0 if v == t else 1
            if a[v] != want_in or b[v] != want_out:
                return False
    else:
        for v in range(n):
            if a[v] != (1 if v in (s, t) else 2):
                return False
    # with these degrees, connectivity rules out extra cycles
    return _connected(n, links)


def _chosen(links, mask: int) -> list:
    return [links[i] for i in bit_indices(mask)]


# ---------------------------------------------------------------- enumeration

def hamiltonian(n: int, links, directed: bool, budget: Budget,
                s: int | None = None, t: int | None = None,
                weights=None, bound: int | None = None):
    """Masks of Hamiltonian cycles (s is None) or s-t paths over `links`.

    Cycles start at vertex 0; undirected cycles are emitted in one
    orientation only.  Optional `weights`/`bound` prune by total weight.
    """
    cycle = s is None
    if cycle and n < (2 if directed else 3):
        return
    if not cycle and n < 2:
        return
    out = [[] for _ in range(n)]
    inn = [0] * n
    nbr = [0] * n
    for i, (u, v) in enumerate(links):
        w = weights[i] if weights is not None else 0
        out[u].append((v, i, w))
        inn[v] |= 1 << u
        nbr[u] |= 1 << v
        if not directed:
            out[v].append((u, i, w))
            inn[u] |= 1 << v
            nbr[v] |= 1 << u
    start = 0 if cycle else s
    full = (1 << n) - 1
    closing = {}
    if cycle:
        for v, i, w in out[start] if not directed else []:
            closing[v] = (i, w)
        if directed:
            for u in range(n):
                for v, i, w in out[u]:
                    if v == start:
                        closing[u] = (i, w)

    def feasible(visited: int, cur: int) -> bool:
        rest = full & ~visited
        for w in bit_indices(rest):
            if directed:
                if not inn[w] & (rest | 1 << cur):
                    return False
                tail = start if cycle else -1
                if w != t and not nbr[w] & (rest | (1 << tail if tail >= 0 else 0)):
                    return False
            else:
                ends = 1 << cur | (1 << start if cycle else 0)
                need = 1 if (not cycle and w == t) else 2
                if popcount(nbr[w] & (rest | ends) & ~(1 << w)) < need:
                    return False
        return True

    path = [start]

    def rec(cur: int, visited: int, mask: int, weight: int, depth: int):
        budget.tick()
        if bound is not None and weight > bound:
            return
        if depth == n:
            if cycle:
                if cur not in closing:
                    return
                i, w = closing[cur]
                if bound is not None and weight + w > bound:
                    return
                if not directed and path[1] > path[-1]:
                    return
                yield mask | 1 << i
            elif cur == t:
                yield mask
            return
        if not feasible(visited, cur):
            return
        for v, i, w in out[cur]:
            if visited >> v & 1:
                continue
            if not cycle and v == t and depth != n - 1:
                continue
            path.append(v)
            yield from rec(v, visited | 1 << v, mask | 1 << i, weight + w, depth + 1)
            path.pop()

    yield from rec(start, 1 << start, 0, 0, 1)


# ---------------------------------------------------------------- generators

def _planted(rng: random.Random, n: int, density: float, directed: bool, path: bool):
    links = set()
    for a in range(n):
        for b in range(n):
            if a != b and (directed or a < b) and rng.random() < density:
                links.add((a, b))
    perm = list(range(n))
    rng.shuffle(perm)
    if rng.random() < 0.5:
        seq = perm + ([] if path else [perm[0]])
        for a, b in zip(seq, seq[1:]):
            links.add((a, b) if directed else (min(a, b), max(a, b)))
    return tuple(sorted(links)), perm


def _gen(params: dict, rng: random.Random, directed: bool, path: bool):
    n = params["vertices"]
    if n < (2 if path or directed else 3):
        return None
    links, perm = _planted(rng, n, params["density"], directed, path)
    if path:
        return HamPayload(vertex_names(n), links, perm[0], perm[-1])
    return HamPayload(vertex_names(n), links)


def _gen_tsp(params: dict, rng: random.Random):
    n = params["vertices"]
    if n < 3:
        return None
    links, perm = _planted(rng, n, params["density"], False, False)
    weights = tuple(rng.randint(0, params["max_weight"]) for _ in links)
    return TSPPayload(vertex_names(n), links, weights, rng.randint(0, params["max_weight"] * n))


def _universe(p: HamPayload, directed: bool) -> list:
    names = p.vertices
    make = arc if directed else edge
    return [make(names[u], names[v]) for u, v in p.links]


def _ham_def(pid: str, title: str, directed: bool, path: bool):
    def verify(p: HamPayload, mask: int) -> bool:
        chosen = _chosen(p.links, mask)
        n = len(p.vertices)
        if path:
            return is_ham_path(n, chosen, directed, p.s, p.t)
        return is_ham_cycle(n, chosen, directed)

    register(ProblemDef(
        id=pid, title=title, payload_type=HamPayload,
        universe=lambda p: _universe(p, directed),
        validate=lambda p: _validate(p, directed, path),
        verify=verify,
        enumerate=lambda p, b: hamiltonian(
            len(p.vertices), p.links, directed, b,
            p.s if path else None, p.t if path else None),
        generate=lambda params, rng: _gen(params, rng, directed, path),
        default_params={"vertices": 5, "density": 0.4},
    ))


_ham_def("DHP", "Directed Hamiltonian Path", True, True)
_ham_def("DHC", "Directed Hamiltonian Cycle", True, False)
_ham_def("UHP", "Undirected Hamiltonian Path", False, True)
_ham_def("UHC", "Undirected Hamiltonian Cycle", False, False)


def _verify_tsp(p: TSPPayload, mask: int) -> bool:
    chosen = _chosen(p.edges, mask)
    if not is_ham_cycle(len(p.vertices), chosen, False):
        return False
    return sum(p.weights[i] for i in bit_indices(mask)) <= p.k


register(ProblemDef(
    id="TSP", title="Traveling Salesman", payload_type=TSPPayload,
    universe=lambda p: [edge(p.vertices[u], p.vertices[v]) for u, v in p.edges],
    validate=_validate_tsp, verify=_verify_tsp,
    enumerate=lambda p, b: hamiltonian(len(p.vertices), p.edges, False, b,
                                       weights=p.weights, bound=p.k),
    generate=_gen_tsp,
    default_params={"vertices": 5, "density": 0.6, "max_weight": 3},
))
