"""Hamiltonian path and cycle reductions, including the adjusted E3SAT gadget."""

from __future__ import annotations

from ..core import Instance, arc, edge, lit
from ..problems import HamPayload, TSPPayload
from .base import Built, require, target
from .satisfiability import Names, literal_value, true_values


class DigraphBuilder:
    def __init__(self):
        self.names = Names(())
        self.vertices: list[str] = []
        self.index: dict[str, int] = {}
        self.arcs: dict[tuple, None] = {}

    def add(self, base: str) -> str:
        name = self.names(base)
        self.index[name] = len(self.vertices)
        self.vertices.append(name)
        return name

    def link(self, a: str, b: str) -> None:
        self.arcs.setdefault((self.index[a], self.index[b]), None)


# ---------------------------------------------------------------- E3SAT -> DHP / DHC

def _esat_gadget(inst: Instance, closing: bool) -> Built:
    p = inst.payload
    n, m = len(p.variables), len(p.clauses)
    require(m >= 1, "the Hamiltonian gadget needs at least one clause")
    width = 4 * m
    g = DigraphBuilder()
    s = g.add("s")
    x = [[g.add(f"{v}^{k}") for k in range(1, width + 1)] for v in p.variables]
    # one connector between consecutive rows keeps every row in one piece
    joints = [s] + [g.add(f"v{i}") for i in range(1, n)]
    c = [[g.add(f"c{j}^{q}") for q in (1, 2, 3)] for j in range(1, m + 1)]
    t = g.add("t")

    # per (variable, clause): (position in clause, literal, in vertex, out vertex)
    detours: dict[tuple, tuple] = {}
    dropped = set()
    for j, clause in enumerate(p.clauses, start=1):
        for q, lit_id in enumerate(clause):
            i = abs(lit_id) - 1
            lo, hi = x[i][4 * j - 3], x[i][4 * j - 2]  # x^{4j-2}, x^{4j-1}
            a, b = (lo, hi) if lit_id > 0 else (hi, lo)
            detours[i, j - 1] = (q, lit_id, a, b)
            dropped.add((a, b))

    for row in x:
        for k in range(width - 1):
            for a, b in ((row[k], row[k + 1]), (row[k + 1], row[k])):
                if (a, b) not in dropped:
                    g.link(a, b)
    ends = joints[1:] + [t]
    for i, row in enumerate(x):
        for e in (row[0], row[-1]):
            g.link(joints[i], e)
            g.link(e, ends[i])
    # clause vertices form a one-way chain; a tour enters at its own vertex or
    # at the head, and may leave to its own row from its vertex or any later one
    for chain in c:
        g.link(chain[0], chain[1])
        g.link(chain[1], chain[2])
    for (i, j), (q, _, a, b) in sorted(detours.items(), key=lambda kv: (kv[0][1], kv[1][0])):
        g.link(a, c[j][q])
        g.link(a, c[j][0])
        for r in range(q, 3):
            g.link(c[j][r], b)
    if closing:
        g.link(t, s)

    links = tuple(g.arcs)
    idx = g.index
    if closing:
        payload = HamPayload(tuple(g.vertices), links)
        out = target("DHC", payload)
    else:
        payload = HamPayload(tuple(g.vertices), links, idx[s], idx[t])
        out = target("DHP", payload)

    emb = {}
    for i, v in enumerate(p.variables):
        emb[lit(v, True)] = arc(x[i][0], x[i][1])
        emb[lit(v, False)] = arc(x[i][1], x[i][0])

    def lift(members):
        values = true_values(p, members)
        seq = []
        for i, val in enumerate(values):
            seq.append(joints[i])
            walk = x[i] if val else x[i][::-1]
            entry = {}
            for j, clause in enumerate(p.clauses):
                d = detours.get((i, j))
                if d is None or not literal_value(values, d[1]):
                    continue
                true_at = [q for q, y in enumerate(clause) if literal_value(values, y)]
                q = d[0]
                rank = true_at.index(q)
                start = 0 if rank == 0 else q
                stop = true_at[rank + 1] if rank + 1 < len(true_at) else 3
                entry[d[2]] = c[j][start:stop]
            for vtx in walk:
                seq.append(vtx)
                seq += entry.get(vtx, [])
        seq.append(t)
        if closing:
            seq.append(s)
        return [arc(a, b) for a, b in zip(seq, seq[1:])]

    return Built(inst, out, emb, lift)


def esat_to_dhp(inst: Instance) -> Built:
    return _esat_gadget(inst, closing=False)


def esat_to_dhc(inst: Instance) -> Built:
    return _esat_gadget(inst, closing=True)


# ---------------------------------------------------------------- directed -> undirected

def _split_vertices(inst: Instance, path: bool) -> Built:
    p = inst.payload
    names = Names(())
    trip = []
    vertices = []
    for v in p.vertices:
        a, b, c = names(f"{v}_in"), names(v), names(f"{v}_out")
        base = len(vertices)
        vertices += [a, b, c]
        trip.append((base, base + 1, base + 2))
    links = set()
    for i_in, mid, i_out in trip:
        links.add((i_in, mid))
        links.add((mid, i_out))
    for u, v in p.links:
        a, b = trip[u][2], trip[v][0]
        links.add((min(a, b), max(a, b)))
    links = tuple(sorted(links))
    if path:
        payload = HamPayload(tuple(vertices), links, trip[p.s][0], trip[p.t][2])
        out = target("UHP", payload)
    else:
        out = target("UHC", HamPayload(tuple(vertices), links))

    emb = {}
    for u, v in p.links:
        emb[arc(p.vertices[u], p.vertices[v])] = edge(vertices[trip[u][2]], vertices[trip[v][0]])
    inner = [edge(vertices[a], vertices[b]) for a, b, _ in trip]
    inner += [edge(vertices[b], vertices[c]) for _, b, c in trip]

    def lift(members):
        return [emb[a] for a in members] + inner

    return Built(inst, out, emb, lift)


def dhc_to_uhc(inst: Instance) -> Built:
    return _split_vertices(inst, path=False)


def dhp_to_uhp(inst: Instance) -> Built:
    return _split_vertices(inst, path=True)


# ---------------------------------------------------------------- towards TSP

def _complete(n: int):
    return tuple((a, b) for a in range(n) for b in range(a + 1, n))


def uhc_to_tsp(inst: Instance) -> Built:
    p = inst.payload
    n = len(p.vertices)
    present = set(p.links)
    edges = _complete(n)
    weights = tuple(0 if e in present else 1 for e in edges)
    out = target("TSP", TSPPayload(p.vertices, edges, weights, 0))
    emb = {edge(p.vertices[a], p.vertices[b]): edge(p.vertices[a], p.vertices[b])
           for a, b in p.links}
    return Built(inst, out, emb, lambda members: list(members))


def uhp_to_uhc(inst: Instance) -> Built:
    p = inst.payload
    names = Names(p.vertices)
    new = names("v_new")
    n = len(p.vertices)
    links = tuple(sorted(set(p.links) | {(p.s, n), (p.t, n)}))
    out = target("UHC", HamPayload(p.vertices + (new,), links))
    emb = {edge(p.vertices[a], p.vertices[b]): edge(p.vertices[a], p.vertices[b])
           for a, b in p.links}
    extra = [edge(p.vertices[p.s], new), edge(p.vertices[p.t], new)]
    return Built(inst, out, emb, lambda members: list(members) + extra)


def uhp_to_tsp(inst: Instance) -> Built:
    p = inst.payload
    names = Names(p.vertices)
    new = names("v_new")
    n = len(p.vertices)
    free = set(p.links) | {(p.s, n), (p.t, n)}
    edges = _complete(n + 1)
    weights = tuple(0 if e in free else 1 for e in edges)
    out = target("TSP", TSPPayload(p.vertices + (new,), edges, weights, 0))
    emb = {edge(p.vertices[a], p.vertices[b]): edge(p.vertices[a], p.vertices[b])
           for a, b in p.links}
    extra = [edge(p.vertices[p.s], new), edge(p.vertices[p.t], new)]
    return Built(inst, out, emb, lambda members: list(members) + extra)
