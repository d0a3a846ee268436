"""Gadget reductions out of exact-3SAT and 1-in-3SAT."""

from __future__ import annotations

from itertools import product

from ..core import Instance, edge, lit, num, vertex
from ..problems import CNF, GraphK, NumbersPayload, SteinerPayload
from .base import Built, require, target
from .satisfiability import Names, literal_value, true_values


class GraphBuilder:
    """Accumulates named vertices and undirected edges in insertion order."""

    def __init__(self, taken=()):
        self.names = Names(taken)
        self.vertices: list[str] = []
        self.index: dict[str, int] = {}
        self.edges: dict[tuple, None] = {}

    def add(self, base: str) -> str:
        name = self.names(base)
        self.index[name] = len(self.vertices)
        self.vertices.append(name)
        return name

    def link(self, a: str, b: str) -> None:
        i, j = self.index[a], self.index[b]
        self.edges.setdefault((min(i, j), max(i, j)), None)

    def graph(self, k: int) -> GraphK:
        return GraphK(tuple(self.vertices), tuple(sorted(self.edges)), k)


def _literal_vertices(g: GraphBuilder, p: CNF) -> dict:
    """Vertex name per signed literal id: x_i then ~x_i for every variable."""
    out = {}
    for i, v in enumerate(p.variables, start=1):
        out[i] = g.add(v)
        out[-i] = g.add("~" + v)
    return out


def _literal_embed(p: CNF, names: dict) -> dict:
    emb = {}
    for i, v in enumerate(p.variables, start=1):
        emb[lit(v, True)] = vertex(names[i])
        emb[lit(v, False)] = vertex(names[-i])
    return emb


def _triangles(g: GraphBuilder, p: CNF) -> list[list[str]]:
    out = []
    for j in range(1, len(p.clauses) + 1):
        tri = [g.add(f"c{j}_{q}") for q in (1, 2, 3)]
        g.link(tri[0], tri[1])
        g.link(tri[1], tri[2])
        g.link(tri[0], tri[2])
        out.append(tri)
    return out


# ---------------------------------------------------------------- MIS / MVC

def _mis(inst: Instance, one_in: bool) -> Built:
    p = inst.payload
    g = GraphBuilder()
    names = _literal_vertices(g, p)
    for i in range(1, len(p.variables) + 1):
        g.link(names[i], names[-i])
    tris = _triangles(g, p)
    for clause, tri in zip(p.clauses, tris):
        for x, c in zip(clause, tri):
            g.link(c, names[-x])
            if one_in:
                # a chosen triangle vertex also rules out the other literals
                for y in clause:
                    if y != x:
                        g.link(c, names[y])
    out = target("MIS", g.graph(len(p.variables) + len(p.clauses)))
    lift = None
    if one_in:
        def lift(members):
            values = true_values(p, members)
            chosen = [vertex(names[i if v else -i]) for i, v in enumerate(values, start=1)]
            for clause, tri in zip(p.clauses, tris):
                chosen += [vertex(c) for x, c in zip(clause, tri) if literal_value(values, x)]
            return chosen
    return Built(inst, out, _literal_embed(p, names), lift)


def _mvc(inst: Instance, one_in: bool) -> Built:
    p = inst.payload
    g = GraphBuilder()
    names = _literal_vertices(g, p)
    for i in range(1, len(p.variables) + 1):
        g.link(names[i], names[-i])
    tris = _triangles(g, p)
    for clause, tri in zip(p.clauses, tris):
        for x, c in zip(clause, tri):
            g.link(c, names[x])
            if one_in:
                for y in clause:
                    if y != x:
                        g.link(c, names[-y])
    out = target("MVC", g.graph(len(p.variables) + 2 * len(p.clauses)))
    lift = None
    if one_in:
        def lift(members):
            values = true_values(p, members)
            chosen = [vertex(names[i if v else -i]) for i, v in enumerate(values, start=1)]
            for clause, tri in zip(p.clauses, tris):
                chosen += [vertex(c) for x, c in zip(clause, tri) if not literal_value(values, x)]
            return chosen
    return Built(inst, out, _literal_embed(p, names), lift)


def esat_to_mis(inst: Instance) -> Built:
    return _mis(inst, False)


def osat_to_mis(inst: Instance) -> Built:
    return _mis(inst, True)


def esat_to_mvc(inst: Instance) -> Built:
    return _mvc(inst, False)


def osat_to_mvc(inst: Instance) -> Built:
    return _mvc(inst, True)


# ---------------------------------------------------------------- MDS

def esat_to_mds(inst: Instance) -> Built:
    p = inst.payload
    g = GraphBuilder()
    names = {}
    for i, v in enumerate(p.variables, start=1):
        pos, neg = g.add(v), g.add("~" + v)
        xa, xb = g.add(f"{v}#1"), g.add(f"{v}#2")
        names[i], names[-i] = pos, neg
        g.link(pos, neg)
        for x in (xa, xb):
            g.link(pos, x)
            g.link(neg, x)
    for j, clause in enumerate(p.clauses, start=1):
        c = g.add(f"C{j}")
        for x in clause:
            g.link(c, names[x])
    out = target("MDS", g.graph(len(p.variables)))

    def lift(members):
        values = true_values(p, members)
        return [vertex(names[i if v else -i]) for i, v in enumerate(values, start=1)]

    return Built(inst, out, _literal_embed(p, names), lift)


# ---------------------------------------------------------------- CQ

def esat_to_cq(inst: Instance) -> Built:
    p = inst.payload
    n, m = len(p.variables), len(p.clauses)
    require(n >= 3, "the clique construction needs at least 3 variables")
    require(m >= 1, "the clique construction needs at least one clause")
    vertices, labels = [], []
    for j, clause in enumerate(p.clauses, start=1):
        for bits in product((False, True), repeat=n):
            values = list(bits)
            if any(literal_value(values, x) for x in clause):
                label = "".join("1" if b else "0" for b in bits)
                vertices.append(f"C{j}:{label}")
                labels.append((j, label))
    by_label: dict[str, list[int]] = {}
    for idx, (_, label) in enumerate(labels):
        by_label.setdefault(label, []).append(idx)
    edges = []
    for group in by_label.values():
        for a in range(len(group)):
            for b in range(a + 1, len(group)):
                edges.append((group[a], group[b]))
    out = target("CQ", GraphK(tuple(vertices), tuple(sorted(edges)), m))

    def lift(members):
        values = true_values(p, members)
        label = "".join("1" if b else "0" for b in values)
        return [vertex(f"C{j}:{label}") for j in range(1, m + 1)]

    def unlift(members):
        label = next(iter(members)).key[0].split(":")[1]
        return [lit(v, b == "1") for v, b in zip(p.variables, label)]

    return Built(inst, out, None, lift, unlift)


# ---------------------------------------------------------------- SS

def esat_to_ss(inst: Instance) -> Built:
    p = inst.payload
    n, m = len(p.variables), len(p.clauses)
    width = n + 3 * m

    def digit(pos: int) -> int:
        """Value of the pos-th digit counted from the most significant end."""
        return 1 << (width - 1 - pos)

    def block(j: int, value: int) -> int:
        return value << (3 * (m - 1 - j))

    numbers = []
    index = {}
    for i in range(1, n + 1):
        for x in (i, -i):
            value = digit(i - 1)
            for j, clause in enumerate(p.clauses):
                if x in clause:
                    value += block(j, 0b001)
            index[x] = len(numbers)
            numbers.append(value)
    slack = []
    for j in range(m):
        slack.append((len(numbers), len(numbers) + 1))
        numbers += [block(j, 0b001), block(j, 0b010)]
    goal = sum(digit(i) for i in range(n)) + sum(block(j, 0b100) for j in range(m))
    out = target("SS", NumbersPayload(tuple(numbers), goal))

    emb = {}
    for i, v in enumerate(p.variables, start=1):
        emb[lit(v, True)] = num(index[i])
        emb[lit(v, False)] = num(index[-i])

    def lift(members):
        values = true_values(p, members)
        chosen = [num(index[i if v else -i]) for i, v in enumerate(values, start=1)]
        for clause, (one, two) in zip(p.clauses, slack):
            t = sum(literal_value(values, x) for x in clause)
            take = {1: (one, two), 2: (two,), 3: (one,)}[t]
            chosen += [num(x) for x in take]
        return chosen

    return Built(inst, out, emb, lift)


# ---------------------------------------------------------------- STT

def osat_to_stt(inst: Instance) -> Built:
    p = inst.payload
    n = len(p.variables)
    nl = 2 * n
    g = GraphBuilder()
    s = g.add("s")
    chain = [s]
    names = {}
    for i, v in enumerate(p.variables, start=1):
        names[i], names[-i] = g.add(v), g.add("~" + v)
        nxt = g.add("t") if i == n else g.add(f"v{i}")
        for x in (names[i], names[-i]):
            g.link(chain[-1], x)
            g.link(x, nxt)
        chain.append(nxt)
    terminals = [s, chain[-1]]
    paths = {}
    for j, clause in enumerate(p.clauses, start=1):
        cj = g.add(f"C{j}")
        terminals.append(cj)
        for q, x in enumerate(clause, start=1):
            seq = [names[x]] + [g.add(f"c{j}_{q}^{r}") for r in range(1, nl + 1)] + [cj]
            for a, b in zip(seq, seq[1:]):
                g.link(a, b)
            paths[j, q] = [edge(a, b) for a, b in zip(seq, seq[1:])]
    graph = g.graph(0)
    k = nl + len(p.clauses) * (nl + 1)
    idx = g.index
    out = target("STT", SteinerPayload(
        graph.vertices, graph.edges, (1,) * len(graph.edges),
        tuple(idx[x] for x in terminals), k))

    emb = {}
    for i, v in enumerate(p.variables, start=1):
        emb[lit(v, True)] = edge(chain[i - 1], names[i])
        emb[lit(v, False)] = edge(chain[i - 1], names[-i])

    def lift(members):
        values = true_values(p, members)
        chosen = []
        for i, v in enumerate(values, start=1):
            x = names[i if v else -i]
            chosen += [edge(chain[i - 1], x), edge(x, chain[i])]
        for j, clause in enumerate(p.clauses, start=1):
            for q, x in enumerate(clause, start=1):
                if literal_value(values, x):
                    chosen += paths[j, q]
                    break
        return chosen

    return Built(inst, out, emb, lift)
