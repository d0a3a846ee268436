"""1-in-3SAT to 1+3DM via occurrence wheels, and 1+3DM to 3DM via three copies."""

from __future__ import annotations

from collections import Counter

from ..core import Instance, lit, singleton, triple
from ..problems import MatchingPayload, enumerate_solutions
from .base import Built, require, target
from .satisfiability import Names, literal_value, true_values


def osat_to_odm(inst: Instance) -> Built:
    p = inst.payload
    names = Names(())
    occ = Counter(abs(x) for clause in p.clauses for x in clause)
    for i, v in enumerate(p.variables, start=1):
        require(occ[i] > 0, f"variable {v} occurs in no clause")

    xs, ys, zs = [], [], []
    X, Y, Z = {}, {}, {}  # symbolic key -> index

    def put(store, table, key, name):
        table[key] = len(store)
        store.append(names(name))

    for i, v in enumerate(p.variables, start=1):
        for k in range(1, occ[i] + 1):
            put(xs, X, (i, k), f"{v}^{k}")
            put(xs, X, (-i, k), f"~{v}^{k}")
            put(ys, Y, (i, k), f"a[{v}]^{k}")
            put(zs, Z, (i, k), f"b[{v}]^{k}")
    for j in range(1, len(p.clauses) + 1):
        put(ys, Y, ("c", j), f"cy{j}")
        put(zs, Z, ("c", j), f"cz{j}")

    triples = []
    wheel = {}  # (signed var, k) -> triple index covering that X element
    for i in range(1, len(p.variables) + 1):
        o = occ[i]
        for k in range(1, o + 1):
            prev = o if k == 1 else k - 1
            wheel[i, k] = len(triples)
            triples.append((X[i, k], Y[i, k], Z[i, k]))
            wheel[-i, k] = len(triples)
            triples.append((X[-i, k], Y[i, k], Z[i, prev]))

    seen = Counter()
    occurrence = []  # per clause: list of (literal, k)
    for clause in p.clauses:
        row = []
        for x in clause:
            seen[abs(x)] += 1
            row.append((x, seen[abs(x)]))
        occurrence.append(row)
    clause_triple = {}
    for j, row in enumerate(occurrence, start=1):
        for x, k in row:
            clause_triple[x, k] = len(triples)
            triples.append((X[x, k], Y["c", j], Z["c", j]))
    singles, binding, single_pos = [], [], {}
    for row in occurrence:
        for x, k in row:
            single_pos[x, k] = len(singles)
            binding.append((len(singles), wheel[x, k]))
            singles.append(X[-x, k])

    payload = MatchingPayload(tuple(xs), tuple(ys), tuple(zs), tuple(triples),
                              tuple(singles), tuple(binding))
    out = target("ODM", payload)

    def t_el(idx):
        a, b, c = triples[idx]
        return triple(xs[a], ys[b], zs[c])

    emb = {}
    for i, v in enumerate(p.variables, start=1):
        emb[lit(v, True)] = t_el(wheel[-i, 1])
        emb[lit(v, False)] = t_el(wheel[i, 1])

    def lift(members):
        values = true_values(p, members)
        chosen = []
        for i, val in enumerate(values, start=1):
            # a true variable frees its positive X elements for the clauses
            side = -i if val else i
            chosen += [t_el(wheel[side, k]) for k in range(1, occ[i] + 1)]
        for row in occurrence:
            for x, k in row:
                if literal_value(values, x):
                    chosen.append(t_el(clause_triple[x, k]))
                else:
                    chosen.append(singleton(xs[X[-x, k]]))
        return chosen

    return Built(inst, out, emb, lift)


def odm_to_dm(inst: Instance) -> Built:
    p = inst.payload
    names = Names(())

    def copy(seq, tag):
        return [names(f"{v}_{tag}") for v in seq]

    x1, x2, x3 = (copy(p.xs, c) for c in (1, 2, 3))
    y1, y2, y3 = (copy(p.ys, c) for c in (1, 2, 3))
    z1, z2, z3 = (copy(p.zs, c) for c in (1, 2, 3))
    nx, ny, nz = len(p.xs), len(p.ys), len(p.zs)
    xs = x1 + y2 + z3
    ys = x3 + y1 + z2
    zs = x2 + y3 + z1
    # offsets of each copied block inside X', Y', Z'
    X1, Y2, Z3 = 0, nx, nx + ny
    X3, Y1, Z2 = 0, nx, nx + ny
    X2, Y3, Z1 = 0, nx, nx + ny

    triples = []
    for x, y, z in p.triples:
        triples.append((X1 + x, Y1 + y, Z1 + z))
    for x, y, z in p.triples:
        triples.append((Y2 + y, Z2 + z, X2 + x))
    for x, y, z in p.triples:
        triples.append((Z3 + z, X3 + x, Y3 + y))
    single_base = len(triples)
    for x in p.singletons:
        triples.append((X1 + x, X3 + x, X2 + x))
    out = target("DM", MatchingPayload(tuple(xs), tuple(ys), tuple(zs), tuple(triples)))

    def t_el(idx):
        a, b, c = triples[idx]
        return triple(xs[a], ys[b], zs[c])

    nt = len(p.triples)
    emb = {}
    for r, (x, y, z) in enumerate(p.triples):
        emb[triple(p.xs[x], p.ys[y], p.zs[z])] = t_el(r)
    for r, x in enumerate(p.singletons):
        emb[singleton(p.xs[x])] = t_el(single_base + r)

    def lift(members):
        chosen = []
        for r, (x, y, z) in enumerate(p.triples):
            if triple(p.xs[x], p.ys[y], p.zs[z]) in members:
                chosen += [t_el(r), t_el(nt + r), t_el(2 * nt + r)]
        for r, x in enumerate(p.singletons):
            if singleton(p.xs[x]) in members:
                chosen.append(t_el(single_base + r))
        return chosen

    def premise():
        """Every choice of singletons must admit at most one matching."""
        sols = enumerate_solutions("ODM", inst)
        nt_mask = (1 << nt) - 1
        seen = {}
        for m in sols.masks:
            key = m & ~nt_mask
            if key in seen:
                return "two matchings share the same singleton choice"
            seen[key] = m
        return None

    return Built(inst, out, emb, lift, premise=premise)
