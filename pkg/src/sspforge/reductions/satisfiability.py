"""Clause-level reductions among the satisfiability variants."""

from __future__ import annotations

from ..core import Instance, fresh_name, lit
from ..problems import CNF
from .base import Built, require, target


def true_values(p: CNF, members: set) -> list[bool]:
    """Assignment as booleans, read off a set of Lit elements."""
    return [lit(v, True) in members for v in p.variables]


def literal_value(values: list[bool], x: int) -> bool:
    return values[abs(x) - 1] == (x > 0)


def identity_embed(p: CNF) -> dict:
    return {lit(v, s): lit(v, s) for v in p.variables for s in (True, False)}


def extend(p: CNF, names: list[str], values: list[bool], extra: list[bool]) -> list:
    """Lit elements of the assignment `values + extra` over `names`."""
    out = [lit(v, val) for v, val in zip(p.variables, values)]
    out += [lit(v, val) for v, val in zip(names, extra)]
    return out


class Names:
    """Hands out helper names that avoid every name already in use."""

    def __init__(self, taken):
        self.taken = set(taken)

    def __call__(self, base: str) -> str:
        return fresh_name(base, self.taken)


# ---------------------------------------------------------------- SAT -> 3SAT

def _split(p: CNF, guards: bool):
    names = Names(p.variables)
    variables = list(p.variables)
    clauses: dict[frozenset, tuple] = {}
    # per helper: the literals whose disjunction it stands for
    meaning: list[tuple] = []

    def add(clause):
        clauses.setdefault(frozenset(clause), tuple(clause))

    for clause in p.clauses:
        n = len(clause)
        if n <= 3:
            add(clause)
            continue
        base = len(variables)
        for j in range(n - 3):
            variables.append(names(f"h{len(meaning) + 1}"))
            meaning.append(tuple(clause[j + 2:]))
        h = [base + j + 1 for j in range(n - 3)]  # signed ids of the helpers
        add((clause[0], clause[1], h[0]))
        for j in range(1, n - 3):
            add((-h[j - 1], clause[j + 1], h[j]))
        add((-h[-1], clause[-2], clause[-1]))
        if guards:
            for j in range(n - 3):
                for c in clause[j + 2:]:
                    add((-c, h[j]))
    out = CNF(tuple(variables), tuple(clauses.values()))
    return out, variables[len(p.variables):], meaning


def sat_to_tsat_naive(inst: Instance) -> Built:
    p = inst.payload
    out, _, _ = _split(p, guards=False)
    return Built(inst, target("TSAT", out), identity_embed(p))


def sat_to_tsat(inst: Instance) -> Built:
    p = inst.payload
    out, helpers, meaning = _split(p, guards=True)

    def lift(members):
        values = true_values(p, members)
        extra = [any(literal_value(values, c) for c in rest) for rest in meaning]
        return extend(p, helpers, values, extra)

    return Built(inst, target("TSAT", out), identity_embed(p), lift)


# ---------------------------------------------------------------- 3SAT -> E3SAT

H_BLOCK = (
    (1, 2, 3), (1, -2, 3), (1, 2, -3), (1, -2, -3),
    (-1, 2, 3), (-1, 2, -3), (-1, -2, 3),
)


def tsat_to_esat(inst: Instance) -> Built:
    p = inst.payload
    names = Names(p.variables)
    hs = [names(f"h{i}") for i in (1, 2, 3)]
    n = len(p.variables)
    h = [n + 1, n + 2, n + 3]
    clauses = []
    for clause in p.clauses:
        require(len({abs(x) for x in clause}) == len(clause),
                "clauses with complementary literals cannot be padded to exact 3SAT")
        clauses.append(tuple(clause) + tuple(-h[i] for i in range(3 - len(clause))))
    for block in H_BLOCK:
        clauses.append(tuple(h[abs(x) - 1] if x > 0 else -h[abs(x) - 1] for x in block))
    out = CNF(p.variables + tuple(hs), tuple(clauses))

    def lift(members):
        return extend(p, hs, true_values(p, members), [True, True, True])

    return Built(inst, target("ESAT", out), identity_embed(p), lift)


# ---------------------------------------------------------------- E3SAT -> 1-in-3SAT

# truth of (c1, c2, c3) -> truth of (z1 z2 z3, h1 h2 h3, g1 g2 g3)
OSAT_TABLE = {
    (False, False, True): "001000111",
    (False, True, False): "010000101",
    (False, True, True): "001010011",
    (True, False, False): "100000010",
    (True, False, True): "001100111",
    (True, True, False): "010100101",
    (True, True, True): "001110011",
}


def esat_to_osat(inst: Instance) -> Built:
    p = inst.payload
    names = Names(p.variables)
    variables = list(p.variables)
    clauses = []
    helpers = []
    for j, (c1, c2, c3) in enumerate(p.clauses, start=1):
        ids = {}
        for letter in "zhg":
            for q in (1, 2, 3):
                variables.append(names(f"{letter}{q}_{j}"))
                ids[letter, q] = len(variables)
                helpers.append(variables[-1])
        z = lambda q: ids["z", q]
        h = lambda q: ids["h", q]
        g = lambda q: ids["g", q]
        clauses += [
            (-c1, z(1), h(1)), (-c2, z(2), h(2)), (-c3, z(3), h(3)),
            (z(1), z(2), z(3)),
            (z(1), h(2), g(1)), (z(2), h(3), g(2)), (z(1), h(3), g(3)),
        ]
    out = CNF(tuple(variables), tuple(clauses))

    def lift(members):
        values = true_values(p, members)
        extra = []
        for clause in p.clauses:
            key = tuple(literal_value(values, x) for x in clause)
            extra += [bit == "1" for bit in OSAT_TABLE[key]]
        return extend(p, helpers, values, extra)

    return Built(inst, target("OSAT", out), identity_embed(p), lift)

