"""SAT, 3SAT, exact-3SAT and 1-in-3SAT over signed 1-based literals."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..core import Budget, InvalidInstance, Payload, lit
from .base import ProblemDef, check_names, register, vertex_names


@dataclass(frozen=True)
class CNF(Payload):
    variables: tuple = ()
    clauses: tuple = ()  # tuple of tuples of non-zero ints, +i / -i


def literal_bit(literal: int) -> int:
    """Universe position of a signed literal: 2i for x_i, 2i+1 for ~x_i."""
    i = abs(literal) - 1
    return 2 * i if literal > 0 else 2 * i + 1


def assignment_mask(values: list[bool]) -> int:
    m = 0
    for i, v in enumerate(values):
        m |= 1 << (2 * i if v else 2 * i + 1)
    return m


def decode_assignment(n: int, mask: int) -> list[bool] | None:
    out = []
    for i in range(n):
        pos = mask >> (2 * i) & 1
        neg = mask >> (2 * i + 1) & 1
        if pos == neg:
            return None
        out.append(bool(pos))
    return out


def _universe(p: CNF) -> list:
    out = []
    for v in p.variables:
        out.append(lit(v, True))
        out.append(lit(v, False))
    return out


def _validate_cnf(p: CNF, max_len: int | None = None, exact: bool = False) -> None:
    check_names(p.variables, "variables")
    if not isinstance(p.clauses, tuple):
        raise InvalidInstance("clauses must be a tuple")
    n = len(p.variables)
    for j, clause in enumerate(p.clauses):
        path = f"clauses[{j}]"
        if not isinstance(clause, tuple):
            raise InvalidInstance("clause must be a tuple", path)
        for x in clause:
            if not isinstance(x, int) or isinstance(x, bool) or x == 0 or abs(x) > n:
                raise InvalidInstance(f"literal {x!r} references no declared variable", path)
        if len(set(clause)) != len(clause):
            raise InvalidInstance("repeated literal in clause", path)
        if max_len is not None and len(clause) > max_len:
            raise InvalidInstance(f"clause has more than {max_len} literals", path)
        if exact:
            if len(clause) != 3:
                raise InvalidInstance("clause must have exactly 3 literals", path)
            if len({abs(x) for x in clause}) != 3:
                raise InvalidInstance("clause literals must use 3 distinct variables", path)


def _verify(p: CNF, mask: int, one_in: bool) -> bool:
    values = decode_assignment(len(p.variables), mask)
    if values is None:
        return False
    for clause in p.clauses:
        true = sum(1 for x in clause if values[abs(x) - 1] == (x > 0))
        if one_in:
            if true != 1:
                return False
        elif true == 0:
            return False
    return True


def _enumerate(p: CNF, budget: Budget, one_in: bool):
    n = len(p.variables)
    if any(len(c) == 0 for c in p.clauses):
        budget.tick()
        return
    touching: list[list[tuple]] = [[] for _ in range(n)]
    for clause in p.clauses:
        for x in {abs(y) for y in clause}:
            touching[x - 1].append(clause)
    values: list[bool | None] = [None] * n

    def ok(clause) -> bool:
        true = free = 0
        for x in clause:
            v = values[abs(x) - 1]
            if v is None:
                free += 1
            elif v == (x > 0):
                true += 1
        if one_in:
            return true <= 1 and (true == 1 or free > 0)
        return true > 0 or free > 0

    def rec(i: int, mask: int):
        budget.tick()
        if i == n:
            yield mask
            return
        for v in (True, False):
            values[i] = v
            if all(ok(c) for c in touching[i]):
                yield from rec(i + 1, mask | 1 << (2 * i if v else 2 * i + 1))
        values[i] = None

    yield from rec(0, 0)


def _random_clause(rng: random.Random, n: int, size: int) -> tuple:
    chosen = rng.sample(range(1, n + 1), size)
    return tuple(x if rng.random() < 0.5 else -x for x in chosen)


def _gen_sat(params: dict, rng: random.Random):
    n, m, max_len = params["variables"], params["clauses"], params["max_len"]
    if n < 1:
        return None
    clauses = set()
    for _ in range(m):
        size = rng.randint(1, min(max_len, n))
        clauses.add(tuple(sorted(_random_clause(rng, n, size), key=abs)))
    return CNF(vertex_names(n, "x"), tuple(sorted(clauses, key=lambda c: (len(c), c))))


def _gen_tsat(params: dict, rng: random.Random):
    params = dict(params, max_len=min(3, params["max_len"]))
    return _gen_sat(params, rng)


def _gen_esat(params: dict, rng: random.Random):
    n, m = params["variables"], params["clauses"]
    if n < 3:
        return None
    clauses = []
    for _ in range(m):
        clauses.append(tuple(sorted(_random_clause(rng, n, 3), key=abs)))
    return CNF(vertex_names(n, "x"), tuple(dict.fromkeys(clauses)))


def _gen_osat(params: dict, rng: random.Random):
    """Planted 1-in-3 instance; every declared variable occurs somewhere."""
    n, m = params["variables"], params["clauses"]
    if n < 3 or m < 1:
        return None
    truth = [rng.random() < 0.5 for _ in range(n)]
    clauses = []
    for _ in range(m):
        vars3 = rng.sample(range(1, n + 1), 3)
        hit = rng.randrange(3)
        clause = []
        for pos, x in enumerate(vars3):
            want_true = pos == hit
            # literal value must equal want_true under the planted assignment
            clause.append(x if truth[x - 1] == want_true else -x)
        clauses.append(tuple(sorted(clause, key=abs)))
    clauses = tuple(dict.fromkeys(clauses))
    used = {abs(x) for c in clauses for x in c}
    if len(used) != n:
        return None
    return CNF(vertex_names(n, "x"), clauses)


def _def(pid, title, validate, one_in, gen, defaults):
    return register(ProblemDef(
        id=pid, title=title, payload_type=CNF, universe=_universe,
        validate=validate,
        verify=lambda p, m: _verify(p, m, one_in),
        enumerate=lambda p, b: _enumerate(p, b, one_in),
        generate=gen, default_params=defaults,
    ))


_def("SAT", "Satisfiability", _validate_cnf, False, _gen_sat,
     {"variables": 3, "clauses": 3, "max_len": 4})
_def("TSAT", "3-Satisfiability", lambda p: _validate_cnf(p, max_len=3), False,
     _gen_tsat, {"variables": 3, "clauses": 3, "max_len": 3})
_def("ESAT", "Exact 3-Satisfiability", lambda p: _validate_cnf(p, exact=True),
     False, _gen_esat, {"variables": 3, "clauses": 2})
_def("OSAT", "1-in-3-Satisfiability", lambda p: _validate_cnf(p, exact=True),
     True, _gen_osat, {"variables": 3, "clauses": 1})
