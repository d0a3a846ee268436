"""Problem registry plus the enumeration kernels shared by several kinds."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Callable, Iterable, Iterator

from ..core import (
    Budget, GenerationFailed, Instance, InvalidInstance, KindMismatch,
    NoSolution, Solution, SolutionSet, Universe, UniverseMismatch, as_budget,
    bit_indices, popcount,
)

PROBLEM_IDS = (
    "SAT", "TSAT", "ESAT", "OSAT", "VC", "MVC", "DS", "MDS", "MIS", "CQ",
    "SP", "SC", "HS", "FVS", "FAS", "UFL", "PCEN", "PMED", "VCV", "DHP",
    "DHC", "UHP", "UHC", "TSP", "STT", "SS", "KS", "P", "TMS", "ODM", "DM",
)

BRUTE_FORCE_LIMIT = 26


@dataclass(frozen=True)
class ProblemDef:
    id: str
    title: str
    payload_type: type
    universe: Callable[[object], list]
    validate: Callable[[object], None]
    verify: Callable[[object, int], bool]
    enumerate: Callable[[object, Budget], Iterable[int]]
    generate: Callable[[dict, random.Random], object]
    default_params: dict
    # "min" / "max" for kinds whose k is an optimisation target
    optimum: str | None = None
    k_field: str = "k"


REGISTRY: dict[str, ProblemDef] = {}


def register(defn: ProblemDef) -> ProblemDef:
    if defn.id not in PROBLEM_IDS:
        raise ValueError(f"unknown problem id {defn.id}")
    if defn.id in REGISTRY:
        raise ValueError(f"duplicate problem id {defn.id}")
    REGISTRY[defn.id] = defn
    return defn


def get_problem(pid: str) -> ProblemDef:
    try:
        return REGISTRY[pid.upper()]
    except KeyError:
        raise KindMismatch(f"unknown problem kind {pid!r}") from None


def make_instance(kind: str, payload, name: str | None = None,
                  note: str | None = None) -> Instance:
    """Build an instance after running the kind's structural validation."""
    defn = get_problem(kind)
    if not isinstance(payload, defn.payload_type):
        raise InvalidInstance(
            f"{defn.id} expects {defn.payload_type.__name__}, "
            f"got {type(payload).__name__}")
    defn.validate(payload)
    return Instance(defn.id, payload, name, note)


def _check_kind(instance: Instance, pid: str | None) -> ProblemDef:
    defn = get_problem(instance.kind)
    if pid is not None and get_problem(pid).id != defn.id:
        raise KindMismatch(f"instance is {instance.kind}, expected {pid}")
    return defn


def universe_of(instance: Instance) -> Universe:
    defn = get_problem(instance.kind)
    payload = instance.payload
    if not isinstance(payload, defn.payload_type):
        raise InvalidInstance(f"payload does not match kind {defn.id}")

    def build():
        defn.validate(payload)
        return Universe(defn.universe(payload))

    return payload.cached("universe", build)


def verify_solution(pid: str | None, instance: Instance, candidate) -> bool:
    defn = _check_kind(instance, pid)
    universe = universe_of(instance)
    if isinstance(candidate, Solution):
        if candidate.universe != universe:
            raise UniverseMismatch("candidate is over a different universe")
        mask = candidate.mask
    elif not isinstance(candidate, int):
        mask = universe.mask(candidate)
    else:
        mask = candidate
        if mask < 0 or mask >> len(universe):
            raise UniverseMismatch("candidate mask has bits outside the universe")
    return bool(defn.verify(instance.payload, mask))


def enumerate_solutions(pid: str | None, instance: Instance,
                        budget: Budget | int | None = None) -> SolutionSet:
    defn = _check_kind(instance, pid)
    universe = universe_of(instance)
    budget = as_budget(budget)
    start = budget.nodes
    masks = frozenset(defn.enumerate(instance.payload, budget))
    return SolutionSet(universe, masks, True, budget.nodes - start)


def brute_force(pid: str | None, instance: Instance,
                budget: Budget | int | None = None) -> SolutionSet:
    """The generic 2^|U| filter; the oracle the pruned kernels are tested against."""
    defn = _check_kind(instance, pid)
    universe = universe_of(instance)
    if len(universe) > BRUTE_FORCE_LIMIT:
        raise InvalidInstance(
            f"universe of size {len(universe)} is beyond the brute-force limit")
    budget = as_budget(budget)
    start = budget.nodes
    found = []
    for mask in range(1 << len(universe)):
        budget.tick()
        if defn.verify(instance.payload, mask):
            found.append(mask)
    return SolutionSet(universe, frozenset(found), True, budget.nodes - start)


def with_k(instance: Instance, k: int) -> Instance:
    defn = get_problem(instance.kind)
    payload = replace(instance.payload, **{defn.k_field: k})
    return make_instance(defn.id, payload, instance.name, instance.note)


def minimum_cardinality(pid: str | None, instance: Instance,
                        budget: Budget | int | None = None) -> int:
    """Optimal k of a cardinality kind, found by exhaustive search over k."""
    defn = _check_kind(instance, pid)
    if defn.optimum is None:
        raise KindMismatch(f"{defn.id} is not a cardinality problem")
    budget = as_budget(budget)
    n = len(universe_of(instance))
    order = range(n + 1) if defn.optimum == "min" else range(n, -1, -1)
    for k in order:
        probe = replace(instance.payload, **{defn.k_field: k})
        for _ in defn.enumerate(probe, budget):
            return k
    raise NoSolution(f"{defn.id} instance has no feasible set of any size")


def generate_instance(pid: str, params: dict | None = None,
                      seed: int = 0, tries: int = 200) -> Instance:
    defn = get_problem(pid)
    merged = dict(defn.default_params)
    if params:
        unknown = set(params) - set(merged)
        if unknown:
            raise InvalidInstance(
                f"unknown size parameters for {defn.id}: {sorted(unknown)}")
        merged.update(params)
    for key, value in merged.items():
        if isinstance(value, (int, float)) and not isinstance(value, bool) and value < 0:
            raise InvalidInstance(f"size parameter {key} must be non-negative")
    rng = random.Random(f"{defn.id}:{seed}")
    for _ in range(tries):
        payload = defn.generate(merged, rng)
        if payload is None:
            continue
        if defn.optimum is not None:
            payload = replace(payload, **{defn.k_field: 0})
            try:
                k = minimum_cardinality(defn.id, Instance(defn.id, payload))
            except NoSolution:
                continue
            payload = replace(payload, **{defn.k_field: k})
        return make_instance(defn.id, payload, name=f"{defn.id.lower()}-{seed}")
    raise GenerationFailed(f"no valid {defn.id} draw after {tries} attempts")


# ---------------------------------------------------------------- kernels

def hitting_sets(n: int, violation: Callable[[int, int], int | None],
                 k: int | None, exact: bool, budget: Budget,
                 allowed: int | None = None) -> Iterator[int]:
    """Enumerate sets X over n positions hitting every constraint.

    `violation(chosen, forbidden)` returns None when `chosen` hits every
    constraint, otherwise the free positions of some unhit constraint (0 means
    the branch is dead).  The properties enumerated are upward closed, so
    once nothing is violated every superset drawn from the free positions is
    a solution as well.  Branch i takes option b_i and forbids b_1..b_{i-1},
    so each set is produced once.
    """
    full = (1 << n) - 1 if allowed is None else allowed
    limit = n if k is None else k
    if limit < 0:
        return

    def rec(chosen: int, forbidden: int, size: int):
        budget.tick()
        opts = violation(chosen, forbidden)
        if opts is None:
            free = list(bit_indices(full & ~chosen & ~forbidden))
            room = limit - size
            sizes = [room] if exact else range(0, room + 1)
            for r in sizes:
                if r < 0 or r > len(free):
                    continue
                for combo in combinations(free, r):
                    budget.tick()
                    extra = 0
                    for b in combo:
                        extra |= 1 << b
                    yield chosen | extra
            return
        if size >= limit:
            return
        prev = 0
        for b in bit_indices(opts):
            bit = 1 << b
            yield from rec(chosen | bit, forbidden | prev, size + 1)
            prev |= bit

    yield from rec(0, 0 if allowed is None else ~allowed & ((1 << n) - 1), 0)


def pick_constraint(constraints: Iterable[int], chosen: int,
                    forbidden: int) -> int | None:
    """Smallest free part of a constraint mask not yet hit by `chosen`."""
    best = None
    best_size = 0
    for c in constraints:
        if c & chosen:
            continue
        free = c & ~forbidden
        if not free:
            return 0
        size = popcount(free)
        if best is None or size < best_size:
            best, best_size = free, size
            if size == 1:
                break
    return best


def _colour_bound(cand: int, adj: list[int], need: int) -> int:
    """Colours used by a greedy colouring of `cand`, capped at `need`.

    A clique takes at most one vertex per colour class, so this bounds its size.
    """
    used = 0
    rest = cand
    while rest and used < need:
        used += 1
        avail = rest
        while avail:
            low = avail & -avail
            rest &= ~low
            avail &= ~low & ~adj[low.bit_length() - 1]
    return used


def cliques_of_size(n: int, adj: list[int], k: int,
                    budget: Budget) -> Iterator[int]:
    """All k-subsets of {0..n-1} that are pairwise adjacent under `adj`."""
    if k < 0 or k > n:
        return
    if k == 0:
        budget.tick()
        yield 0
        return

    def rec(chosen: int, cand: int, size: int):
        budget.tick()
        if size == k:
            yield chosen
            return
        if popcount(cand) < k - size or _colour_bound(cand, adj, k - size) < k - size:
            return
        for v in bit_indices(cand):
            cand &= ~(1 << v)
            if popcount(cand) + 1 < k - size:
                return
            yield from rec(chosen | 1 << v, cand & adj[v], size + 1)

    yield from rec(0, (1 << n) - 1, 0)


def subsets_with_sum(values: list[int], lo: int, hi: int, budget: Budget,
                     forced: int = 0) -> Iterator[int]:
    """Index masks whose value sum lies in [lo, hi]; `forced` bits always taken.

    Values must be non-negative.
    """
    n = len(values)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + values[i]

    def rec(i: int, mask: int, total: int):
        budget.tick()
        if total > hi or total + suffix[i] < lo:
            return
        if i == n:
            yield mask
            return
        if not forced >> i & 1:
            yield from rec(i + 1, mask, total)
        yield from rec(i + 1, mask | 1 << i, total + values[i])

    yield from rec(0, 0, 0)


def combos(n: int, sizes: Iterable[int], budget: Budget) -> Iterator[int]:
    for r in sizes:
        if r < 0 or r > n:
            continue
        for combo in combinations(range(n), r):
            budget.tick()
            m = 0
            for b in combo:
                m |= 1 << b
            yield m


# ---------------------------------------------------------------- validation helpers

def check_names(names, what: str) -> None:
    if not isinstance(names, tuple):
        raise InvalidInstance(f"{what} must be a tuple")
    seen = set()
    for i, n in enumerate(names):
        if not isinstance(n, str) or not n:
            raise InvalidInstance(f"{what}[{i}] must be a non-empty string")
        if n in seen:
            raise InvalidInstance(f"duplicate name {n!r}", f"{what}[{i}]")
        seen.add(n)


def check_int(value, what: str, minimum: int | None = 0) -> None:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidInstance(f"{what} must be an integer")
    if minimum is not None and value < minimum:
        raise InvalidInstance(f"{what} must be >= {minimum}")


def check_pairs(pairs, n: int, what: str, directed: bool) -> None:
    if not isinstance(pairs, tuple):
        raise InvalidInstance(f"{what} must be a tuple")
    seen = set()
    for i, p in enumerate(pairs):
        path = f"{what}[{i}]"
        if not isinstance(p, tuple) or len(p) != 2:
            raise InvalidInstance("expected a pair", path)
        a, b = p
        for x in (a, b):
            if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                raise InvalidInstance("endpoint out of range", path)
        if a == b:
            raise InvalidInstance("self-loops are not allowed", path)
        if not directed and a > b:
            raise InvalidInstance("edge endpoints must be sorted", path)
        if p in seen:
            raise InvalidInstance("parallel links are not allowed", path)
        seen.add(p)


def random_pairs(rng: random.Random, n: int, density: float,
                 directed: bool) -> tuple:
    pairs = []
    for a in range(n):
        for b in range(n):
            if a == b or (not directed and b < a):
                continue
            if rng.random() < density:
                pairs.append((a, b))
    return tuple(pairs)


def vertex_names(n: int, prefix: str = "v") -> tuple:
    return tuple(f"{prefix}{i + 1}" for i in range(n))
