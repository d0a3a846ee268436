"""Subset Sum, Knapsack, Partition and Two-Machine Scheduling."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..core import Budget, InvalidInstance, Payload, job, num, obj
from .base import ProblemDef, check_int, register, subsets_with_sum


@dataclass(frozen=True)
class NumbersPayload(Payload):
    numbers: tuple = ()
    target: int | None = None  # SS only


@dataclass(frozen=True)
class KnapsackPayload(Payload):
    weights: tuple = ()
    profits: tuple = ()
    capacity: int = 0
    min_profit: int = 0


@dataclass(frozen=True)
class SchedulingPayload(Payload):
    jobs: tuple = ()
    deadline: int = 0


def _check_values(values, what: str) -> None:
    if not isinstance(values, tuple):
        raise InvalidInstance(f"{what} must be a tuple")
    for i, v in enumerate(values):
        check_int(v, f"{what}[{i}]")


def _masked_sum(values, mask: int) -> int:
    return sum(v for i, v in enumerate(values) if mask >> i & 1)


def _last_bit(n: int) -> int:
    return 1 << (n - 1) if n else 0


# ---- SS

def _validate_ss(p: NumbersPayload) -> None:
    _check_values(p.numbers, "numbers")
    check_int(p.target, "target")


def _enum_ss(p: NumbersPayload, budget: Budget):
    return subsets_with_sum(list(p.numbers), p.target, p.target, budget)


def _gen_ss(params: dict, rng: random.Random):
    n = params["count"]
    numbers = tuple(rng.randint(1, params["max_value"]) for _ in range(n))
    # a planted subset keeps most draws satisfiable
    picked = [x for x in numbers if rng.random() < 0.5]
    target = sum(picked) if picked else rng.randint(0, sum(numbers))
    return NumbersPayload(numbers, target)


# ---- P

def _validate_p(p: NumbersPayload) -> None:
    _check_values(p.numbers, "numbers")
    if p.target is not None:
        raise InvalidInstance("partition instances carry no target", "target")


def _verify_p(p: NumbersPayload, mask: int) -> bool:
    n = len(p.numbers)
    total = sum(p.numbers)
    return (n > 0 and bool(mask & _last_bit(n)) and total % 2 == 0
            and 2 * _masked_sum(p.numbers, mask) == total)


def _enum_p(p: NumbersPayload, budget: Budget):
    n = len(p.numbers)
    total = sum(p.numbers)
    if n == 0 or total % 2:
        budget.tick()
        return iter(())
    half = total // 2
    return subsets_with_sum(list(p.numbers), half, half, budget, forced=_last_bit(n))


def _gen_p(params: dict, rng: random.Random):
    n = params["count"]
    numbers = [rng.randint(1, params["max_value"]) for _ in range(n)]
    if sum(numbers) % 2:
        numbers[rng.randrange(n)] += 1
    return NumbersPayload(tuple(numbers), None)


# ---- KS

def _validate_ks(p: KnapsackPayload) -> None:
    _check_values(p.weights, "weights")
    _check_values(p.profits, "profits")
    if len(p.weights) != len(p.profits):
        raise InvalidInstance("weights and profits differ in length", "profits")
    check_int(p.capacity, "capacity")
    check_int(p.min_profit, "min_profit")


def _verify_ks(p: KnapsackPayload, mask: int) -> bool:
    return (_masked_sum(p.weights, mask) <= p.capacity
            and _masked_sum(p.profits, mask) >= p.min_profit)


def _enum_ks(p: KnapsackPayload, budget: Budget):
    n = len(p.weights)
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + p.profits[i]

    def rec(i: int, mask: int, weight: int, profit: int):
        budget.tick()
        if weight > p.capacity or profit + suffix[i] < p.min_profit:
            return
        if i == n:
            yield mask
            return
        yield from rec(i + 1, mask, weight, profit)
        yield from rec(i + 1, mask | 1 << i, weight + p.weights[i], profit + p.profits[i])

    return rec(0, 0, 0, 0)


def _gen_ks(params: dict, rng: random.Random):
    n, hi = params["count"], params["max_value"]
    w = tuple(rng.randint(1, hi) for _ in range(n))
    pr = tuple(rng.randint(1, hi) for _ in range(n))
    return KnapsackPayload(w, pr, rng.randint(0, sum(w)), rng.randint(0, sum(pr)))


# ---- TMS

def _validate_tms(p: SchedulingPayload) -> None:
    _check_values(p.jobs, "jobs")
    check_int(p.deadline, "deadline")


def _verify_tms(p: SchedulingPayload, mask: int) -> bool:
    n = len(p.jobs)
    load = _masked_sum(p.jobs, mask)
    return (n > 0 and bool(mask & _last_bit(n)) and load <= p.deadline
            and sum(p.jobs) - load <= p.deadline)


def _enum_tms(p: SchedulingPayload, budget: Budget):
    n = len(p.jobs)
    if n == 0:
        budget.tick()
        return iter(())
    lo = sum(p.jobs) - p.deadline
    return subsets_with_sum(list(p.jobs), lo, p.deadline, budget, forced=_last_bit(n))


def _gen_tms(params: dict, rng: random.Random):
    n = params["count"]
    jobs = tuple(rng.randint(1, params["max_value"]) for _ in range(n))
    return SchedulingPayload(jobs, (sum(jobs) + 1) // 2 + rng.randint(0, 1))


_DEFAULTS = {"count": 5, "max_value": 9}

register(ProblemDef(
    id="SS", title="Subset Sum", payload_type=NumbersPayload,
    universe=lambda p: [num(i) for i in range(len(p.numbers))],
    validate=_validate_ss,
    verify=lambda p, m: _masked_sum(p.numbers, m) == p.target,
    enumerate=_enum_ss, generate=_gen_ss, default_params=_DEFAULTS,
    k_field="target",
))
register(ProblemDef(
    id="P", title="Partition", payload_type=NumbersPayload,
    universe=lambda p: [num(i) for i in range(len(p.numbers))],
    validate=_validate_p, verify=_verify_p, enumerate=_enum_p,
    generate=_gen_p, default_params=_DEFAULTS,
))
register(ProblemDef(
    id="KS", title="Knapsack", payload_type=KnapsackPayload,
    universe=lambda p: [obj(i) for i in range(len(p.weights))],
    validate=_validate_ks, verify=_verify_ks, enumerate=_enum_ks,
    generate=_gen_ks, default_params=_DEFAULTS,
))
register(ProblemDef(
    id="TMS", title="Two-Machine Scheduling", payload_type=SchedulingPayload,
    universe=lambda p: [job(i) for i in range(len(p.jobs))],
    validate=_validate_tms, verify=_verify_tms, enumerate=_enum_tms,
    generate=_gen_tms, default_params=_DEFAULTS, k_field="deadline",
))
