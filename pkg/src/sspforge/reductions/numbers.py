"""Subset sum, knapsack, partition and two-machine scheduling."""

from __future__ import annotations

from ..core import Instance, job, num, obj
from ..problems import KnapsackPayload, NumbersPayload, SchedulingPayload
from .base import Built, require, target


def ss_to_ks(inst: Instance) -> Built:
    p = inst.payload
    out = target("KS", KnapsackPayload(p.numbers, p.numbers, p.target, p.target))
    emb = {num(i): obj(i) for i in range(len(p.numbers))}
    return Built(inst, out, emb, lambda members: [emb[x] for x in members])


def ss_to_p(inst: Instance) -> Built:
    p = inst.payload
    last = sum(p.numbers) + 1 - p.target
    require(last >= 0, "target exceeds the total plus one")
    n = len(p.numbers)
    out = target("P", NumbersPayload(p.numbers + (p.target + 1, last)))
    emb = {num(i): num(i) for i in range(n)}
    return Built(inst, out, emb, lambda members: list(members) + [num(n + 1)])


def p_to_tms(inst: Instance) -> Built:
    p = inst.payload
    out = target("TMS", SchedulingPayload(p.numbers, sum(p.numbers) // 2))
    emb = {num(i): job(i) for i in range(len(p.numbers))}
    return Built(inst, out, emb, lambda members: [emb[x] for x in members])
