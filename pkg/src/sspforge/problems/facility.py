"""Uncapacitated Facility Location, p-Center and p-Median."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..core import Budget, InvalidInstance, Payload, bit_indices, facility, popcount
from .base import ProblemDef, check_int, check_names, combos, register, vertex_names


@dataclass(frozen=True)
class FacilityPayload(Payload):
    facilities: tuple = ()
    clients: tuple = ()
    opening: tuple = ()  # per facility, UFL only
    costs: tuple = ()  # costs[client][facility]
    k: int = 0
    p: int | None = None  # PCEN / PMED only


def _validate(q: FacilityPayload, kind: str) -> None:
    check_names(q.facilities, "facilities")
    check_names(q.clients, "clients")
    nf = len(q.facilities)
    if not isinstance(q.costs, tuple) or len(q.costs) != len(q.clients):
        raise InvalidInstance("one cost row per client is required", "costs")
    for c, row in enumerate(q.costs):
        if not isinstance(row, tuple) or len(row) != nf:
            raise InvalidInstance("one cost per facility is required", f"costs[{c}]")
        for f, x in enumerate(row):
            check_int(x, f"costs[{c}][{f}]")
    check_int(q.k, "k")
    if kind == "UFL":
        if not isinstance(q.opening, tuple) or len(q.opening) != nf:
            raise InvalidInstance("one opening cost per facility is required", "opening")
        for f, x in enumerate(q.opening):
            check_int(x, f"opening[{f}]")
        if q.p is not None:
            raise InvalidInstance("facility location carries no p", "p")
    else:
        if q.opening:
            raise InvalidInstance(f"{kind} carries no opening costs", "opening")
        check_int(q.p, "p")


def _service(q: FacilityPayload, mask: int) -> list[int] | None:
    if not mask:
        return [] if not q.clients else None
    return [min(row[f] for f in bit_indices(mask)) for row in q.costs]


def _verify_ufl(q: FacilityPayload, mask: int) -> bool:
    service = _service(q, mask)
    if service is None:
        return False
    return sum(q.opening[f] for f in bit_indices(mask)) + sum(service) <= q.k


def _verify_pcen(q: FacilityPayload, mask: int) -> bool:
    if popcount(mask) != q.p:
        return False
    service = _service(q, mask)
    return service is not None and max(service, default=0) <= q.k


def _verify_pmed(q: FacilityPayload, mask: int) -> bool:
    if popcount(mask) != q.p:
        return False
    service = _service(q, mask)
    return service is not None and sum(service) <= q.k


def _enum_ufl(q: FacilityPayload, budget: Budget):
    n = len(q.facilities)
    for m in combos(n, range(n + 1), budget):
        if _verify_ufl(q, m):
            yield m


def _enum_sized(q: FacilityPayload, budget: Budget, verify):
    for m in combos(len(q.facilities), [q.p], budget):
        if verify(q, m):
            yield m


def _gen(params: dict, rng: random.Random, kind: str):
    nf, nc, hi = params["facilities"], params["clients"], params["max_cost"]
    costs = tuple(tuple(rng.randint(0, hi) for _ in range(nf)) for _ in range(nc))
    if kind == "UFL":
        opening = tuple(rng.randint(0, hi) for _ in range(nf))
        return FacilityPayload(vertex_names(nf, "f"), vertex_names(nc, "c"), opening,
                               costs, rng.randint(0, hi * (nf + nc)))
    p = rng.randint(1, max(1, nf))
    k = rng.randint(0, hi * (nc if kind == "PMED" else 1))
    return FacilityPayload(vertex_names(nf, "f"), vertex_names(nc, "c"), (), costs, k, p)


_DEFAULTS = {"facilities": 4, "clients": 4, "max_cost": 4}

for _kind, _title, _verify, _enum in (
    ("UFL", "Uncapacitated Facility Location", _verify_ufl, _enum_ufl),
    ("PCEN", "p-Center", _verify_pcen, lambda q, b: _enum_sized(q, b, _verify_pcen)),
    ("PMED", "p-Median", _verify_pmed, lambda q, b: _enum_sized(q, b, _verify_pmed)),
):
    register(ProblemDef(
        id=_kind, title=_title, payload_type=FacilityPayload,
        universe=lambda q: [facility(f) for f in q.facilities],
        validate=lambda q, _k=_kind: _validate(q, _k),
        verify=_verify, enumerate=_enum,
        generate=lambda params, rng, _k=_kind: _gen(params, rng, _k),
        default_params=_DEFAULTS,
    ))
