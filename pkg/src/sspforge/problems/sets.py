"""Set Cover, Hitting Set and Set Packing over an indexed set family."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..core import Budget, InvalidInstance, Payload, obj, popcount, setidx
from .base import (
    ProblemDef, check_int, check_names, cliques_of_size, hitting_sets,
    pick_constraint, register, vertex_names,
)


@dataclass(frozen=True)
class SetFamily(Payload):
    elements: tuple = ()
    sets: tuple = ()  # tuple of sorted element-index tuples
    k: int = 0
    exact: bool = False  # size exactly k instead of at most k (SC / HS)

    def set_masks(self) -> list[int]:
        def build():
            out = []
            for s in self.sets:
                m = 0
                for e in s:
                    m |= 1 << e
                out.append(m)
            return out
        return self.cached("set_masks", build)

    def containing(self) -> list[int]:
        """For each element, the mask of set indices that contain it."""
        def build():
            out = [0] * len(self.elements)
            for i, s in enumerate(self.sets):
                for e in s:
                    out[e] |= 1 << i
            return out
        return self.cached("containing", build)


def _validate(p: SetFamily) -> None:
    check_names(p.elements, "elements")
    check_int(p.k, "k")
    if not isinstance(p.exact, bool):
        raise InvalidInstance("exact must be a boolean")
    if not isinstance(p.sets, tuple):
        raise InvalidInstance("sets must be a tuple")
    n = len(p.elements)
    for i, s in enumerate(p.sets):
        path = f"sets[{i}]"
        if not isinstance(s, tuple):
            raise InvalidInstance("set must be a tuple", path)
        for e in s:
            if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < n:
                raise InvalidInstance("element index out of range", path)
        if list(s) != sorted(set(s)):
            raise InvalidInstance("set members must be sorted and distinct", path)


def _size_ok(p: SetFamily, mask: int) -> bool:
    size = popcount(mask)
    return size == p.k if p.exact else size <= p.k


def _verify_sc(p: SetFamily, mask: int) -> bool:
    return _size_ok(p, mask) and all(mask & c for c in p.containing())


def _verify_hs(p: SetFamily, mask: int) -> bool:
    return _size_ok(p, mask) and all(mask & s for s in p.set_masks())


def _disjoint_adj(p: SetFamily) -> list[int]:
    masks = p.set_masks()
    adj = []
    for i, a in enumerate(masks):
        row = 0
        for j, b in enumerate(masks):
            if i != j and not a & b:
                row |= 1 << j
        adj.append(row)
    return adj


def _verify_sp(p: SetFamily, mask: int) -> bool:
    if popcount(mask) != p.k:
        return False
    masks = p.set_masks()
    seen = 0
    for i in range(len(masks)):
        if mask >> i & 1:
            if seen & masks[i]:
                return False
            seen |= masks[i]
    return True


def _enum_sc(p: SetFamily, budget: Budget):
    cons = p.containing()
    return hitting_sets(len(p.sets), lambda c, f: pick_constraint(cons, c, f),
                        p.k, p.exact, budget)


def _enum_hs(p: SetFamily, budget: Budget):
    cons = p.set_masks()
    return hitting_sets(len(p.elements), lambda c, f: pick_constraint(cons, c, f),
                        p.k, p.exact, budget)


def _gen_family(params: dict, rng: random.Random) -> SetFamily:
    n, m = params["elements"], params["sets"]
    sets = []
    for _ in range(m):
        size = rng.randint(1, max(1, min(n, params["max_size"])))
        sets.append(set(rng.sample(range(n), size)) if n else set())
    if sets:
        for e in range(n):
            if not any(e in s for s in sets):
                rng.choice(sets).add(e)
    sets = [tuple(sorted(s)) for s in sets]
    return SetFamily(vertex_names(n, "e"), tuple(sets), 0, False)


_DEFAULTS = {"elements": 5, "sets": 5, "max_size": 3}

register(ProblemDef(
    id="SC", title="Set Cover", payload_type=SetFamily,
    universe=lambda p: [setidx(i) for i in range(len(p.sets))],
    validate=_validate, verify=_verify_sc, enumerate=_enum_sc,
    generate=_gen_family, default_params=_DEFAULTS, optimum="min",
))
register(ProblemDef(
    id="HS", title="Hitting Set", payload_type=SetFamily,
    universe=lambda p: [obj(e) for e in p.elements],
    validate=_validate, verify=_verify_hs, enumerate=_enum_hs,
    generate=_gen_family, default_params=_DEFAULTS, optimum="min",
))
register(ProblemDef(
    id="SP", title="Set Packing", payload_type=SetFamily,
    universe=lambda p: [setidx(i) for i in range(len(p.sets))],
    validate=_validate, verify=_verify_sp,
    enumerate=lambda p, b: cliques_of_size(len(p.sets), _disjoint_adj(p), p.k, b),
    generate=_gen_family, default_params=_DEFAULTS, optimum="max",
))
