"""3-Dimensional Matching and its singleton extension 1+3DM."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..core import Budget, InvalidInstance, Payload, bit_indices, singleton, triple
from .base import ProblemDef, check_names, register, vertex_names


@dataclass(frozen=True)
class MatchingPayload(Payload):
    xs: tuple = ()
    ys: tuple = ()
    zs: tuple = ()
    triples: tuple = ()  # (x, y, z) index triples
    singletons: tuple = ()  # x indices, 1+3DM only
    # advisory binding: (singleton position, triple index) pairs
    binding: tuple = ()

    def columns(self) -> list[int]:
        """Per universe position, the mask of covered element columns."""
        def build():
            nx, ny = len(self.xs), len(self.ys)
            out = [1 << x | 1 << (nx + y) | 1 << (nx + ny + z) for x, y, z in self.triples]
            out += [1 << x for x in self.singletons]
            return out
        return self.cached("columns", build)

    @property
    def width(self) -> int:
        return len(self.xs) + len(self.ys) + len(self.zs)


def _validate(p: MatchingPayload, with_singletons: bool) -> None:
    check_names(p.xs, "xs")
    check_names(p.ys, "ys")
    check_names(p.zs, "zs")
    if len(set(p.xs) | set(p.ys) | set(p.zs)) != p.width:
        raise InvalidInstance("X, Y and Z names must be pairwise distinct")
    if not isinstance(p.triples, tuple):
        raise InvalidInstance("triples must be a tuple", "triples")
    sizes = (len(p.xs), len(p.ys), len(p.zs))
    for i, t in enumerate(p.triples):
        path = f"triples[{i}]"
        if not isinstance(t, tuple) or len(t) != 3:
            raise InvalidInstance("expected an (x, y, z) triple", path)
        for v, n in zip(t, sizes):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise InvalidInstance("triple member out of range", path)
    if len(set(p.triples)) != len(p.triples):
        raise InvalidInstance("duplicate triple", "triples")
    if not isinstance(p.singletons, tuple) or not isinstance(p.binding, tuple):
        raise InvalidInstance("singletons and binding must be tuples")
    if not with_singletons:
        if p.singletons or p.binding:
            raise InvalidInstance("3DM instances carry no singletons", "singletons")
        return
    for i, x in enumerate(p.singletons):
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < len(p.xs):
            raise InvalidInstance("singleton out of range", f"singletons[{i}]")
    if len(set(p.singletons)) != len(p.singletons):
        raise InvalidInstance("duplicate singleton", "singletons")
    for i, b in enumerate(p.binding):
        if (not isinstance(b, tuple) or len(b) != 2
                or not 0 <= b[0] < len(p.singletons) or not 0 <= b[1] < len(p.triples)):
            raise InvalidInstance("binding entry out of range", f"binding[{i}]")


def _universe(p: MatchingPayload) -> list:
    out = [triple(p.xs[x], p.ys[y], p.zs[z]) for x, y, z in p.triples]
    out += [singleton(p.xs[x]) for x in p.singletons]
    return out


def _verify(p: MatchingPayload, mask: int) -> bool:
    cols = p.columns()
    seen = 0
    for i in bit_indices(mask):
        if seen & cols[i]:
            return False
        seen |= cols[i]
    return seen == (1 << p.width) - 1


def exact_covers(cols: list[int], width: int, budget: Budget):
    """Algorithm X over row masks; yields row-index masks."""
    by_col = [[] for _ in range(width)]
    for r, c in enumerate(cols):
        for b in bit_indices(c):
            by_col[b].append(r)
    full = (1 << width) - 1

    def rec(covered: int, rows: int):
        budget.tick()
        if covered == full:
            yield rows
            return
        best = None
        for c in bit_indices(full & ~covered):
            opts = [r for r in by_col[c] if not cols[r] & covered]
            if best is None or len(opts) < len(best):
                best = opts
                if len(opts) <= 1:
                    break
        for r in best:
            yield from rec(covered | cols[r], rows | 1 << r)

    yield from rec(0, 0)


def _gen(params: dict, rng: random.Random, with_singletons: bool):
    q = params["size"]
    extra = params["singletons"] if with_singletons else 0
    if q < 1:
        return None
    nx = q + extra
    xs, ys, zs = vertex_names(nx, "x"), vertex_names(q, "y"), vertex_names(q, "z")
    xperm = list(range(nx))
    rng.shuffle(xperm)
    yperm = list(range(q))
    zperm = list(range(q))
    rng.shuffle(yperm)
    rng.shuffle(zperm)
    triples = {(xperm[i], yperm[i], zperm[i]) for i in range(q)}
    for _ in range(params["extra_triples"]):
        triples.add((rng.randrange(nx), rng.randrange(q), rng.randrange(q)))
    singles = ()
    if with_singletons:
        planted = xperm[q:]
        others = [x for x in range(nx) if x not in planted and rng.random() < 0.3]
        singles = tuple(sorted(planted + others))
    return MatchingPayload(xs, ys, zs, tuple(sorted(triples)), singles)


register(ProblemDef(
    id="ODM", title="1+3-Dimensional Matching", payload_type=MatchingPayload,
    universe=_universe, validate=lambda p: _validate(p, True), verify=_verify,
    enumerate=lambda p, b: exact_covers(p.columns(), p.width, b),
    generate=lambda params, rng: _gen(params, rng, True),
    default_params={"size": 3, "singletons": 1, "extra_triples": 4},
))
register(ProblemDef(
    id="DM", title="3-Dimensional Matching", payload_type=MatchingPayload,
    universe=_universe, validate=lambda p: _validate(p, False), verify=_verify,
    enumerate=lambda p, b: exact_covers(p.columns(), p.width, b),
    generate=lambda params, rng: _gen(params, rng, False),
    default_params={"size": 3, "singletons": 0, "extra_triples": 4},
))
