"""Reduction records and the operations applied to them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from ..core import (
    Element, ElementNotInUniverse, Instance, KindMismatch, NoEmbedding,
    NoLifting, NotASolution, Solution, SspError, UnsupportedShape,
)
from ..problems import get_problem, make_instance, universe_of, verify_solution


@dataclass(frozen=True)
class ClaimFlags:
    ssp: bool
    spr: bool

    def satisfies(self, require: "ClaimFlags | None") -> bool:
        if require is None:
            return True
        return (self.ssp or not require.ssp) and (self.spr or not require.spr)

    def __str__(self) -> str:
        return f"ssp={'yes' if self.ssp else 'no'} spr={'yes' if self.spr else 'no'}"


@dataclass
class Built:
    """Everything a reduction produces for one source instance."""

    source: Instance
    target: Instance
    embed: dict | None  # source element -> target element
    lift: Callable[[set], Iterable[Element]] | None = None
    unlift: Callable[[set], Iterable[Element]] | None = None
    # empirically checked precondition; None when the reduction has none
    premise: Callable[[], str | None] | None = None


@dataclass(frozen=True)
class ReductionDef:
    id: str
    source: str
    target: str
    construct: Callable[[Instance], Built] = field(repr=False)
    claims: ClaimFlags
    anchor: str
    has_embedding: bool = True
    has_lift: bool = True
    demo: bool = False
    # source generator parameters for the randomized sweep
    sweep_params: dict = field(default_factory=dict, compare=False)
    # optional override producing sweep sources (seed -> Instance)
    sweep_source: Callable[[int], Instance] | None = field(default=None, compare=False)
    # |U'| <= growth * size^3; None exempts an exponential construction
    growth: float | None = 1.0
    chain: tuple = ()

    @property
    def links(self) -> tuple:
        return self.chain or (self.id,)

    def build(self, instance: Instance) -> Built:
        if get_problem(instance.kind).id != self.source:
            raise KindMismatch(
                f"{self.id} expects an instance of {self.source}, got {instance.kind}")
        universe_of(instance)  # validates the source
        return instance.payload.cached(("red", self.id), lambda: self._construct(instance))

    def _construct(self, instance: Instance) -> Built:
        built = self.construct(instance)
        if built.target.kind != self.target:
            raise SspError(f"{self.id} produced a {built.target.kind} instance")
        return built


# ---------------------------------------------------------------- helpers for constructions

def target(kind: str, payload) -> Instance:
    return make_instance(kind, payload)


def require(condition: bool, message: str) -> None:
    if not condition:
        raise UnsupportedShape(message)


# ---------------------------------------------------------------- public operations

def apply_reduction(red: ReductionDef, instance: Instance) -> Instance:
    return red.build(instance).target


def embedding(red: ReductionDef, instance: Instance) -> dict:
    built = red.build(instance)
    if built.embed is None:
        raise NoEmbedding(f"{red.id} registers no universe embedding")
    return built.embed


def embed_element(red: ReductionDef, instance: Instance, e: Element) -> Element:
    if e not in universe_of(instance):
        raise ElementNotInUniverse(f"{e} is not in the source universe")
    return embedding(red, instance)[e]


def embed_mask(built: Built, mask: int) -> int:
    su, tu = universe_of(built.source), universe_of(built.target)
    return tu.mask(built.embed[e] for e in su.members(mask))


def raw_lift(built: Built, mask: int) -> int:
    """Lift a source mask without checking that it is a solution."""
    su, tu = universe_of(built.source), universe_of(built.target)
    return tu.mask(built.lift(set(su.members(mask))))


def raw_unlift(built: Built, mask: int) -> int:
    su, tu = universe_of(built.source), universe_of(built.target)
    members = set(tu.members(mask))
    if built.unlift is not None:
        return su.mask(built.unlift(members))
    inverse = {v: k for k, v in built.embed.items()}
    return su.mask(inverse[e] for e in members if e in inverse)


def _as_mask(universe, s) -> int:
    if isinstance(s, Solution):
        if s.universe != universe:
            raise NotASolution("solution is over a different universe")
        return s.mask
    return universe.mask(s)


def lift_solution(red: ReductionDef, instance: Instance, s) -> Solution:
    built = red.build(instance)
    if built.lift is None:
        raise NoLifting(f"{red.id} registers no solution lifting")
    su = universe_of(instance)
    mask = _as_mask(su, s)
    if not verify_solution(None, instance, mask):
        raise NotASolution("argument is not a source solution")
    return Solution(universe_of(built.target), raw_lift(built, mask))


def unlift_solution(red: ReductionDef, instance: Instance, s) -> Solution:
    built = red.build(instance)
    if built.unlift is None and built.embed is None:
        raise NoLifting(f"{red.id} registers no inverse lifting")
    tu = universe_of(built.target)
    mask = _as_mask(tu, s)
    if not verify_solution(None, built.target, mask):
        raise NotASolution("argument is not a target solution")
    return Solution(universe_of(instance), raw_unlift(built, mask))


def encoding_size(instance: Instance) -> int:
    """Number of scalar atoms in the payload; the size used for growth bounds."""
    def count(x) -> int:
        if isinstance(x, (tuple, list)):
            return sum(count(y) for y in x) + 1
        return 1

    p = instance.payload
    return sum(count(getattr(p, f)) for f in p.__dataclass_fields__ if f != "_cache")
