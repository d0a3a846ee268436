"""Universe elements, instances, solutions, budgets and the error hierarchy."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, NamedTuple

TAGS = (
    "Lit", "Vertex", "Edge", "Arc", "Num", "Obj", "Triple",
    "Singleton", "SetIdx", "Facility", "Job",
)

DEFAULT_BUDGET = 50_000_000
BUDGET_ENV = "SSPFORGE_BUDGET"


# ---------------------------------------------------------------- errors

class SspError(Exception):
    """Base class; `exit_code` is what the CLI returns for it."""

    exit_code = 3


class InvalidInstance(SspError):
    exit_code = 1

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UnsupportedShape(InvalidInstance):
    pass


class KindMismatch(SspError):
    exit_code = 1


class UniverseMismatch(SspError):
    exit_code = 1


class ElementNotInUniverse(SspError):
    exit_code = 1


class NoEmbedding(SspError):
    exit_code = 1


class NoLifting(SspError):
    exit_code = 1


class NotASolution(SspError):
    exit_code = 1


class NoSolution(SspError):
    exit_code = 1


class GenerationFailed(SspError):
    pass


class BudgetExceeded(SspError):
    exit_code = 2

    def __init__(self, nodes: int, limit: int):
        self.nodes = nodes
        self.limit = limit
        super().__init__(f"node budget exceeded ({nodes} > {limit})")


# ---------------------------------------------------------------- budget

def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            value = 0
        if value > 0:
            return value
    return DEFAULT_BUDGET


class Budget:
    """Counts search nodes; raises BudgetExceeded past the limit."""

    __slots__ = ("limit", "nodes")

    def __init__(self, limit: int | None = None):
        self.limit = default_budget() if limit is None else int(limit)
        if self.limit <= 0:
            raise ValueError("budget must be positive")
        self.nodes = 0

    def tick(self, n: int = 1) -> None:
        self.nodes += n
        if self.nodes > self.limit:
            raise BudgetExceeded(self.nodes, self.limit)

    def __repr__(self) -> str:
        return f"Budget({self.nodes}/{self.limit})"


def as_budget(budget: "Budget | int | None") -> Budget:
    if isinstance(budget, Budget):
        return budget
    return Budget(budget)


# ---------------------------------------------------------------- elements

class Element(NamedTuple):
    tag: str
    key: tuple

    def __str__(self) -> str:
        return render_element(self)


def lit(var: str, positive: bool = True) -> Element:
    return Element("Lit", (var, bool(positive)))


def vertex(name: str) -> Element:
    return Element("Vertex", (name,))


def edge(u: str, v: str) -> Element:
    a, b = sorted((u, v))
    return Element("Edge", (a, b))


def arc(u: str, v: str) -> Element:
    return Element("Arc", (u, v))


def num(index: int) -> Element:
    return Element("Num", (index,))


def obj(key) -> Element:
    return Element("Obj", (key,))


def triple(x: str, y: str, z: str) -> Element:
    return Element("Triple", (x, y, z))


def singleton(x: str) -> Element:
    return Element("Singleton", (x,))


def setidx(index: int) -> Element:
    return Element("SetIdx", (index,))


def facility(name: str) -> Element:
    return Element("Facility", (name,))


def job(index: int) -> Element:
    return Element("Job", (index,))


def render_element(e: Element) -> str:
    tag, key = e
    if tag == "Lit":
        return key[0] if key[1] else "~" + key[0]
    if tag == "Edge":
        return "{%s,%s}" % key
    if tag in ("Arc", "Triple"):
        return "(" + ",".join(str(k) for k in key) + ")"
    if tag == "Num":
        return f"a{key[0] + 1}"
    if tag == "SetIdx":
        return f"S{key[0] + 1}"
    if tag == "Job":
        return f"j{key[0] + 1}"
    if tag == "Singleton":
        return f"[{key[0]}]"
    if tag == "Obj" and isinstance(key[0], int):
        return f"o{key[0] + 1}"
    return str(key[0])


# ---------------------------------------------------------------- bits

def bit_indices(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


# ---------------------------------------------------------------- universe

class Universe:
    """Ordered, duplicate-free element list with a position index."""

    __slots__ = ("elements", "_index")

    def __init__(self, elements: Iterable[Element]):
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            seen = set()
            for e in self.elements:
                if e in seen:
                    raise InvalidInstance(f"duplicate universe element {e}")
                seen.add(e)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> Element:
        return self.elements[i]

    def __contains__(self, e) -> bool:
        return e in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, Universe) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return "Universe[" + ", ".join(map(str, self.elements)) + "]"

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, e: Element) -> int:
        try:
            return self._index[e]
        except KeyError:
            raise ElementNotInUniverse(f"{e} is not in the universe") from None

    def mask(self, elements: Iterable[Element]) -> int:
        m = 0
        for e in elements:
            m |= 1 << self.index(e)
        return m

    def members(self, mask: int) -> list[Element]:
        if mask >> len(self.elements):
            raise UniverseMismatch("mask has bits outside the universe")
        return [self.elements[i] for i in bit_indices(mask)]


# ---------------------------------------------------------------- instances

@dataclass(frozen=True)
class Payload:
    """Base for kind-specific payloads; `_cache` holds derived structures."""

    _cache: dict = field(default_factory=dict, init=False, repr=False,
                         compare=False, hash=False)

    def cached(self, key, build):
        try:
            return self._cache[key]
        except KeyError:
            value = self._cache[key] = build()
            return value


@dataclass(frozen=True)
class Instance:
    kind: str
    payload: Any
    name: str | None = field(default=None, compare=False)
    note: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Solution:
    universe: Universe
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.universe):
            raise UniverseMismatch("solution mask has bits outside the universe")

    @classmethod
    def of(cls, universe: Universe, elements: Iterable[Element]) -> "Solution":
        return cls(universe, universe.mask(elements))

    def members(self) -> list[Element]:
        return self.universe.members(self.mask)

    def __len__(self) -> int:
        return popcount(self.mask)

    def __contains__(self, e) -> bool:
        return e in self.universe and bool(self.mask >> self.universe.index(e) & 1)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members())) + "}"


@dataclass(frozen=True)
class SolutionSet:
    universe: Universe
    masks: frozenset
    complete: bool = True
    nodes: int = 0

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Solution]:
        for m in sorted(self.masks):
            yield Solution(self.universe, m)

    def __contains__(self, item) -> bool:
        if isinstance(item, Solution):
            return item.universe == self.universe and item.mask in self.masks
        return item in self.masks

    def element_sets(self) -> list[list[Element]]:
        return [self.universe.members(m) for m in sorted(self.masks)]


def solution_equal_sets(a: SolutionSet, b: SolutionSet) -> bool:
    if a.universe != b.universe:
        raise UniverseMismatch("solution sets are defined over different universes")
    return a.masks == b.masks


def canonical_universe(instance: Instance) -> Universe:
    from .problems import universe_of

    return universe_of(instance)


def fresh_name(base: str, taken: set) -> str:
    """Return `base` or a primed variant not in `taken`, and reserve it."""
    name = base
    while name in taken:
        name += "'"
    taken.add(name)
    return name
