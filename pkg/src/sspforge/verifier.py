"""Empirical certification of the SSP property, parsimony and the universe partition.

Every check enumerates both solution sets exhaustively, so the verdicts are exact
for the instance at hand and say nothing about instances that were not tried.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .core import (
    Budget, BudgetExceeded, Instance, NoEmbedding, SolutionSet, UnsupportedShape,
    as_budget, bit_indices,
)
from .problems import enumerate_solutions, generate_instance, universe_of
from .reductions import Built, ReductionDef, embed_mask, encoding_size, raw_lift

log = logging.getLogger(__name__)

MAX_WITNESSES = 3
NO_EMBEDDING = "no registered f_I"


@dataclass
class PartitionCertificate:
    s_rep: int  # masks over the target universe
    s_all: int
    s_nev: int
    s_link: int
    link_map: dict  # source solution mask -> linked target elements (mask)
    valid: bool
    failure_reason: str | None = None
    vacuous: bool = False


@dataclass
class VerificationReport:
    reduction_id: str
    fingerprint: str
    source_count: int
    target_count: int
    ssp_holds: bool
    spr_holds: bool
    ssp_reason: str | None = None
    spr_reason: str | None = None
    partition: PartitionCertificate | None = None
    # property name -> list of witnesses, each a dict of rendered element lists
    witnesses: dict = field(default_factory=dict)
    claims_ssp: bool = False
    claims_spr: bool = False
    claims_matched: bool = True
    premise_failure: str | None = None
    vacuous: bool = False
    nodes: int = 0
    elapsed: float = 0.0
    source_universe: object = field(default=None, repr=False)
    target_universe: object = field(default=None, repr=False)


# ---------------------------------------------------------------- shared enumeration

@dataclass
class _Sides:
    red: ReductionDef
    built: Built
    source: SolutionSet
    target: SolutionSet

    @property
    def has_embedding(self) -> bool:
        return self.built.embed is not None

    def rep_mask(self) -> int:
        return embed_mask(self.built, self.source.universe.full)

    def image(self, mask: int) -> int:
        return embed_mask(self.built, mask)

    def render_source(self, mask: int) -> list[str]:
        return [str(e) for e in self.source.universe.members(mask)]

    def render_target(self, mask: int) -> list[str]:
        return [str(e) for e in self.target.universe.members(mask)]


def _sides(red: ReductionDef, instance: Instance, budget: Budget) -> _Sides:
    built = red.build(instance)
    source = enumerate_solutions(None, instance, budget)
    target = enumerate_solutions(None, built.target, budget)
    return _Sides(red, built, source, target)


def _check_embedding(sides: _Sides) -> None:
    if not sides.has_embedding:
        raise NoEmbedding(f"{sides.red.id} registers no universe embedding")
    images = list(sides.built.embed.values())
    if len(set(images)) != len(images):
        raise NoEmbedding(f"{sides.red.id}: embedding is not injective")
    tu = sides.target.universe
    for e in images:
        if e not in tu:
            raise NoEmbedding(f"{sides.red.id}: {e} is not in the target universe")


# ---------------------------------------------------------------- the three checks

def _ssp(sides: _Sides) -> tuple[bool, list]:
    _check_embedding(sides)
    rep = sides.rep_mask()
    images = {sides.image(m): m for m in sides.source.masks}
    seen = {t & rep for t in sides.target.masks}
    witnesses = []
    for img in sorted(set(images) - seen):
        witnesses.append({"source": sides.render_source(images[img]),
                          "problem": "image of this source solution is never realized"})
    for part in sorted(seen - set(images)):
        t = min(x for x in sides.target.masks if x & rep == part)
        witnesses.append({"target": sides.render_target(t),
                          "problem": "target solution projects outside the source image"})
    return not witnesses, witnesses[:MAX_WITNESSES]


def _parsimony(sides: _Sides, limit: int | None = MAX_WITNESSES) -> tuple[bool, list, str | None]:
    src, tgt = sides.source.masks, sides.target.masks
    witnesses: list = []
    reason = None
    if sides.built.lift is not None:
        lifted = {}
        for m in sorted(src):
            t = raw_lift(sides.built, m)
            if t not in tgt:
                witnesses.append({"source": sides.render_source(m),
                                  "lifted": sides.render_target(t),
                                  "problem": "lift is not a target solution"})
            elif t in lifted:
                witnesses.append({"source": sides.render_source(m),
                                  "lifted": sides.render_target(t),
                                  "problem": "two source solutions lift to the same target"})
            lifted.setdefault(t, m)
        for t in sorted(tgt - set(lifted)):
            witnesses.append({"target": sides.render_target(t),
                              "problem": "target solution is not the lift of any source"})
        if witnesses:
            reason = "lift is not a bijection"
    elif sides.has_embedding:
        # without a lift, group target solutions by their representative part
        rep = sides.rep_mask()
        groups: dict[int, list[int]] = {}
        for t in sorted(tgt):
            groups.setdefault(t & rep, []).append(t)
        for m in sorted(src):
            mates = groups.get(sides.image(m), [])
            if len(mates) > 1:
                witnesses.append({"source": sides.render_source(m),
                                  "targets": [sides.render_target(t) for t in mates],
                                  "problem": f"{len(mates)} equivalent target solutions"})
        if witnesses:
            reason = "a source solution has several equivalent target solutions"
    if len(src) != len(tgt) and reason is None:
        reason = "solution counts differ"
    holds = len(src) == len(tgt) and not witnesses
    return holds, witnesses[:limit], reason


def _partition(sides: _Sides) -> PartitionCertificate:
    _check_embedding(sides)
    full = sides.target.universe.full
    rep = sides.rep_mask()
    tgt = sorted(sides.target.masks)
    if not tgt:
        return PartitionCertificate(rep, 0, full & ~rep, 0, {}, True, vacuous=True)
    inter, union = full, 0
    for t in tgt:
        inter &= t
        union |= t
    s_all = inter & ~rep
    s_nev = full & ~union & ~rep
    s_link = full & ~(rep | s_all | s_nev)
    by_part: dict[int, int] = {}
    reason = None
    for t in tgt:
        part = t & rep
        if part in by_part:
            reason = "two target solutions share a representative part"
            break
        by_part[part] = t
    images = {sides.image(m): m for m in sides.source.masks}
    if reason is None and set(by_part) != set(images):
        reason = "representative parts do not match the source solutions"
    link_map = {}
    if reason is None:
        for part, t in by_part.items():
            link_map[images[part]] = t & s_link
    return PartitionCertificate(rep, s_all, s_nev, s_link, link_map, reason is None, reason)


def reconstruct(cert: PartitionCertificate, built: Built) -> list[int]:
    """Target solutions rebuilt from (representative part, s_all, linked part)."""
    out = []
    for m, linked in sorted(cert.link_map.items()):
        out.append(embed_mask(built, m) | cert.s_all | linked)
    return out


# ---------------------------------------------------------------- public operations

def check_ssp(red: ReductionDef, instance: Instance, budget=None) -> tuple[bool, list]:
    return _ssp(_sides(red, instance, as_budget(budget)))


def check_parsimonious(red: ReductionDef, instance: Instance,
                       budget=None) -> tuple[bool, int, int]:
    sides = _sides(red, instance, as_budget(budget))
    holds, _, _ = _parsimony(sides)
    return holds, len(sides.source), len(sides.target)


def parsimony_witnesses(red: ReductionDef, instance: Instance, budget=None) -> list:
    """Every parsimony witness, uncapped."""
    return _parsimony(_sides(red, instance, as_budget(budget)), None)[1]


def classify_partition(red: ReductionDef, instance: Instance,
                       budget=None) -> PartitionCertificate:
    return _partition(_sides(red, instance, as_budget(budget)))


def full_report(red: ReductionDef, instance: Instance, budget=None) -> VerificationReport:
    from .formats import fingerprint

    budget = as_budget(budget)
    started = time.perf_counter()
    built = red.build(instance)
    premise = built.premise() if built.premise else None
    sides = _sides(red, instance, budget)
    report = VerificationReport(
        reduction_id=red.id, fingerprint=fingerprint(instance),
        source_count=len(sides.source), target_count=len(sides.target),
        ssp_holds=False, spr_holds=False,
        claims_ssp=red.claims.ssp, claims_spr=red.claims.spr,
        premise_failure=premise, vacuous=not sides.target.masks,
        source_universe=sides.source.universe, target_universe=sides.target.universe,
    )
    if sides.has_embedding:
        report.ssp_holds, w = _ssp(sides)
        if w:
            report.witnesses["ssp"] = w
            report.ssp_reason = "solution images differ"
        report.partition = _partition(sides)
    else:
        report.ssp_reason = NO_EMBEDDING
    report.spr_holds, w, report.spr_reason = _parsimony(sides)
    if w:
        report.witnesses["spr"] = w
    if premise is None:
        report.claims_matched = ((not red.claims.ssp or report.ssp_holds)
                                 and (not red.claims.spr or report.spr_holds))
    report.nodes = budget.nodes
    report.elapsed = time.perf_counter() - started
    return report


def growth_ok(red: ReductionDef, instance: Instance) -> bool:
    """|target universe| within the registered cubic bound of the source size."""
    if red.growth is None:
        return True
    target = red.build(instance).target
    return len(universe_of(target)) <= red.growth * encoding_size(instance) ** 3


def sweep_instance(red: ReductionDef, seed: int, params: dict | None = None) -> Instance:
    if params is None and red.sweep_source is not None:
        return red.sweep_source(seed)
    return generate_instance(red.source, params if params is not None else red.sweep_params,
                             seed)


@dataclass
class Trial:
    index: int
    seed: int
    instance: Instance | None
    report: VerificationReport | None = None
    error: str | None = None


def sweep(red: ReductionDef, trials: int, seed: int = 0, params: dict | None = None,
          budget: int | None = None):
    """Yield one Trial per seed, in order; budget overruns are recorded, not raised."""
    for i in range(trials):
        s = seed + i
        inst = sweep_instance(red, s, params)
        trial = Trial(i, s, inst)
        try:
            trial.report = full_report(red, inst, Budget(budget))
        except UnsupportedShape as exc:
            trial.error = f"unsupported: {exc}"
        except BudgetExceeded as exc:
            trial.error = f"budget: {exc}"
        yield trial


def _fails(report: VerificationReport, prop: str) -> bool:
    if prop == "ssp":
        return not report.ssp_holds
    if prop == "spr":
        return not report.spr_holds
    if prop == "partition":
        return report.partition is None or not report.partition.valid
    raise ValueError(f"unknown property {prop!r}")


def search_counterexample(red: ReductionDef, prop: str, params: dict | None = None,
                          trials: int = 50, seed: int = 0, budget: int | None = None,
                          errors: list | None = None):
    """First (instance, report) where `prop` fails, or None after `trials` tries."""
    for trial in sweep(red, trials, seed, params, budget):
        if trial.error:
            log.info("%s trial %d: %s", red.id, trial.index, trial.error)
            if errors is not None:
                errors.append((trial.index, trial.error))
            continue
        if _fails(trial.report, prop):
            return trial.instance, trial.report
    return None


def mask_names(universe, mask: int) -> list[str]:
    return [str(universe[i]) for i in bit_indices(mask)]


__all__ = [
    "MAX_WITNESSES", "NO_EMBEDDING", "PartitionCertificate", "Trial", "VerificationReport",
    "check_parsimonious", "check_ssp", "classify_partition", "full_report", "growth_ok",
    "mask_names", "parsimony_witnesses", "reconstruct", "search_counterexample", "sweep",
    "sweep_instance",
]
