"""The reduction graph: problems as nodes, registered reductions as edges.

Reductions compose end to end; the composite is an ordinary ReductionDef whose
claims are the conjunction of its links, so it can be verified like any other.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import InvalidInstance, KindMismatch, SspError
from .problems import PROBLEM_IDS, get_problem
from .reductions import REGISTRY, Built, ClaimFlags, ReductionDef, get_reduction

MAX_CHAIN = 6

# DOT edge style per (ssp, spr)
STYLES = {
    (True, True): "solid",
    (True, False): "dotted",
    (False, True): "dashed",
    (False, False): "invis",
}


# ---------------------------------------------------------------- composition

def _inverse(built: Built, members: set) -> set:
    if built.unlift is not None:
        return set(built.unlift(members))
    back = {v: k for k, v in built.embed.items()}
    return {back[e] for e in members if e in back}


def _chained(first: ReductionDef, second: ReductionDef):
    def construct(instance):
        a = first.build(instance)
        b = second.build(a.target)
        embed = None
        if a.embed is not None and b.embed is not None:
            try:
                embed = {e: b.embed[m] for e, m in a.embed.items()}
            except KeyError as exc:
                raise SspError(f"{second.id} does not embed {exc.args[0]}") from None
        lift = unlift = None
        if a.lift is not None and b.lift is not None:
            def lift(members):
                return b.lift(set(a.lift(members)))
        if (a.unlift is not None or a.embed is not None) and \
                (b.unlift is not None or b.embed is not None):
            def unlift(members):
                return _inverse(a, _inverse(b, set(members)))
        premise = None
        if a.premise is not None or b.premise is not None:
            def premise():
                for part in (a, b):
                    if part.premise is not None:
                        failure = part.premise()
                        if failure:
                            return failure
                return None
        return Built(instance, b.target, embed, lift, unlift, premise)
    return construct


def compose(*reductions: ReductionDef) -> ReductionDef:
    """Chain reductions left to right; a single argument comes back unchanged."""
    if not reductions:
        raise ValueError("compose needs at least one reduction")
    out = reductions[0]
    for nxt in reductions[1:]:
        if out.target != nxt.source:
            raise KindMismatch(f"cannot chain {out.id} ({out.target}) into "
                               f"{nxt.id} ({nxt.source})")
        chain = out.links + nxt.links
        out = ReductionDef(
            id="+".join(chain), source=out.source, target=nxt.target,
            construct=_chained(out, nxt),
            claims=ClaimFlags(out.claims.ssp and nxt.claims.ssp,
                              out.claims.spr and nxt.claims.spr),
            anchor=" then ".join(get_reduction(r).anchor for r in chain),
            has_embedding=out.has_embedding and nxt.has_embedding,
            has_lift=out.has_lift and nxt.has_lift,
            demo=out.demo or nxt.demo,
            sweep_params=out.sweep_params, sweep_source=out.sweep_source,
            growth=None, chain=chain)
    return out


def compose_ids(*ids: str) -> ReductionDef:
    return compose(*(get_reduction(r) for r in ids))


# ---------------------------------------------------------------- the graph

@dataclass
class ReductionGraph:
    nodes: tuple
    edges: tuple  # ReductionDef, registry order
    derived: list = field(default_factory=list)

    def out_edges(self, node: str) -> list[ReductionDef]:
        return [e for e in self.edges if e.source == node]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReductionGraph):
            return NotImplemented
        key = lambda g: (g.nodes, tuple(_edge_key(e) for e in g.edges),
                         tuple(_edge_key(e) for e in g.derived))
        return key(self) == key(other)


def _edge_key(e: ReductionDef) -> tuple:
    return (e.id, e.source, e.target, e.claims, e.demo, e.links)


def _order(nodes) -> tuple:
    rank = {p: i for i, p in enumerate(PROBLEM_IDS)}
    return tuple(sorted(set(nodes), key=lambda p: rank[p]))


def build_graph(registry=REGISTRY, require: ClaimFlags | None = None,
                claims: ClaimFlags | None = None, include_demo: bool = True) -> ReductionGraph:
    """Graph over `registry`.

    `require` keeps edges whose claims include the required properties;
    `claims` keeps edges whose claims are exactly the given flags.
    """
    edges = []
    for r in registry:
        if r.demo and not include_demo:
            continue
        if not r.claims.satisfies(require):
            continue
        if claims is not None and r.claims != claims:
            continue
        edges.append(r)
    nodes = _order([e.source for e in edges] + [e.target for e in edges])
    return ReductionGraph(nodes, tuple(edges))


def transitive_paths(source: str, target: str, require: ClaimFlags | None = None,
                     graph: ReductionGraph | None = None, max_len: int = MAX_CHAIN,
                     include_demo: bool = False) -> list[list[str]]:
    """Acyclic chains of reduction ids from `source` to `target`, shortest first.

    Chains never revisit a problem, so a problem has no path to itself.
    """
    src, tgt = get_problem(source).id, get_problem(target).id
    if graph is None:
        graph = build_graph(include_demo=include_demo)
    found: list[list[str]] = []

    def walk(node: str, visited: set, chain: list, flags: ClaimFlags):
        if len(chain) == max_len:
            return
        for e in graph.out_edges(node):
            if e.target in visited or (e.demo and not include_demo):
                continue
            f = ClaimFlags(flags.ssp and e.claims.ssp, flags.spr and e.claims.spr)
            if not f.satisfies(require):
                continue
            if e.target == tgt:
                found.append(chain + [e.id])
            else:
                walk(e.target, visited | {e.target}, chain + [e.id], f)

    if src != tgt:
        walk(src, {src}, [], ClaimFlags(True, True))
    found.sort(key=lambda c: (len(c), c))
    return found


# ---------------------------------------------------------------- export

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _edge_record(e: ReductionDef) -> dict:
    rec = {"id": e.id, "source": e.source, "target": e.target,
           "ssp": e.claims.ssp, "spr": e.claims.spr}
    if e.demo:
        rec["demo"] = True
    if e.chain:
        rec["chain"] = list(e.chain)
    return rec


def export_json(graph: ReductionGraph) -> dict:
    doc = {
        "version": 1,
        "nodes": [{"id": p, "title": get_problem(p).title} for p in graph.nodes],
        "edges": [_edge_record(e) for e in graph.edges],
    }
    if graph.derived:
        doc["derived"] = [_edge_record(e) for e in graph.derived]
    return doc


def export_dot(graph: ReductionGraph) -> str:
    lines = ["digraph reductions {", "  rankdir=LR;", "  node [shape=box];"]
    for p in graph.nodes:
        lines.append(f"  {p} [label={_quote(p)}, tooltip={_quote(get_problem(p).title)}];")
    for e in list(graph.edges) + list(graph.derived):
        attrs = [f"id={_quote(e.id)}", f"style={STYLES[e.claims.ssp, e.claims.spr]}"]
        if e.demo:
            attrs += ["color=gray", 'class="demo"']
        if e.chain:
            attrs.append(f"label={_quote(' > '.join(e.chain))}")
        lines.append(f"  {e.source} -> {e.target} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_graph(graph: ReductionGraph, format: str = "dot"):
    """DOT text or a JSON-ready dict; both are byte-stable for a fixed graph."""
    if format == "dot":
        return export_dot(graph)
    if format == "json":
        return export_json(graph)
    raise ValueError(f"unknown graph format {format!r}")


def graph_from_json(document) -> ReductionGraph:
    """Inverse of export_json; edges are resolved against the registry."""
    if isinstance(document, str):
        document = json.loads(document)
    try:
        nodes = tuple(n["id"] for n in document["nodes"])
        edges = tuple(_resolve(rec) for rec in document["edges"])
        derived = [_resolve(rec) for rec in document.get("derived", [])]
    except (KeyError, TypeError) as exc:
        raise InvalidInstance(f"malformed graph document: {exc}") from None
    return ReductionGraph(_order(nodes), edges, derived)


def _resolve(rec: dict) -> ReductionDef:
    red = compose_ids(*rec["chain"]) if "chain" in rec else get_reduction(rec["id"])
    if (red.source, red.target) != (rec["source"], rec["target"]):
        raise InvalidInstance(f"edge {rec['id']} does not match the registry")
    return red


def materialize(chain: list[str]) -> ReductionDef:
    """A single reduction running the given chain of registry ids."""
    return compose_ids(*chain)


def chain_targets(red: ReductionDef, instance) -> list:
    """Every intermediate instance along a composite, source first."""
    out = [instance]
    for rid in red.links:
        out.append(get_reduction(rid).build(out[-1]).target)
    return out


__all__ = [
    "MAX_CHAIN", "ReductionGraph", "STYLES", "build_graph", "chain_targets", "compose",
    "compose_ids", "export_dot", "export_graph", "export_json", "graph_from_json",
    "materialize", "transitive_paths",
]
