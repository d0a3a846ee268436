"""JSON documents for instances, solutions and reports, plus DIMACS CNF import.

Instance documents are flat objects: ``{"version": 1, "problem": "ss",
"numbers": [1, 2, 3, 4], "target": 5}``.  Names stand for vertices and other
atoms; their order in the document is the universe order.  Integers beyond
2^53 are written as decimal strings so they survive JSON readers that use
doubles.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .core import Instance, InvalidInstance, KindMismatch, Solution, SolutionSet, bit_indices
from .problems import (
    CNF, DigraphK, FacilityPayload, GraphK, HamPayload, KnapsackPayload,
    MatchingPayload, NumbersPayload, SchedulingPayload, SetFamily, SteinerPayload,
    TSPPayload, VCVPayload, get_problem, make_instance, minimum_cardinality,
    universe_of, with_k,
)

VERSION = 1
SAFE_INT = 2 ** 53
META = ("name", "note")


class SchemaError(InvalidInstance):
    """The document does not have the shape of a version-1 document."""


class ValidationError(InvalidInstance):
    """The document is well-formed but describes an invalid instance."""


class ParseError(InvalidInstance):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


# ---------------------------------------------------------------- scalar helpers

def _out_int(x: int):
    return str(x) if abs(x) > SAFE_INT else x


def _in_int(value, path: str) -> int:
    if isinstance(value, bool):
        raise ValidationError("expected an integer", path)
    if isinstance(value, int):
        return value
    if isinstance(value, str) and value.lstrip("-").isdigit():
        return int(value)
    raise ValidationError("expected an integer", path)


def _in_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise ValidationError("expected a list", path)
    return value


def _in_names(value, path: str) -> tuple:
    items = _in_list(value, path)
    for i, x in enumerate(items):
        if not isinstance(x, str) or not x:
            raise ValidationError("expected a non-empty string", f"{path}[{i}]")
    if len(set(items)) != len(items):
        raise ValidationError("duplicate name", path)
    return tuple(items)


def _in_ints(value, path: str) -> tuple:
    return tuple(_in_int(x, f"{path}[{i}]") for i, x in enumerate(_in_list(value, path)))


def _lookup(names: tuple) -> dict:
    return {n: i for i, n in enumerate(names)}


def _in_ref(value, table: dict, path: str) -> int:
    if not isinstance(value, str) or value not in table:
        raise ValidationError(f"unknown name {value!r}", path)
    return table[value]


def _in_pairs(value, names: tuple, path: str, directed: bool) -> tuple:
    table = _lookup(names)
    out = []
    for i, pair in enumerate(_in_list(value, path)):
        here = f"{path}[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise ValidationError("expected a pair of names", here)
        u, v = (_in_ref(x, table, here) for x in pair)
        out.append((u, v) if directed or u < v else (v, u))
    return tuple(out)


def _out_pairs(pairs, names) -> list:
    return [[names[u], names[v]] for u, v in pairs]


# ---------------------------------------------------------------- per-kind codecs

def _enc_cnf(p: CNF) -> dict:
    return {"variables": list(p.variables), "clauses": [list(c) for c in p.clauses]}


def _dec_cnf(d: dict) -> CNF:
    variables = _in_names(d["variables"], "variables")
    clauses = []
    for j, c in enumerate(_in_list(d["clauses"], "clauses")):
        clauses.append(_in_ints(c, f"clauses[{j}]"))
    return CNF(variables, tuple(clauses))


def _enc_graph(p: GraphK) -> dict:
    return {"vertices": list(p.vertices), "edges": _out_pairs(p.edges, p.vertices), "k": p.k}


def _dec_graph(d: dict) -> GraphK:
    vertices = _in_names(d["vertices"], "vertices")
    return GraphK(vertices, _in_pairs(d["edges"], vertices, "edges", False),
                  _in_int(d["k"], "k"))


def _enc_vcv(p: VCVPayload) -> dict:
    return dict(_enc_graph(p), fixed=p.vertices[p.fixed])


def _dec_vcv(d: dict) -> VCVPayload:
    g = _dec_graph(d)
    return VCVPayload(g.vertices, g.edges, g.k, _in_ref(d["fixed"], _lookup(g.vertices), "fixed"))


def _enc_digraph(p: DigraphK) -> dict:
    return {"vertices": list(p.vertices), "arcs": _out_pairs(p.arcs, p.vertices), "k": p.k}


def _dec_digraph(d: dict) -> DigraphK:
    vertices = _in_names(d["vertices"], "vertices")
    return DigraphK(vertices, _in_pairs(d["arcs"], vertices, "arcs", True), _in_int(d["k"], "k"))


def _enc_family(p: SetFamily) -> dict:
    out = {"elements": list(p.elements),
           "sets": [[p.elements[e] for e in s] for s in p.sets], "k": p.k}
    if p.exact:
        out["exact"] = True
    return out


def _dec_family(d: dict) -> SetFamily:
    elements = _in_names(d["elements"], "elements")
    table = _lookup(elements)
    sets = []
    for i, s in enumerate(_in_list(d["sets"], "sets")):
        here = f"sets[{i}]"
        idx = sorted(_in_ref(x, table, here) for x in _in_list(s, here))
        sets.append(tuple(idx))
    exact = d.get("exact", False)
    if not isinstance(exact, bool):
        raise ValidationError("expected a boolean", "exact")
    return SetFamily(elements, tuple(sets), _in_int(d["k"], "k"), exact)


def _enc_facility(p: FacilityPayload) -> dict:
    out = {"facilities": list(p.facilities), "clients": list(p.clients),
           "costs": [[_out_int(x) for x in row] for row in p.costs], "k": _out_int(p.k)}
    if p.p is None:
        out["opening"] = [_out_int(x) for x in p.opening]
    else:
        out["p"] = p.p
    return out


def _dec_facility(d: dict, with_p: bool) -> FacilityPayload:
    costs = tuple(_in_ints(row, f"costs[{i}]") for i, row in enumerate(_in_list(d["costs"], "costs")))
    return FacilityPayload(
        _in_names(d["facilities"], "facilities"), _in_names(d["clients"], "clients"),
        () if with_p else _in_ints(d["opening"], "opening"), costs,
        _in_int(d["k"], "k"), _in_int(d["p"], "p") if with_p else None)


def _ham_codec(directed: bool, path: bool):
    key = "arcs" if directed else "edges"

    def enc(p: HamPayload) -> dict:
        out = {"vertices": list(p.vertices), key: _out_pairs(p.links, p.vertices)}
        if path:
            out["s"], out["t"] = p.vertices[p.s], p.vertices[p.t]
        return out

    def dec(d: dict) -> HamPayload:
        vertices = _in_names(d["vertices"], "vertices")
        links = _in_pairs(d[key], vertices, key, directed)
        if not path:
            return HamPayload(vertices, links)
        table = _lookup(vertices)
        return HamPayload(vertices, links, _in_ref(d["s"], table, "s"), _in_ref(d["t"], table, "t"))

    return enc, dec, {"vertices", key} | ({"s", "t"} if path else set())


def _enc_tsp(p: TSPPayload) -> dict:
    return {"vertices": list(p.vertices), "edges": _out_pairs(p.edges, p.vertices),
            "weights": [_out_int(w) for w in p.weights], "k": _out_int(p.k)}


def _dec_tsp(d: dict) -> TSPPayload:
    vertices = _in_names(d["vertices"], "vertices")
    return TSPPayload(vertices, _in_pairs(d["edges"], vertices, "edges", False),
                      _in_ints(d["weights"], "weights"), _in_int(d["k"], "k"))


def _enc_stt(p: SteinerPayload) -> dict:
    return dict(_enc_tsp(p), terminals=[p.vertices[t] for t in p.terminals])


def _dec_stt(d: dict) -> SteinerPayload:
    base = _dec_tsp(d)
    table = _lookup(base.vertices)
    terminals = tuple(_in_ref(x, table, f"terminals[{i}]")
                      for i, x in enumerate(_in_list(d["terminals"], "terminals")))
    return SteinerPayload(base.vertices, base.edges, base.weights, terminals, base.k)


def _enc_numbers(p: NumbersPayload) -> dict:
    out = {"numbers": [_out_int(x) for x in p.numbers]}
    if p.target is not None:
        out["target"] = _out_int(p.target)
    return out


def _dec_numbers(d: dict) -> NumbersPayload:
    target = _in_int(d["target"], "target") if "target" in d else None
    return NumbersPayload(_in_ints(d["numbers"], "numbers"), target)


def _enc_ks(p: KnapsackPayload) -> dict:
    return {"weights": [_out_int(x) for x in p.weights],
            "profits": [_out_int(x) for x in p.profits],
            "capacity": _out_int(p.capacity), "min_profit": _out_int(p.min_profit)}


def _dec_ks(d: dict) -> KnapsackPayload:
    return KnapsackPayload(_in_ints(d["weights"], "weights"), _in_ints(d["profits"], "profits"),
                           _in_int(d["capacity"], "capacity"), _in_int(d["min_profit"], "min_profit"))


def _enc_tms(p: SchedulingPayload) -> dict:
    return {"jobs": [_out_int(x) for x in p.jobs], "deadline": _out_int(p.deadline)}


def _dec_tms(d: dict) -> SchedulingPayload:
    return SchedulingPayload(_in_ints(d["jobs"], "jobs"), _in_int(d["deadline"], "deadline"))


def _enc_matching(p: MatchingPayload) -> dict:
    out = {"xs": list(p.xs), "ys": list(p.ys), "zs": list(p.zs),
           "triples": [[p.xs[x], p.ys[y], p.zs[z]] for x, y, z in p.triples]}
    if p.singletons or p.binding:
        out["singletons"] = [p.xs[x] for x in p.singletons]
        out["binding"] = [list(b) for b in p.binding]
    return out


def _dec_matching(d: dict) -> MatchingPayload:
    xs, ys, zs = (_in_names(d[k], k) for k in ("xs", "ys", "zs"))
    tables = [_lookup(xs), _lookup(ys), _lookup(zs)]
    triples = []
    for i, t in enumerate(_in_list(d["triples"], "triples")):
        here = f"triples[{i}]"
        if not isinstance(t, list) or len(t) != 3:
            raise ValidationError("expected three names", here)
        triples.append(tuple(_in_ref(x, tab, here) for x, tab in zip(t, tables)))
    singles = tuple(_in_ref(x, tables[0], f"singletons[{i}]")
                    for i, x in enumerate(_in_list(d.get("singletons", []), "singletons")))
    binding = []
    for i, b in enumerate(_in_list(d.get("binding", []), "binding")):
        if not isinstance(b, list) or len(b) != 2:
            raise ValidationError("expected a pair of positions", f"binding[{i}]")
        binding.append(_in_ints(b, f"binding[{i}]"))
    return MatchingPayload(xs, ys, zs, tuple(triples), singles, tuple(binding))


_GRAPH_FIELDS = {"vertices", "edges", "k"}
_FAMILY_FIELDS = {"elements", "sets", "k"}
_FACILITY = {"facilities", "clients", "costs", "k"}
_MATCH = {"xs", "ys", "zs", "triples"}

# kind -> (encode, decode, required fields, optional fields)
CODECS: dict[str, tuple] = {}
for _k in ("SAT", "TSAT", "ESAT", "OSAT"):
    CODECS[_k] = (_enc_cnf, _dec_cnf, {"variables", "clauses"}, set())
for _k in ("VC", "MVC", "DS", "MDS", "MIS", "CQ"):
    CODECS[_k] = (_enc_graph, _dec_graph, _GRAPH_FIELDS, set())
CODECS["VCV"] = (_enc_vcv, _dec_vcv, _GRAPH_FIELDS | {"fixed"}, set())
for _k in ("FVS", "FAS"):
    CODECS[_k] = (_enc_digraph, _dec_digraph, {"vertices", "arcs", "k"}, set())
CODECS["SC"] = (_enc_family, _dec_family, _FAMILY_FIELDS, {"exact"})
CODECS["HS"] = (_enc_family, _dec_family, _FAMILY_FIELDS, {"exact"})
CODECS["SP"] = (_enc_family, _dec_family, _FAMILY_FIELDS, set())
CODECS["UFL"] = (_enc_facility, lambda d: _dec_facility(d, False), _FACILITY | {"opening"}, set())
for _k in ("PCEN", "PMED"):
    CODECS[_k] = (_enc_facility, lambda d: _dec_facility(d, True), _FACILITY | {"p"}, set())
for _k, _dir, _path in (("DHP", True, True), ("DHC", True, False),
                        ("UHP", False, True), ("UHC", False, False)):
    _e, _d, _f = _ham_codec(_dir, _path)
    CODECS[_k] = (_e, _d, _f, set())
CODECS["TSP"] = (_enc_tsp, _dec_tsp, {"vertices", "edges", "weights", "k"}, set())
CODECS["STT"] = (_enc_stt, _dec_stt, {"vertices", "edges", "weights", "terminals", "k"}, set())
CODECS["SS"] = (_enc_numbers, _dec_numbers, {"numbers", "target"}, set())
CODECS["P"] = (_enc_numbers, _dec_numbers, {"numbers"}, set())
CODECS["KS"] = (_enc_ks, _dec_ks, {"weights", "profits", "capacity", "min_profit"}, set())
CODECS["TMS"] = (_enc_tms, _dec_tms, {"jobs", "deadline"}, set())
CODECS["ODM"] = (_enc_matching, _dec_matching, _MATCH, {"singletons", "binding"})
CODECS["DM"] = (_enc_matching, _dec_matching, _MATCH, set())


# ---------------------------------------------------------------- instances

def instance_document(instance: Instance, metadata: bool = True) -> dict:
    defn = get_problem(instance.kind)
    doc = {"version": VERSION, "problem": defn.id.lower()}
    doc.update(CODECS[defn.id][0](instance.payload))
    if metadata:
        for key in META:
            value = getattr(instance, key)
            if value is not None:
                doc[key] = value
    return doc


def dumps(doc: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def serialize_instance(instance: Instance) -> str:
    return dumps(instance_document(instance))


def parse_instance(document, check_optimum: bool = False) -> Instance:
    """Build a validated Instance from a document (dict or JSON text).

    With `check_optimum`, cardinality kinds must carry their optimal k.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc.msg}", f"line {exc.lineno}") from None
    if not isinstance(document, dict):
        raise SchemaError("an instance document must be a JSON object")
    version = document.get("version", VERSION)
    if version != VERSION:
        raise SchemaError(f"unsupported version {version!r}", "version")
    problem = document.get("problem")
    if not isinstance(problem, str):
        raise SchemaError("missing problem name", "problem")
    try:
        defn = get_problem(problem)
    except KindMismatch:
        raise SchemaError(f"unknown problem {problem!r}", "problem") from None
    _, decode, required, optional = CODECS[defn.id]
    fields = set(document) - {"version", "problem", *META}
    missing = sorted(required - fields)
    if missing:
        raise SchemaError(f"missing field {missing[0]!r}", missing[0])
    unknown = sorted(fields - required - optional)
    if unknown:
        raise SchemaError(f"unknown field {unknown[0]!r}", unknown[0])
    for key in META:
        if key in document and not isinstance(document[key], str):
            raise SchemaError("expected a string", key)
    payload = decode(document)
    try:
        instance = make_instance(defn.id, payload, document.get("name"), document.get("note"))
    except ValidationError:
        raise
    except InvalidInstance as exc:
        raise ValidationError(str(exc).split(": ", 1)[-1] if exc.path else str(exc),
                              exc.path) from None
    if check_optimum and defn.optimum is not None:
        k = getattr(payload, defn.k_field)
        best = minimum_cardinality(defn.id, with_k(instance, 0))
        if k != best:
            raise ValidationError(f"k={k} is not the optimum {best}", defn.k_field)
    return instance


def fingerprint(instance: Instance) -> str:
    """Content hash of the canonical document, metadata excluded."""
    text = json.dumps(instance_document(instance, metadata=False), sort_keys=True,
                      separators=(",", ":"), ensure_ascii=False)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


# ---------------------------------------------------------------- solutions

def _name_table(universe) -> dict:
    table = {}
    for i, e in enumerate(universe):
        name = str(e)
        if name in table:
            raise ValidationError(f"element name {name!r} is ambiguous in this universe")
        table[name] = i
    return table


def solution_names(solution: Solution) -> list[str]:
    return [str(e) for e in solution.members()]


def solutions_document(instance: Instance, solutions: SolutionSet) -> dict:
    return {
        "version": VERSION,
        "problem": instance.kind.lower(),
        "fingerprint": fingerprint(instance),
        "count": len(solutions),
        "complete": solutions.complete,
        "solutions": [solution_names(s) for s in solutions],
    }


def parse_solution(names, instance: Instance) -> Solution:
    universe = universe_of(instance)
    table = _name_table(universe)
    mask = 0
    for i, name in enumerate(_in_list(names, "solution")):
        mask |= 1 << _in_ref(name, table, f"solution[{i}]")
    return Solution(universe, mask)


def parse_solutions(document, instance: Instance) -> SolutionSet:
    if not isinstance(document, dict) or "solutions" not in document:
        raise SchemaError("a solutions document needs a solutions list")
    masks = [parse_solution(s, instance).mask for s in _in_list(document["solutions"], "solutions")]
    return SolutionSet(universe_of(instance), frozenset(masks),
                       bool(document.get("complete", True)))


# ---------------------------------------------------------------- reports

def _names(universe, mask: int) -> list[str]:
    return [str(universe[i]) for i in bit_indices(mask)]


def serialize_report(report) -> dict:
    """Stable JSON-ready dict for a VerificationReport; timing is left out."""
    tu, su = report.target_universe, report.source_universe
    doc = {
        "version": VERSION,
        "reduction": report.reduction_id,
        "fingerprint": report.fingerprint,
        "counts": [report.source_count, report.target_count],
        "ssp": report.ssp_holds,
        "spr": report.spr_holds,
        "claims": {"ssp": report.claims_ssp, "spr": report.claims_spr},
        "claims_matched": report.claims_matched,
        "vacuous": report.vacuous,
        "nodes": report.nodes,
    }
    if report.ssp_reason:
        doc["ssp_reason"] = report.ssp_reason
    if report.spr_reason:
        doc["spr_reason"] = report.spr_reason
    if report.premise_failure:
        doc["premise_failure"] = report.premise_failure
    if report.witnesses:
        doc["witnesses"] = report.witnesses
    cert = report.partition
    if cert is not None:
        part = {
            "valid": cert.valid,
            "s_rep": _names(tu, cert.s_rep),
            "s_all": _names(tu, cert.s_all),
            "s_nev": _names(tu, cert.s_nev),
            "s_link": _names(tu, cert.s_link),
            "links": [{"source": _names(su, m), "linked": _names(tu, linked)}
                      for m, linked in sorted(cert.link_map.items())],
        }
        if cert.vacuous:
            part["vacuous"] = True
        if cert.failure_reason:
            part["reason"] = cert.failure_reason
        doc["partition"] = part
    return doc


# ---------------------------------------------------------------- DIMACS

def import_dimacs_cnf(text: str, name: str | None = None) -> Instance:
    """SAT instance from DIMACS CNF text; variables are named x1..xV."""
    header = None
    clauses: list[tuple] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        last_line = lineno
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ParseError("second problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("expected 'p cnf <variables> <clauses>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if min(header) < 0:
                raise ParseError("header counts must be non-negative", lineno)
            continue
        if header is None:
            raise ParseError("clause before the problem line", lineno)
        for token in line.split():
            try:
                x = int(token)
            except ValueError:
                raise ParseError(f"not a literal: {token!r}", lineno) from None
            if x == 0:
                clauses.append(tuple(dict.fromkeys(current)))
                current = []
            elif abs(x) > header[0]:
                raise ParseError(f"literal {x} exceeds the declared variable count", lineno)
            else:
                current.append(x)
    if header is None:
        raise ParseError("missing problem line")
    if current:
        raise ParseError("last clause is not terminated by 0", last_line)
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, found {len(clauses)}",
                         last_line or None)
    variables = tuple(f"x{i}" for i in range(1, header[0] + 1))
    return make_instance("SAT", CNF(variables, tuple(clauses)), name)
