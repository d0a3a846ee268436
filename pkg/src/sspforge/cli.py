"""Command-line interface: ``sspforge <command> ...``.

Exit codes: 0 success, 1 parse or validation error, 2 node budget exceeded,
3 internal error, 4 observed properties contradict the registered claims.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace

from . import compendium, formats
from .core import (
    BudgetExceeded, InvalidInstance, KindMismatch, SspError, as_budget, default_budget,
)
from .problems import (
    PROBLEM_IDS, enumerate_solutions, generate_instance, get_problem, universe_of,
)
from .reductions import ClaimFlags, get_reduction, list_reductions
from .verifier import full_report, sweep

log = logging.getLogger("sspforge")

EXIT_OK, EXIT_INVALID, EXIT_BUDGET, EXIT_INTERNAL, EXIT_CLAIMS = 0, 1, 2, 3, 4


class UsageError(InvalidInstance):
    pass


# ---------------------------------------------------------------- argument helpers

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_instance(path: str):
    text = _read_text(path)
    if path.endswith(".cnf") or text.lstrip().startswith(("p cnf", "c")):
        return formats.import_dimacs_cnf(text)
    return formats.parse_instance(text)


def _scalar(raw: str):
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            pass
    return raw


def parse_params(raw: str | None) -> dict | None:
    """Generator parameters as a JSON object or ``key=value,key=value``."""
    if not raw:
        return None
    if raw.lstrip().startswith("{"):
        try:
            value = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--params: {exc.msg}") from None
        if not isinstance(value, dict):
            raise UsageError("--params must be an object")
        return value
    out = {}
    for item in raw.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--params: expected key=value, got {item!r}")
        out[key.strip()] = _scalar(value.strip())
    return out


def parse_flags(raw: str | None) -> ClaimFlags | None:
    """``ssp,spr`` style property lists; ``ssp=yes,spr=no`` is also accepted."""
    if raw is None:
        return None
    flags = {"ssp": False, "spr": False}
    for item in filter(None, (x.strip() for x in raw.lower().split(","))):
        key, sep, value = item.partition("=")
        if key not in flags:
            raise UsageError(f"unknown property {key!r}")
        if sep and value not in ("yes", "no", "true", "false"):
            raise UsageError(f"{key}: expected yes or no")
        flags[key] = not sep or value in ("yes", "true")
    return ClaimFlags(flags["ssp"], flags["spr"])


def _yes(b: bool) -> str:
    return "yes" if b else "no"


class Output:
    def __init__(self, path: str | None):
        self.path = path
        self.parts: list[str] = []

    def write(self, text: str) -> None:
        self.parts.append(text if text.endswith("\n") else text + "\n")

    def json(self, doc) -> None:
        self.write(formats.dumps(doc))

    def flush(self) -> None:
        text = "".join(self.parts)
        if self.path and self.path != "-":
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def cmd_solve(args, out: Output) -> int:
    inst = _load_instance(args.instance)
    sols = enumerate_solutions(None, inst, as_budget(args.budget))
    if args.format == "json":
        doc = formats.solutions_document(inst, sols)
        if not args.all:
            del doc["solutions"]
        out.json(doc)
    else:
        out.write(f"count: {len(sols)}")
        if args.all:
            for s in sols:
                out.write("{" + ",".join(formats.solution_names(s)) + "}")
    return EXIT_OK


def cmd_reduce(args, out: Output) -> int:
    red = get_reduction(args.reduction)
    inst = _load_instance(args.instance)
    built = red.build(inst)
    doc = formats.instance_document(built.target)
    table = None
    if args.trace:
        if built.embed is None:
            table = []
        else:
            table = [[str(e), str(built.embed[e])] for e in
                     sorted(built.embed, key=lambda e: universe_of(inst).index(e))]
    if args.format == "json":
        out.json(doc if table is None else {"target": doc, "embedding": table})
    else:
        out.write(formats.dumps(doc))
        if table is not None:
            out.write("embedding:" if table else "embedding: none registered")
            for a, b in table:
                out.write(f"  {a} -> {b}")
    return EXIT_OK


def _report_line(label: str, report) -> str:
    part = report.partition
    cert = "n/a" if part is None else ("valid" if part.valid else "invalid")
    bits = [f"{label}: counts {report.source_count}/{report.target_count}",
            f"ssp={_yes(report.ssp_holds)}", f"spr={_yes(report.spr_holds)}",
            f"partition={cert}"]
    if report.premise_failure:
        bits.append(f"premise failed ({report.premise_failure})")
    if report.vacuous:
        bits.append("vacuous")
    if not report.claims_matched:
        bits.append("CLAIMS MISMATCH")
    return " ".join(bits)


def _with_claims(red, claims: ClaimFlags | None):
    return red if claims is None else replace(red, claims=claims)


def _verify_runs(red, args):
    """(label, report or None, error or None) for each instance examined."""
    if args.instance:
        inst = _load_instance(args.instance)
        yield args.instance, full_report(red, inst, as_budget(args.budget)), None
        return
    params = parse_params(args.params)
    for trial in sweep(red, args.random, args.seed, params, args.budget):
        yield f"trial {trial.index} (seed {trial.seed})", trial.report, trial.error


def _verify(red, args, out: Output) -> int:
    if not args.instance and not args.random:
        raise UsageError("give an instance path or --random N")
    reports, errors, matched = [], [], True
    for label, report, error in _verify_runs(red, args):
        if error:
            errors.append({"trial": label, "error": error})
            if args.format == "text":
                out.write(f"{label}: skipped, {error}")
            continue
        matched &= report.claims_matched
        reports.append(report)
        if args.format == "text":
            out.write(_report_line(label, report))
            if args.witnesses:
                for prop, ws in sorted(report.witnesses.items()):
                    for w in ws:
                        out.write(f"  {prop} witness: {json.dumps(w, sort_keys=True)}")
    if args.format == "json":
        doc = {"reduction": red.id,
               "claims": {"ssp": red.claims.ssp, "spr": red.claims.spr},
               "reports": [formats.serialize_report(r) for r in reports],
               "claims_matched": matched}
        if errors:
            doc["errors"] = errors
        out.json(doc)
    else:
        out.write(f"claims: {red.claims}")
        out.write(f"claims matched: {_yes(matched)}")
    return EXIT_OK if matched else EXIT_CLAIMS


def cmd_verify(args, out: Output) -> int:
    red = _with_claims(get_reduction(args.reduction), parse_flags(args.claims))
    return _verify(red, args, out)


def cmd_certify(args, out: Output) -> int:
    red = get_reduction(args.reduction)
    inst = _load_instance(args.instance)
    report = full_report(red, inst, as_budget(args.budget))
    if report.partition is None:
        raise UsageError(f"{red.id} registers no universe embedding; nothing to certify")
    doc = formats.serialize_report(report)["partition"]
    if args.format == "json":
        out.json(doc)
    else:
        out.write(f"certificate: {'valid' if doc['valid'] else 'invalid'}"
                  + (" (vacuous)" if doc.get("vacuous") else ""))
        if doc.get("reason"):
            out.write(f"reason: {doc['reason']}")
        for key in ("s_rep", "s_all", "s_nev", "s_link"):
            out.write(f"{key}: {{{','.join(doc[key])}}}")
        for link in doc["links"]:
            out.write(f"  {{{','.join(link['source'])}}} -> {{{','.join(link['linked'])}}}")
    return EXIT_OK if doc["valid"] or not red.claims.ssp or not red.claims.spr else EXIT_CLAIMS


def cmd_compose(args, out: Output) -> int:
    red = compendium.compose_ids(*args.reductions)
    if args.verify:
        return _verify(red, args, out)
    if args.instance:
        target = red.build(_load_instance(args.instance)).target
        out.json(formats.instance_document(target))
        return EXIT_OK
    summary = {"id": red.id, "source": red.source, "target": red.target,
               "chain": list(red.links),
               "claims": {"ssp": red.claims.ssp, "spr": red.claims.spr}}
    if args.format == "json":
        out.json(summary)
    else:
        out.write(f"{red.id}: {red.source} -> {red.target} {red.claims}")
    return EXIT_OK


def cmd_graph(args, out: Output) -> int:
    require = parse_flags(args.require)
    if args.path:
        chains = compendium.transitive_paths(args.path[0], args.path[1], require,
                                             include_demo=args.include_demo)
        if args.format == "json":
            out.json({"source": get_problem(args.path[0]).id,
                      "target": get_problem(args.path[1]).id, "chains": chains})
        else:
            for chain in chains:
                out.write(", ".join(chain))
        return EXIT_OK
    graph = compendium.build_graph(require=require)
    if args.format == "json":
        out.json(compendium.export_json(graph))
    else:
        out.write(compendium.export_dot(graph))
    return EXIT_OK


def cmd_gen(args, out: Output) -> int:
    inst = generate_instance(args.problem, parse_params(args.params), args.seed)
    out.json(formats.instance_document(inst))
    return EXIT_OK


def cmd_list(args, out: Output) -> int:
    if args.problems:
        for pid in PROBLEM_IDS:
            out.write(f"{pid.lower():5} {get_problem(pid).title}")
        return EXIT_OK
    reds = list_reductions(args.source, args.target)
    if args.format == "json":
        out.json([{"id": r.id, "source": r.source, "target": r.target,
                   "ssp": r.claims.ssp, "spr": r.claims.spr, "demo": r.demo,
                   "anchor": r.anchor} for r in reds])
    else:
        for r in reds:
            tag = " [demo]" if r.demo else ""
            out.write(f"{r.id:18} {r.source:>4} -> {r.target:<4} {r.claims}{tag}")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _positive(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=argparse.SUPPRESS,
                        help="search node budget (default: $SSPFORGE_BUDGET or 50,000,000)")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("text", "json", "dot"), default=argparse.SUPPRESS,
                        help="output format; dot is the text form of `graph`")
    common.add_argument("-o", "--output", default=argparse.SUPPRESS,
                        help="write here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="sspforge", parents=[common],
        description="Run, verify and compose reductions between subset search problems.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("solve", parents=[common], help="enumerate all solutions")
    p.add_argument("instance", help="instance document, DIMACS .cnf, or - for stdin")
    p.add_argument("--all", action="store_true", help="list every solution")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", parents=[common], help="apply a reduction")
    p.add_argument("reduction")
    p.add_argument("instance")
    p.add_argument("--trace", action="store_true", help="also print the element embedding")
    p.set_defaults(func=cmd_reduce)

    def verification(p):
        p.add_argument("--random", type=_positive, metavar="N",
                       help="verify N seeded random source instances")
        p.add_argument("--params", help="generator parameters, JSON or key=value,...")
        p.add_argument("--witnesses", action="store_true", help="print witnesses (text)")

    p = sub.add_parser("verify", parents=[common], help="check SSP, SPR and the partition")
    p.add_argument("reduction")
    p.add_argument("instance", nargs="?")
    p.add_argument("--claims", help="override the registered claims, e.g. ssp=yes,spr=no")
    verification(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", parents=[common], help="print the universe partition")
    p.add_argument("reduction")
    p.add_argument("instance")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("compose", parents=[common], help="chain reductions")
    p.add_argument("reductions", nargs="+")
    p.add_argument("-i", "--instance", help="reduce this instance through the chain")
    p.add_argument("--verify", action="store_true", help="verify the chain like `verify`")
    verification(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("graph", parents=[common], help="export the reduction map")
    p.add_argument("--require", help="keep edges or chains with these properties: ssp,spr")
    p.add_argument("--path", nargs=2, metavar=("SOURCE", "TARGET"))
    p.add_argument("--include-demo", action="store_true",
                   help="let --path chains use the negative demo reductions")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("gen", parents=[common], help="generate a random instance")
    p.add_argument("problem")
    p.add_argument("--params")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("list", parents=[common], help="list reductions or problems")
    p.add_argument("--source")
    p.add_argument("--target")
    p.add_argument("--problems", action="store_true")
    p.set_defaults(func=cmd_list)
    return parser


DEFAULTS = {"budget": None, "seed": 0, "format": None, "output": None, "verbose": False}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.format is None:
        args.format = "json" if args.command in ("reduce", "gen") else "text"
    elif args.format == "dot":
        args.format = "text"
    if args.budget is None:
        args.budget = default_budget()
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = Output(args.output)
    try:
        code = args.func(args, out)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InvalidInstance, KindMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SspError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # anything else is a bug
        log.debug("internal error", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
