"""Command-line front end.

Every subcommand prints one JSON report on stdout and exits with
0 (pass), 1 (verified false), 2 (input error) or 3 (size cap exceeded).
INPUT is a path to an embedding document, or the name of a bundled
fixture (``cube`` or ``corpus/cube.json`` both resolve to it).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .coloring import ColoringError, SizeCapExceeded, count_extensions
from .configurations import (
    Configuration,
    check_reducible_abstract,
    check_reducible_concrete,
    find_poppies,
    find_small_4faces,
    find_stamens,
    poppy_configuration,
    reducible_found,
    scan_reducible_up_to_size,
    verify_poppy_constructive,
)
from .corpus import fixture_names, fixture_text
from .discharging import DischargeParams, discharge, fmt, is_major, vertex_bound_from_charges
from .embedding import EmbeddingError, euler_characteristic, euler_genus, genus
from .formats import (
    DocumentError,
    EmbeddingDocument,
    RunReport,
    digest,
    import_graph6,
    parse_embedding,
    parse_fraction,
    require_k_lists,
)
from .harness import (
    COUNT_CAP,
    CRITICALITY_CAP,
    CriticalityParams,
    HypothesisViolated,
    PreconditionFailed,
    criticality_check,
    main_bound_check,
    per_component_bound,
)

EXIT_PASS, EXIT_FALSE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


@dataclass
class Outcome:
    result: object
    status: int


def _read_input(spec: str) -> tuple[str, str]:
    path = Path(spec)
    if path.is_file():
        return path.read_text(), path.stem
    name = path.stem if path.suffix == ".json" else spec
    if name in fixture_names():
        return fixture_text(name), name
    raise DocumentError(f"{spec}: no such file or bundled fixture")


def load_documents(args) -> tuple[list[EmbeddingDocument], str]:
    """Documents named by the command line, plus the text that was hashed."""
    if args.graph6:
        text = Path(args.input).read_text()
        if not args.rotations:
            return import_graph6(text), text
        side = Path(args.rotations).read_text()
        # the side file changes the embedding, so it is part of the hashed input
        return import_graph6(text, json.loads(side)), text + "\0" + side
    text, name = _read_input(args.input)
    return [parse_embedding(text, name)], text


def _lists_or_default(doc: EmbeddingDocument):
    if doc.lists is None:
        return tuple(frozenset((1, 2, 3, 4)) for _ in range(doc.n))
    return doc.list_assignment()


# -- subcommands ----------------------------------------------------------------


def cmd_faces(doc: EmbeddingDocument, args) -> Outcome:
    g = doc.embedding()
    faces = [{"length": f.length, "walk": list(f.instances)} for f in g.faces]
    return Outcome({"num_faces": len(faces), "faces": faces, "chi": euler_characteristic(g)}, EXIT_PASS)


def cmd_genus(doc: EmbeddingDocument, args) -> Outcome:
    g = doc.embedding()
    return Outcome(
        {"chi": euler_characteristic(g), "orientable_genus": genus(g), "euler_genus": euler_genus(g)},
        EXIT_PASS,
    )


def cmd_count(doc: EmbeddingDocument, args) -> Outcome:
    g = doc.embedding()
    if g.n > args.cap:
        raise SizeCapExceeded(f"{g.n} vertices exceeds counting cap {args.cap}")
    res = count_extensions(g, doc.list_assignment(), doc.phi(), args.threshold, jobs=args.jobs)
    status = EXIT_PASS
    if args.threshold is not None and not res.threshold_reached:
        status = EXIT_FALSE
    return Outcome(res.to_json(), status)


def cmd_check_reducible(doc: EmbeddingDocument, args) -> Outcome:
    g = doc.embedding()
    q = sorted(set(args.q))
    if args.abstract or doc.lists is None:
        verdict = check_reducible_abstract(Configuration.from_subgraph(g, q))
    else:
        require_k_lists(doc, 4)
        verdict = check_reducible_concrete(g, doc.h(), q, doc.list_assignment())
    return Outcome({"Q": q, "verdict": verdict.to_json()}, EXIT_PASS if verdict.reducible else EXIT_FALSE)


def cmd_find_configs(doc: EmbeddingDocument, args) -> Outcome:
    g = doc.embedding()
    h = doc.h()
    stamens = {}
    for v in range(g.n):
        if is_major(g, h, v):
            found = find_stamens(g, h, v)
            if found:
                stamens[str(v)] = [list(s.path) for s in found]
    poppies = []
    for p in find_poppies(g, h):
        entry = {"center": p.center, "stamens": [list(s.path) for s in p.stamens], "vertices": sorted(p.vertices)}
        entry["constructive"] = verify_poppy_constructive(p, poppy_configuration(g, p))
        poppies.append(entry)
    result = {
        "small_4faces": [list(c) for c in find_small_4faces(g, h)],
        "major_stamens": stamens,
        "poppies": poppies,
    }
    return Outcome(result, EXIT_PASS)


def cmd_discharge(doc: EmbeddingDocument, args) -> Outcome:
    g = doc.embedding()
    h = doc.h()
    p = DischargeParams(args.gamma)
    run = discharge(g, h, p, strict=args.strict_rule1)
    claims = run["claims"]
    bound = None
    if claims.closing_minimum > 0:
        bound = vertex_bound_from_charges(len(h.vertices), run["chi"], p).to_json()
    result = {
        "gamma": fmt(p.gamma),
        "mode": run["mode"],
        "chi": run["chi"],
        "identity": run["identity"].to_json(),
        "conserved": run["conserved"],
        "claims": claims.to_json(),
        "rule1_overlaps": [[v, list(a), list(b)] for v, a, b in run["rule1_overlaps"]],
        "transfers": [t.to_json() for t in run["transfers"]],
        "bound": bound,
    }
    ok = run["identity"].ok and run["conserved"] and claims.ok
    if args.scan_size:
        scan = scan_reducible_up_to_size(g, h, args.scan_size, jobs=args.jobs)
        found = reducible_found(scan)
        result["hypothesis_scan"] = {
            "max_size": args.scan_size,
            "reducible": [list(q) for q in found],
            "hypotheses_hold": not found,
        }
    return Outcome(result, EXIT_PASS if ok else EXIT_FALSE)


def cmd_verify_bound(doc: EmbeddingDocument, args) -> Outcome:
    g = doc.embedding()
    h = doc.h()
    require_k_lists(doc, 4)
    params = CriticalityParams(args.epsilon, args.alpha)
    report = main_bound_check(g, h, doc.list_assignment(), doc.phi(), params, cap=args.cap)
    comps = per_component_bound(g, h)
    result = {
        "bound": report.to_json(),
        "constants": {"epsilon": fmt(params.epsilon), "alpha": fmt(params.alpha), "small_epsilon": params.small_epsilon},
        "per_component": [c.to_json() for c in comps],
    }
    if not params.default_constants:
        result["note"] = "rescaled diagnostic: constants differ from epsilon=1/8, alpha=130"
    return Outcome(result, EXIT_PASS if report.passed else EXIT_FALSE)


def cmd_criticality(doc: EmbeddingDocument, args) -> Outcome:
    g = doc.embedding()
    params = CriticalityParams(args.epsilon, args.alpha)
    critical = criticality_check(
        g, doc.h(), _lists_or_default(doc), params, reading=args.reading, genus_kind=args.genus_kind, cap=args.cap
    )
    result = {
        "critical": critical,
        "reading": args.reading,
        "genus_kind": args.genus_kind,
        "epsilon": fmt(params.epsilon),
        "alpha": fmt(params.alpha),
    }
    return Outcome(result, EXIT_PASS if critical else EXIT_FALSE)


def cmd_scan(doc: EmbeddingDocument, args) -> Outcome:
    g = doc.embedding()
    lists = None
    if args.concrete:
        require_k_lists(doc, 4)
        lists = doc.list_assignment()
    scan = scan_reducible_up_to_size(g, doc.h(), args.max_size, lists=lists, jobs=args.jobs)
    found = reducible_found(scan)
    result = {
        "max_size": args.max_size,
        "mode": "concrete" if lists is not None else "abstract",
        "checked": len(scan),
        "reducible": [list(q) for q in found],
        "verdicts": [{"Q": list(q), "reducible": v.reducible, "method": v.method} for q, v in scan],
    }
    return Outcome(result, EXIT_PASS if not found else EXIT_FALSE)


COMMANDS = {
    "faces": cmd_faces,
    "genus": cmd_genus,
    "count": cmd_count,
    "check-reducible": cmd_check_reducible,
    "find-configs": cmd_find_configs,
    "discharge": cmd_discharge,
    "verify-bound": cmd_verify_bound,
    "criticality": cmd_criticality,
    "scan": cmd_scan,
}


def _rational(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trifree", description="List-coloring and discharging checks on embedded graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="embedding JSON file or bundled fixture name")
        p.add_argument("--graph6", action="store_true", help="read INPUT as graph6 lines")
        p.add_argument("--rotations", help="JSON rotation side file for --graph6 input")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        return p

    add("faces", "trace the faces of the embedding")
    add("genus", "Euler characteristic and genus")
    p = add("count", "count L-colorings extending the precoloring")
    p.add_argument("--threshold", type=int)
    p.add_argument("--cap", type=int, default=COUNT_CAP)
    p = add("check-reducible", "decide whether Q is a reducible configuration")
    p.add_argument("--q", type=int, nargs="+", required=True)
    p.add_argument("--abstract", action="store_true", help="quantify over all 4-list-assignments")
    add("find-configs", "small 4-faces, stamens of major vertices and poppies")
    p = add("discharge", "run the discharging rules and check the claimed bounds")
    p.add_argument("--gamma", type=_rational, default=DischargeParams().gamma)
    p.add_argument("--strict-rule1", action="store_true", help="require the stamen tip within distance two")
    p.add_argument("--scan-size", type=int, default=0, help="also scan for reducible configurations up to this size")
    p = add("verify-bound", "compare the extension count with the exponential bound")
    p.add_argument("--epsilon", type=_rational, default=CriticalityParams().epsilon)
    p.add_argument("--alpha", type=_rational, default=CriticalityParams().alpha)
    p.add_argument("--cap", type=int, default=COUNT_CAP)
    p = add("criticality", "decide exponential criticality exhaustively")
    p.add_argument("--epsilon", type=_rational, default=CriticalityParams().epsilon)
    p.add_argument("--alpha", type=_rational, default=CriticalityParams().alpha)
    p.add_argument("--reading", choices=["per_subgraph", "uniform"], default="per_subgraph")
    p.add_argument("--genus-kind", choices=["euler", "orientable"], default="euler")
    p.add_argument("--cap", type=int, default=CRITICALITY_CAP)
    p = add("scan", "verdicts for all small connected subsets outside H")
    p.add_argument("--max-size", type=int, default=3)
    p.add_argument("--concrete", action="store_true", help="use the document's lists instead of the worst case")
    return parser


def _flags(args) -> str:
    skip = {"input", "rotations"}
    return repr(sorted((k, str(v)) for k, v in vars(args).items() if k not in skip))


def run_command(argv: list[str]) -> tuple[RunReport | None, int]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return None, EXIT_INPUT if exc.code else EXIT_PASS
    handler = COMMANDS[args.command]
    try:
        docs, text = load_documents(args)
        key = digest(text, _flags(args))
        outcomes = [handler(d, args) for d in docs]
    except SizeCapExceeded as exc:
        print(f"trifree: {exc}", file=sys.stderr)
        return RunReport(args.command, "", {"error": "cap_exceeded", "message": str(exc)}, EXIT_CAP), EXIT_CAP
    except (HypothesisViolated, PreconditionFailed, DocumentError, EmbeddingError, ColoringError, ValueError, OSError) as exc:
        print(f"trifree: {exc}", file=sys.stderr)
        return RunReport(args.command, "", {"error": type(exc).__name__, "message": str(exc)}, EXIT_INPUT), EXIT_INPUT
    if len(outcomes) == 1:
        result, status = outcomes[0].result, outcomes[0].status
    else:
        result = [o.result for o in outcomes]
        status = max(o.status for o in outcomes)
    return RunReport(args.command, key, result, status), status


def main(argv: list[str] | None = None) -> int:
    report, status = run_command(sys.argv[1:] if argv is None else argv)
    if report is not None:
        sys.stdout.write(report.dumps())
    return status


if __name__ == "__main__":
    sys.exit(main())
