"""Command-line front end.

Exit codes: 0 success, 1 precondition not met, 2 parse or usage error,
3 checker failure (or a classifier counterexample).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .coloring import (
    Coloring,
    Verdict,
    brooks_color,
    classify_critical,
    color_via_partition,
    omega_d,
)
from .corpus import ENGINES, CorpusSpec, corpus_verify, parse_grid
from .graph import Graph, build_complete, build_edgeless, build_o_n, degeneracy
from .io import (
    GraphFormatError,
    SchemaError,
    certificate_document,
    parse_graph,
    parse_graph_text,
    read_certificate,
    reverify,
    write_certificate,
    write_graph,
    format_graph,
)
from .oracle import OracleSizeError, OracleTimeout, exact_chi, extract_critical_subgraph, is_vertex_critical
from .partition import EngineError, PreconditionError, borodin_partition, find_partition_t1, find_partition_t2
from .verify import check_coloring

EXIT_OK, EXIT_PRECONDITION, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3


class _UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _load(args) -> Graph:
    if args.input is None:
        raise _UsageError("--input is required")
    if args.input == "-":
        return parse_graph_text(sys.stdin.read(), args.format or "dimacs")
    return parse_graph(args.input, args.format)


def _emit(args, g: Graph, cert, command: str, params: dict, **verify_params) -> int:
    doc = certificate_document(g, cert, command, params, **verify_params)
    outcome = doc["outcome"]
    label = {"special": "Outcome1 special structure", "partition": "Outcome2 partition",
             "join": "Outcome1 join structure", "coloring": "coloring"}.get(outcome, outcome)
    passed = doc["checker"]["passed"]
    print(f"{command}: {label}; checker {'pass' if passed else 'FAIL'}")
    if "sets" in doc:
        for key, value in doc["sets"].items():
            print(f"  {key}: {value}")
    if "coloring" in doc:
        print(f"  colors used: {len(set(doc['coloring']['colors']))}")
        print(f"  colors: {doc['coloring']['colors']}")
    if not passed:
        for clause in doc["checker"]["clauses"]:
            if not clause["passed"]:
                print(f"  violated: {clause['name']} {clause['detail']}", file=sys.stderr)
    if args.out:
        write_certificate(doc, args.out)
    return EXIT_OK if passed else EXIT_VERIFY


def cmd_partition(args) -> int:
    g = _load(args)
    cert = find_partition_t1(g, args.r, args.d, seed=args.seed, check=False, keep_trace=args.trace)
    return _emit(args, g, cert, "partition", {"seed": args.seed})


def cmd_degen(args) -> int:
    g = _load(args)
    cert = find_partition_t2(g, args.r, args.d, seed=args.seed, check=False, keep_trace=args.trace)
    return _emit(args, g, cert, "degen", {"seed": args.seed})


def cmd_borodin(args) -> int:
    g = _load(args)
    p = borodin_partition(g, args.r1, args.r2, seed=args.seed)
    r = (args.r1, args.r2)
    ok = True
    print("borodin: partition")
    for i, part in enumerate(p.parts):
        sub = g.induced(part)
        deg = sub.max_degree() if part else 0
        col = degeneracy(sub) + 1 if part else 0
        good = deg <= r[i] and col <= r[i]
        ok &= good
        print(f"  V{i + 1}: {sorted(part)}  max degree {deg} <= {r[i]}, col {col} <= {r[i]}: "
              f"{'pass' if good else 'FAIL'}")
    if args.out:
        Path(args.out).write_text(json.dumps({
            "tool": "partcolor", "tool_version": __version__, "command": "borodin",
            "params": {"r": list(r), "seed": args.seed},
            "parts": [sorted(x) for x in p.parts], "passed": ok}, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_color(args) -> int:
    g = _load(args)
    out = color_via_partition(g, args.r, args.d, seed=args.seed)
    if isinstance(out, Coloring):
        return _emit(args, g, out, "color", {"seed": args.seed, "r": list(args.r), "d": args.d,
                                            "max_colors": sum(args.r)}, max_colors=sum(args.r))
    return _emit(args, g, out, "color", {"seed": args.seed}, omega_d=omega_d(g, args.d))


def cmd_brooks(args) -> int:
    g = _load(args)
    col = brooks_color(g, args.colors)
    return _emit(args, g, col, "brooks", {"colors": args.colors, "max_colors": args.colors},
                 max_colors=args.colors)


def cmd_classify(args) -> int:
    g = _load(args)
    verdict = classify_critical(g, args.p)
    print(verdict)
    if args.out:
        write_certificate(certificate_document(g, verdict, "classify", {"p": args.p}), args.out)
    if verdict.verdict in (Verdict.IS_COMPLETE, Verdict.IS_O5):
        return EXIT_OK
    if verdict.verdict is Verdict.HYPOTHESIS_NOT_MET:
        return EXIT_PRECONDITION
    return EXIT_VERIFY


def cmd_construct(args) -> int:
    family = args.family.upper()
    if family == "K":
        g = build_complete(args.n)
    elif family == "E":
        g = build_edgeless(args.n)
    else:
        g = build_o_n(args.n)
    if args.out:
        write_graph(g, args.out, args.format)
        print(f"wrote {family}_{args.n}: {g.n} vertices, {g.num_edges()} edges -> {args.out}")
    else:
        sys.stdout.write(format_graph(g, args.format or "dimacs"))
    return EXIT_OK


def cmd_chi(args) -> int:
    g = _load(args)
    cert = exact_chi(g)
    ok, _ = check_coloring(g, list(cert.coloring), cert.chi)
    print(cert.chi)
    if args.out:
        Path(args.out).write_text(json.dumps({
            "tool": "partcolor", "tool_version": __version__, "command": "chi",
            "chi": cert.chi, "coloring": list(cert.coloring),
            "lower_bound": cert.lower_bound, "clique": sorted(cert.lower_bound_clique)}, indent=2) + "\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_critical(args) -> int:
    g = _load(args)
    cert = is_vertex_critical(g)
    print(f"chi {cert.chi}; vertex critical: {'yes' if cert.is_critical else 'no'}")
    sub, kept = (g, tuple(range(g.n))) if cert.is_critical else extract_critical_subgraph(g)
    if not cert.is_critical:
        print(f"critical subgraph on {sub.n} vertices: {list(kept)}")
    if args.out:
        write_graph(sub, args.out, args.format)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load(args)
    doc = read_certificate(args.cert)
    ok, clauses = reverify(g, doc)
    print(f"check: {'pass' if ok else 'FAIL'}")
    for c in clauses:
        if not c.passed:
            print(f"  violated: {c.name} {c.detail}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_verify_corpus(args) -> int:
    unknown = [e for e in args.engines if e not in ENGINES]
    if unknown:
        raise _UsageError(f"unknown engine(s) {', '.join(unknown)}; choose from {', '.join(ENGINES)}")
    try:
        grid = parse_grid(args.grid)
    except ValueError:
        raise _UsageError(f"cannot parse --grid {args.grid!r}") from None
    spec = CorpusSpec(
        max_n=args.max_n, min_n=args.min_n, connected_only=not args.all_graphs,
        random_count=args.random, engines=tuple(args.engines), ks=args.k, grid=grid,
        seed=args.seed or 0, workers=args.workers,
        families=tuple(args.families),
    )
    report = corpus_verify(spec)
    summary = report.as_dict()
    print(f"graphs {report.graphs}  checks {report.checks}  passed {report.passed}  "
          f"failed {report.failed}  errors {report.errors}  skipped {report.skipped}  "
          f"({report.seconds:.1f}s)")
    for engine, row in report.by_engine.items():
        print(f"  {engine}: " + "  ".join(f"{k} {v}" for k, v in row.items()))
    if args.out:
        Path(args.out).write_text(json.dumps(summary, indent=2) + "\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="graph file (DIMACS .col or edge list); '-' for stdin")
    common.add_argument("--format", choices=("dimacs", "edge-list"), help="override format detection")
    common.add_argument("--out", "-o", help="write the result document here")
    common.add_argument("--seed", type=int, default=None, help="seed for the starting partition")
    common.add_argument("--trace", action="store_true", help="record the move trace")

    parser = argparse.ArgumentParser(prog="partcolor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"partcolor {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", parents=[common], help="low-degree partition with special-structure fallback")
    p.add_argument("--r", type=_int_list, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("degen", parents=[common], help="partition with the regular-component refinement")
    p.add_argument("--r", type=_int_list, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_degen)

    p = sub.add_parser("borodin", parents=[common], help="two-part degree and degeneracy partition")
    p.add_argument("--r1", type=int, required=True)
    p.add_argument("--r2", type=int, required=True)
    p.set_defaults(func=cmd_borodin)

    p = sub.add_parser("color", parents=[common], help="color with wt(r) colors via a partition")
    p.add_argument("--r", type=_int_list, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("brooks", parents=[common], help="Brooks coloring")
    p.add_argument("--colors", type=int, required=True)
    p.set_defaults(func=cmd_brooks)

    p = sub.add_parser("classify", parents=[common], help="classify a critical graph")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("construct", parents=[common], help="write K_n, E_n or O_n")
    p.add_argument("--family", choices=("K", "E", "O", "k", "e", "o"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("chi", parents=[common], help="exact chromatic number")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("critical", parents=[common], help="criticality test and critical subgraph")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("check", parents=[common], help="re-verify a stored certificate")
    p.add_argument("--cert", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-corpus", parents=[common], help="run engines over a graph corpus")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--all-graphs", action="store_true", help="include disconnected graphs")
    p.add_argument("--random", type=int, default=0, help="number of seeded G(n,p) samples")
    p.add_argument("--grid", default="auto", help="'R:D,...;R:D' e.g. '2,2:2,3,4', or 'auto'")
    p.add_argument("--k", type=_int_list, default=(2,), help="part counts for the auto grid")
    p.add_argument("--engines", type=lambda s: [x for x in s.split(",") if x], default=["t1"])
    p.add_argument("--families", type=lambda s: [x for x in s.split(",") if x], default=[])
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GraphFormatError, SchemaError, _UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, OracleSizeError) as exc:
        print(f"precondition not met: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (EngineError, OracleTimeout) as exc:
        print(f"engine failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
