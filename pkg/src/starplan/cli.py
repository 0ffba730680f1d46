"""Command line interface.

Exit codes: 0 success (and, for crosscheck, agreement), 1 verification
failure or decider disagreement, 2 usage, parse, or degree-guard problems,
3 resource ceiling exceeded.  The environment variable STARPLAN_WALK_CEILING
overrides the closed-walk enumeration ceiling.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .core import (
    DegreeGuardError,
    ResourceCeilingError,
    StarGraph,
    StarPlanError,
    degrees_ok_46,
    validate,
)
from .cycles import DEFAULT_WALK_CEILING, enumerate_closed_walks, find_obstruct, lift_obstruct
from .expansion import expand
from .export import to_dot
from .fileio import (
    CertificateError,
    ParseError,
    certificate_for_crosscheck,
    certificate_for_embedding,
    certificate_for_expansion,
    certificate_for_obstruct,
    dump_certificate,
    expansion_from_doc,
    graph_sha256,
    load_certificate,
    obstruct_from_doc,
    parse_graph,
    serialize_graph,
    verify_certificate,
)
from .generate import gen_random
from .planarity import crosscheck, find_planar_star_embedding
from .report import write_report

__all__ = ["main", "run"]


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _read_graph(path: str) -> StarGraph:
    return parse_graph(_read_text(path))


def _require_consistent(graph: StarGraph, path: str) -> None:
    problems = validate(graph)
    if problems:
        raise DegreeGuardError(f"{path}: " + "; ".join(problems))


def _guard_46(graph: StarGraph, path: str) -> None:
    _require_consistent(graph, path)
    if not degrees_ok_46(graph):
        raise DegreeGuardError(
            f"{path}: the deciders require every vertex to have degree 4 or 6 "
            "(isolated vertices are allowed)"
        )


def _ceiling() -> int:
    raw = os.environ.get("STARPLAN_WALK_CEILING")
    if raw is None:
        return DEFAULT_WALK_CEILING
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value <= 0:
        raise ParseError(f"STARPLAN_WALK_CEILING must be a positive integer, not {raw!r}")
    return value


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        print(f"wrote {output}")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    problems = validate(graph)
    degrees = sorted({len(o) for o in graph.vertices.values()})
    print(f"vertices: {len(graph.vertices)}")
    print(f"edges: {len(graph.edges)}")
    print("degrees: " + (" ".join(str(d) for d in degrees) if degrees else "-"))
    print(f"sha256: {graph_sha256(graph)}")
    for p in problems:
        print(f"problem: {p}")
    ok = not problems and degrees_ok_46(graph)
    if not problems and not degrees_ok_46(graph):
        print("problem: vertex degrees outside 4/6 (isolated vertices excepted)")
    print("status: ok" if ok else "status: rejected")
    return 0 if ok else 2


def cmd_obstruct(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    _guard_46(graph, args.graph)
    cert = find_obstruct(graph, walk_ceiling=_ceiling())
    if cert is None:
        print("star-planar: no obstruction found")
        return 0
    doc = certificate_for_obstruct(graph, cert)
    if args.output:
        print("non-planar: obstruction found")
    _emit(dump_certificate(doc), args.output)
    return 0


def cmd_embed(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    _require_consistent(graph, args.graph)
    witness = find_planar_star_embedding(graph)
    if witness is None:
        print("non-planar: no compatible genus-zero rotation system")
        return 0
    doc = certificate_for_embedding(graph, witness)
    if args.output:
        print("planar: genus-zero rotation system found")
    _emit(dump_certificate(doc), args.output)
    return 0


def cmd_expand(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    _require_consistent(graph, args.graph)
    expanded, emap = expand(graph, args.variant)
    _emit(serialize_graph(expanded), args.output)
    if args.map:
        doc = certificate_for_expansion(graph, expanded, emap)
        Path(args.map).write_text(dump_certificate(doc), encoding="utf-8")
        print(f"wrote {args.map}")
    return 0


def cmd_lift(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    _guard_46(graph, args.graph)
    expanded = _read_graph(args.expanded)
    _guard_46(expanded, args.expanded)
    map_doc = load_certificate(_read_text(args.map))
    if map_doc["kind"] != "expansion_map":
        raise CertificateError(f"{args.map}: expected an expansion_map certificate")
    if not verify_certificate(graph, map_doc):
        print(f"{args.map}: FAIL (expansion_map does not match the graph)")
        return 1
    if graph_sha256(expanded) != map_doc["expanded_sha256"]:
        print(f"{args.expanded}: does not match the expansion recorded in {args.map}")
        return 1
    cert_doc = load_certificate(_read_text(args.cert))
    if cert_doc["kind"] != "obstruct":
        raise CertificateError(f"{args.cert}: expected an obstruct certificate")
    if not verify_certificate(expanded, cert_doc):
        print(f"{args.cert}: FAIL (obstruction does not verify against the expansion)")
        return 1
    emap = expansion_from_doc(map_doc)
    lifted = lift_obstruct(graph, expanded, emap, obstruct_from_doc(cert_doc))
    _emit(dump_certificate(certificate_for_obstruct(graph, lifted)), args.output)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    doc = load_certificate(_read_text(args.cert))
    ok = verify_certificate(graph, doc)
    print(f"{args.cert}: {'OK' if ok else 'FAIL'} ({doc['kind']})")
    return 0 if ok else 1


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        graph = gen_random(args.deg4, args.deg6, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(serialize_graph(graph), args.output)
    return 0


def cmd_crosscheck(args: argparse.Namespace) -> int:
    if args.output and len(args.graphs) != 1:
        print("error: --output needs exactly one input graph", file=sys.stderr)
        return 2
    ceiling = _ceiling()
    rows = []
    exit_code = 0
    for path in args.graphs:
        graph = _read_graph(path)
        _guard_46(graph, path)
        verdict = crosscheck(graph, walk_ceiling=ceiling)
        crit = "planar" if verdict.criterion_planar else "non-planar"
        emb = "planar" if verdict.embedding_planar else "non-planar"
        status = "agree" if verdict.agree else "DISAGREE"
        print(f"{path}: criterion={crit} embedding={emb} [{status}]")
        if not verdict.agree:
            exit_code = 1
        if args.output:
            doc = certificate_for_crosscheck(graph, verdict)
            Path(args.output).write_text(dump_certificate(doc), encoding="utf-8")
            print(f"wrote {args.output}")
        if args.report:
            walks = enumerate_closed_walks(graph, walk_ceiling=ceiling)
            rows.append(
                {
                    "file": path,
                    "sha256": graph_sha256(graph)[:12],
                    "vertices": len(graph.vertices),
                    "edges": len(graph.edges),
                    "closed_walks": len(walks),
                    "criterion_planar": verdict.criterion_planar,
                    "embedding_planar": verdict.embedding_planar,
                    "agree": verdict.agree,
                    "genus": verdict.witness.genus if verdict.witness else "",
                    "faces": len(verdict.witness.trace.faces) if verdict.witness else "",
                }
            )
    if args.report:
        for made in write_report(rows, args.report):
            print(f"wrote {made}")
    return exit_code


def cmd_export(args: argparse.Namespace) -> int:
    graph = _read_graph(args.graph)
    _require_consistent(graph, args.graph)
    _emit(to_dot(graph), args.output)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="starplan",
        description=(
            "Decide planarity of 4/6-valent graphs with an unoriented cyclic order of "
            "half-edges at each vertex, with machine-checkable certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse a graph file and report structural problems")
    p.add_argument("graph")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("obstruct", help="search for a pair of closed walks crossing exactly once")
    p.add_argument("graph")
    p.add_argument("-o", "--output", help="write the certificate here instead of stdout")
    p.set_defaults(func=cmd_obstruct)

    p = sub.add_parser("embed", help="search for a genus-zero rotation system")
    p.add_argument("graph")
    p.add_argument("-o", "--output", help="write the witness here instead of stdout")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("expand", help="replace every 6-valent vertex by a triangle of 4-valent ones")
    p.add_argument("graph")
    p.add_argument("--variant", type=int, choices=(1, 2), default=1)
    p.add_argument("-o", "--output", help="write the expanded graph here instead of stdout")
    p.add_argument("--map", help="also write the expansion_map certificate here")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("lift", help="carry an obstruction on an expansion back to the original graph")
    p.add_argument("--graph", required=True, help="the original graph")
    p.add_argument("--expanded", required=True, help="the expanded graph")
    p.add_argument("--map", required=True, help="expansion_map certificate")
    p.add_argument("--cert", required=True, help="obstruct certificate on the expanded graph")
    p.add_argument("-o", "--output", help="write the lifted certificate here instead of stdout")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("verify", help="verify a certificate against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("cert")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a seeded random 4/6-valent graph")
    p.add_argument("--deg4", type=int, default=0, help="number of 4-valent vertices")
    p.add_argument("--deg6", type=int, default=0, help="number of 6-valent vertices")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", help="write the graph here instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("crosscheck", help="run both deciders and compare answers")
    p.add_argument("graphs", nargs="+")
    p.add_argument("-o", "--output", help="write a crosscheck certificate (single graph only)")
    p.add_argument("--report", help="write a TSV report plus PNG figures next to it")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("export", help="export a graph to Graphviz DOT")
    p.add_argument("graph")
    p.add_argument("-o", "--output", help="write the DOT here instead of stdout")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegreeGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CertificateError as exc:
        print(f"certificate error: {exc}", file=sys.stderr)
        return 1
    except ResourceCeilingError as exc:
        print(f"resource ceiling: {exc}", file=sys.stderr)
        return 3
    except StarPlanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    sys.exit(main())
