"""Reading and writing graphs and certificates.

Graphs travel as a small line-oriented text format: ``vertex <id> order
<half-edges...>`` declares a vertex with its cyclic order (possibly empty)
and ``edge <a> <b>`` matches two half-edges; ``#`` starts a comment.  The
serializer always emits the canonical form (sorted vertices, canonical
orders, sorted edges), and ``graph_sha256`` hashes exactly that text, which
is how certificates are pinned to the graph they talk about.

Certificates are JSON documents with a ``kind`` field.  Loading is strict:
unknown or missing keys, wrong types, and values not already in canonical
form are all rejected, so a certificate cannot drift from what the builders
emit.  Verification re-checks the mathematical claim against the graph
without repeating the search that produced it.
"""

from __future__ import annotations

import hashlib
import json
import re
from typing import Any, Mapping

from .core import RotationSystem, StarGraph, StarPlanError, normalize_rotation
from .cycles import (
    ClosedWalk,
    ObstructCertificate,
    Pass,
    TransitionSystem,
    transition_system_violations,
    verify_obstruct,
)
from .expansion import ExpansionMap, TriangleExpansion, expand
from .planarity import CrosscheckVerdict, EmbeddingWitness, FaceTrace, verify_embedding

__all__ = [
    "ParseError",
    "CertificateError",
    "parse_graph",
    "serialize_graph",
    "graph_sha256",
    "certificate_for_obstruct",
    "certificate_for_embedding",
    "certificate_for_expansion",
    "certificate_for_transition_system",
    "certificate_for_crosscheck",
    "dump_certificate",
    "load_certificate",
    "verify_certificate",
    "obstruct_from_doc",
    "embedding_from_doc",
    "expansion_from_doc",
    "transition_system_from_doc",
]

_TOKEN_RE = re.compile(r"[A-Za-z0-9_.\-]+\Z")
_SHA_RE = re.compile(r"[0-9a-f]{64}\Z")

CERTIFICATE_KINDS = (
    "obstruct",
    "embedding",
    "expansion_map",
    "transition_system",
    "crosscheck",
)


class ParseError(StarPlanError):
    """Raised when graph text cannot be parsed."""


class CertificateError(StarPlanError):
    """Raised when a certificate document is malformed or not canonical."""


# ---------------------------------------------------------------------------
# graph text format


def parse_graph(text: str) -> StarGraph:
    """Parse the line-oriented graph format.

    Syntax errors carry the line number.  Structural problems that are legal
    to write down (unmatched half-edges, repeated pairings) parse fine and
    are reported by ``starplan.core.validate`` instead.
    """
    vertices: dict[str, tuple[str, ...]] = {}
    edges: list[tuple[str, str]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        for tok in parts[1:]:
            if not _TOKEN_RE.match(tok):
                raise ParseError(f"line {ln}: bad token {tok!r}")
        if parts[0] == "vertex":
            if len(parts) < 3 or parts[2] != "order":
                raise ParseError(f"line {ln}: expected 'vertex <id> order <half-edges...>'")
            vid = parts[1]
            if vid in vertices:
                raise ParseError(f"line {ln}: duplicate vertex {vid!r}")
            halves = tuple(parts[3:])
            if len(set(halves)) != len(halves):
                raise ParseError(f"line {ln}: repeated half-edge in cyclic order")
            vertices[vid] = halves
        elif parts[0] == "edge":
            if len(parts) != 3:
                raise ParseError(f"line {ln}: expected 'edge <half> <half>'")
            edges.append((parts[1], parts[2]))
        else:
            raise ParseError(f"line {ln}: unknown directive {parts[0]!r}")
    return StarGraph(vertices, edges)


def serialize_graph(graph: StarGraph) -> str:
    """Canonical text form: sorted vertices with canonical orders, sorted edges."""
    lines = []
    for v in sorted(graph.vertices):
        lines.append(" ".join(["vertex", v, "order", *graph.vertices[v].sequence]))
    for a, b in graph.edges:
        lines.append(f"edge {a} {b}")
    return "\n".join(lines) + "\n"


def graph_sha256(graph: StarGraph) -> str:
    return hashlib.sha256(serialize_graph(graph).encode("utf-8")).hexdigest()


# ---------------------------------------------------------------------------
# certificate builders


def _walk_doc(walk: ClosedWalk) -> dict[str, Any]:
    return {"steps": [[v, a, b] for v, a, b in walk.steps]}


def _pass_doc(p: Pass) -> dict[str, Any]:
    return {"vertex": p.vertex, "pair": list(p.pair)}


def certificate_for_obstruct(graph: StarGraph, cert: ObstructCertificate) -> dict[str, Any]:
    return {
        "kind": "obstruct",
        "graph_sha256": graph_sha256(graph),
        "walk_a": _walk_doc(cert.walk_a),
        "walk_b": _walk_doc(cert.walk_b),
        "crossing_vertex": cert.crossing_vertex,
        "pass_a": _pass_doc(cert.pass_a),
        "pass_b": _pass_doc(cert.pass_b),
    }


def certificate_for_embedding(graph: StarGraph, witness: EmbeddingWitness) -> dict[str, Any]:
    return {
        "kind": "embedding",
        "graph_sha256": graph_sha256(graph),
        "rotations": {
            v: list(witness.rotation.rotation_at(v)) for v in sorted(graph.vertices)
        },
        "faces": [list(f) for f in witness.trace.faces],
        "genus": witness.genus,
    }


def certificate_for_expansion(
    graph: StarGraph, expanded: StarGraph, emap: ExpansionMap
) -> dict[str, Any]:
    return {
        "kind": "expansion_map",
        "graph_sha256": graph_sha256(graph),
        "expanded_sha256": graph_sha256(expanded),
        "variant": emap.variant,
        "triangles": [
            {
                "origin": tri.origin,
                "corners": list(tri.corners),
                "prev_halves": list(tri.prev_halves),
                "next_halves": list(tri.next_halves),
                "groups": [list(g) for g in tri.groups],
                "external_map": [list(p) for p in tri.external_map],
            }
            for tri in emap.triangles
        ],
    }


def certificate_for_transition_system(
    graph: StarGraph, system: TransitionSystem
) -> dict[str, Any]:
    return {
        "kind": "transition_system",
        "graph_sha256": graph_sha256(graph),
        "matchings": {
            v: [list(pair) for pair in pairs] for v, pairs in system.matchings.items()
        },
    }


def certificate_for_crosscheck(graph: StarGraph, verdict: CrosscheckVerdict) -> dict[str, Any]:
    return {
        "kind": "crosscheck",
        "graph_sha256": graph_sha256(graph),
        "criterion_planar": verdict.criterion_planar,
        "embedding_planar": verdict.embedding_planar,
        "agree": verdict.agree,
        "obstruct": (
            None if verdict.obstruct is None else certificate_for_obstruct(graph, verdict.obstruct)
        ),
        "embedding": (
            None if verdict.witness is None else certificate_for_embedding(graph, verdict.witness)
        ),
    }


def dump_certificate(doc: Mapping[str, Any]) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# strict loading


def _fail(msg: str) -> None:
    raise CertificateError(msg)


def _need_keys(doc: Mapping[str, Any], keys: set[str], what: str) -> None:
    if not isinstance(doc, dict):
        _fail(f"{what} must be a JSON object")
    if set(doc) != keys:
        _fail(f"{what} must have exactly the keys {sorted(keys)}")


def _token(x: Any, what: str) -> str:
    if not isinstance(x, str) or not _TOKEN_RE.match(x):
        _fail(f"{what} must be a token string")
    return x


def _strict_bool(x: Any, what: str) -> bool:
    if not isinstance(x, bool):
        _fail(f"{what} must be a boolean")
    return x


def _strict_int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(f"{what} must be an integer")
    return x


def _sha(x: Any, what: str) -> str:
    if not isinstance(x, str) or not _SHA_RE.match(x):
        _fail(f"{what} must be a 64-digit lowercase hex sha256")
    return x


def _load_walk(doc: Any, what: str) -> ClosedWalk:
    _need_keys(doc, {"steps"}, what)
    steps = doc["steps"]
    if not isinstance(steps, list) or not steps:
        _fail(f"{what}.steps must be a non-empty list")
    fixed = []
    for s in steps:
        if not isinstance(s, list) or len(s) != 3:
            _fail(f"{what}.steps entries must be [vertex, in, out] triples")
        fixed.append(tuple(_token(x, f"{what} step field") for x in s))
    try:
        walk = ClosedWalk(tuple(fixed))
    except ValueError as exc:
        _fail(f"{what}: {exc}")
    if walk.steps != tuple(fixed):
        _fail(f"{what}.steps is not in canonical form")
    return walk


def _load_pass(doc: Any, what: str) -> Pass:
    _need_keys(doc, {"vertex", "pair"}, what)
    v = _token(doc["vertex"], f"{what}.vertex")
    pair = doc["pair"]
    if not isinstance(pair, list) or len(pair) != 2:
        _fail(f"{what}.pair must be a list of two half-edges")
    a, b = (_token(x, f"{what}.pair entry") for x in pair)
    if not a < b:
        _fail(f"{what}.pair must be two distinct half-edges in sorted order")
    return Pass(v, (a, b))


def _validate_obstruct(doc: Mapping[str, Any]) -> None:
    _need_keys(
        doc,
        {"kind", "graph_sha256", "walk_a", "walk_b", "crossing_vertex", "pass_a", "pass_b"},
        "obstruct certificate",
    )
    _sha(doc["graph_sha256"], "graph_sha256")
    _load_walk(doc["walk_a"], "walk_a")
    _load_walk(doc["walk_b"], "walk_b")
    _token(doc["crossing_vertex"], "crossing_vertex")
    _load_pass(doc["pass_a"], "pass_a")
    _load_pass(doc["pass_b"], "pass_b")


def _validate_embedding(doc: Mapping[str, Any]) -> None:
    _need_keys(doc, {"kind", "graph_sha256", "rotations", "faces", "genus"}, "embedding certificate")
    _sha(doc["graph_sha256"], "graph_sha256")
    rotations = doc["rotations"]
    if not isinstance(rotations, dict):
        _fail("rotations must be an object")
    for v, seq in rotations.items():
        _token(v, "rotation vertex")
        if not isinstance(seq, list):
            _fail(f"rotation at {v!r} must be a list")
        halves = tuple(_token(h, f"rotation half-edge at {v!r}") for h in seq)
        if len(set(halves)) != len(halves):
            _fail(f"rotation at {v!r} repeats a half-edge")
        if halves != normalize_rotation(halves):
            _fail(f"rotation at {v!r} is not in canonical form")
    faces = doc["faces"]
    if not isinstance(faces, list):
        _fail("faces must be a list")
    fixed = []
    for f in faces:
        if not isinstance(f, list):
            _fail("each face must be a list of half-edges")
        cyc = tuple(_token(h, "face half-edge") for h in f)
        if cyc != normalize_rotation(cyc):
            _fail("face is not in canonical form")
        fixed.append(cyc)
    if fixed != sorted(fixed):
        _fail("faces must be listed in sorted order")
    genus = _strict_int(doc["genus"], "genus")
    if genus < 0:
        _fail("genus must be non-negative")


def _validate_transition_system(doc: Mapping[str, Any]) -> None:
    _need_keys(doc, {"kind", "graph_sha256", "matchings"}, "transition system certificate")
    _sha(doc["graph_sha256"], "graph_sha256")
    matchings = doc["matchings"]
    if not isinstance(matchings, dict):
        _fail("matchings must be an object")
    for v, pairs in matchings.items():
        _token(v, "matching vertex")
        if not isinstance(pairs, list):
            _fail(f"matching at {v!r} must be a list of pairs")
        fixed = []
        for pair in pairs:
            if not isinstance(pair, list) or len(pair) != 2:
                _fail(f"matching entries at {v!r} must be pairs")
            a, b = (_token(x, f"matching half-edge at {v!r}") for x in pair)
            if not a < b:
                _fail(f"matching pair at {v!r} must be distinct and sorted")
            fixed.append((a, b))
        if fixed != sorted(fixed):
            _fail(f"matching pairs at {v!r} must be listed in sorted order")


def _validate_expansion(doc: Mapping[str, Any]) -> None:
    _need_keys(
        doc,
        {"kind", "graph_sha256", "expanded_sha256", "variant", "triangles"},
        "expansion certificate",
    )
    _sha(doc["graph_sha256"], "graph_sha256")
    _sha(doc["expanded_sha256"], "expanded_sha256")
    if _strict_int(doc["variant"], "variant") not in (1, 2):
        _fail("variant must be 1 or 2")
    triangles = doc["triangles"]
    if not isinstance(triangles, list):
        _fail("triangles must be a list")
    for tri in triangles:
        _need_keys(
            tri,
            {"origin", "corners", "prev_halves", "next_halves", "groups", "external_map"},
            "triangle record",
        )
        _token(tri["origin"], "triangle origin")
        for field in ("corners", "prev_halves", "next_halves"):
            val = tri[field]
            if not isinstance(val, list) or len(val) != 3:
                _fail(f"triangle {field} must be a list of three names")
            for x in val:
                _token(x, f"triangle {field} entry")
        groups = tri["groups"]
        if not isinstance(groups, list) or len(groups) != 3:
            _fail("triangle groups must be three pairs")
        for g in groups:
            if not isinstance(g, list) or len(g) != 2:
                _fail("each triangle group must be a pair")
            for x in g:
                _token(x, "triangle group half-edge")
        emap = tri["external_map"]
        if not isinstance(emap, list) or len(emap) != 6:
            _fail("triangle external_map must have six entries")
        for p in emap:
            if not isinstance(p, list) or len(p) != 2:
                _fail("external_map entries must be pairs")
            for x in p:
                _token(x, "external_map half-edge")


def _validate_crosscheck(doc: Mapping[str, Any]) -> None:
    _need_keys(
        doc,
        {
            "kind",
            "graph_sha256",
            "criterion_planar",
            "embedding_planar",
            "agree",
            "obstruct",
            "embedding",
        },
        "crosscheck certificate",
    )
    sha = _sha(doc["graph_sha256"], "graph_sha256")
    crit = _strict_bool(doc["criterion_planar"], "criterion_planar")
    emb = _strict_bool(doc["embedding_planar"], "embedding_planar")
    agree = _strict_bool(doc["agree"], "agree")
    if agree != (crit == emb):
        _fail("agree flag contradicts the recorded verdicts")
    if (doc["obstruct"] is None) != crit:
        _fail("an obstruction must be present exactly when the criterion says non-planar")
    if (doc["embedding"] is None) == emb:
        _fail("an embedding witness must be present exactly when the search found one")
    for key, kind in (("obstruct", "obstruct"), ("embedding", "embedding")):
        sub = doc[key]
        if sub is None:
            continue
        _validate_doc(sub)
        if sub.get("kind") != kind:
            _fail(f"nested {key} certificate has the wrong kind")
        if sub["graph_sha256"] != sha:
            _fail(f"nested {key} certificate is pinned to a different graph")


_VALIDATORS = {
    "obstruct": _validate_obstruct,
    "embedding": _validate_embedding,
    "transition_system": _validate_transition_system,
    "expansion_map": _validate_expansion,
    "crosscheck": _validate_crosscheck,
}


def _validate_doc(doc: Any) -> None:
    if not isinstance(doc, dict):
        _fail("certificate must be a JSON object")
    kind = doc.get("kind")
    if kind not in _VALIDATORS:
        _fail(f"unknown certificate kind {kind!r}")
    _VALIDATORS[kind](doc)


def load_certificate(text: str) -> dict[str, Any]:
    """Parse and strictly validate a certificate document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"certificate is not valid JSON: {exc}") from None
    _validate_doc(doc)
    return doc


# ---------------------------------------------------------------------------
# reconstruction and verification


def obstruct_from_doc(doc: Mapping[str, Any]) -> ObstructCertificate:
    return ObstructCertificate(
        _load_walk(doc["walk_a"], "walk_a"),
        _load_walk(doc["walk_b"], "walk_b"),
        doc["crossing_vertex"],
        _load_pass(doc["pass_a"], "pass_a"),
        _load_pass(doc["pass_b"], "pass_b"),
    )


def embedding_from_doc(doc: Mapping[str, Any]) -> EmbeddingWitness:
    rotation = RotationSystem({v: tuple(seq) for v, seq in doc["rotations"].items()})
    trace = FaceTrace(tuple(sorted(tuple(f) for f in doc["faces"])))
    return EmbeddingWitness(rotation, trace, doc["genus"])


def expansion_from_doc(doc: Mapping[str, Any]) -> ExpansionMap:
    triangles = tuple(
        TriangleExpansion(
            origin=tri["origin"],
            corners=tuple(tri["corners"]),
            prev_halves=tuple(tri["prev_halves"]),
            next_halves=tuple(tri["next_halves"]),
            groups=tuple(tuple(g) for g in tri["groups"]),
            external_map=tuple(tuple(p) for p in tri["external_map"]),
        )
        for tri in doc["triangles"]
    )
    return ExpansionMap(doc["variant"], triangles)


def transition_system_from_doc(doc: Mapping[str, Any]) -> TransitionSystem:
    return TransitionSystem(
        {v: tuple(tuple(p) for p in pairs) for v, pairs in doc["matchings"].items()}
    )


def verify_certificate(graph: StarGraph, doc: Mapping[str, Any]) -> bool:
    """Re-check a certificate's claim against ``graph``.

    The document is re-validated structurally (raising CertificateError when
    malformed), its graph hash compared with the actual graph, and the
    mathematical content checked by the matching verifier.  Searches are
    never re-run; an expansion map is checked by re-expanding
    deterministically and comparing.
    """
    _validate_doc(doc)
    if doc["graph_sha256"] != graph_sha256(graph):
        return False
    kind = doc["kind"]
    if kind == "obstruct":
        return verify_obstruct(graph, obstruct_from_doc(doc))
    if kind == "embedding":
        witness = embedding_from_doc(doc)
        return verify_embedding(graph, witness) and witness.genus == 0
    if kind == "transition_system":
        return not transition_system_violations(graph, transition_system_from_doc(doc))
    if kind == "expansion_map":
        expanded, emap = expand(graph, doc["variant"])
        return (
            emap == expansion_from_doc(doc)
            and graph_sha256(expanded) == doc["expanded_sha256"]
        )
    if kind == "crosscheck":
        for sub in (doc["obstruct"], doc["embedding"]):
            if sub is not None and not verify_certificate(graph, sub):
                return False
        return True
    raise CertificateError(f"unknown certificate kind {kind!r}")
