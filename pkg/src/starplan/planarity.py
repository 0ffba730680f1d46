"""Planarity of star graphs by direct embedding search, and the crosscheck.

A star graph's cyclic orders are unoriented, so a planar drawing must realize
each of them either forward or backward as the counterclockwise rotation at
the vertex.  This module searches the orientation assignments per connected
component, traces faces of each candidate rotation system, and declares the
graph star-planar when some assignment yields genus zero.  ``crosscheck``
runs this decider and the walk-pair criterion from ``starplan.cycles`` side
by side and reports whether the two agree, together with whichever
certificate the winning side produces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CyclicOrder, RotationSystem, StarGraph, StarPlanError, normalize_rotation
from .cycles import DEFAULT_WALK_CEILING, ObstructCertificate, find_obstruct, verify_obstruct

__all__ = [
    "FaceTrace",
    "EmbeddingWitness",
    "CrosscheckVerdict",
    "trace_faces",
    "genus_of_rotation",
    "connected_components",
    "find_planar_star_embedding",
    "verify_embedding",
    "is_star_planar_by_criterion",
    "crosscheck",
]


@dataclass(frozen=True)
class FaceTrace:
    """Face census of one rotation system.

    Faces are orbits of departing half-edges under "cross the edge, then turn
    to the rotation successor"; every matched half-edge appears in exactly
    one face.  An isolated vertex contributes one empty face so that a bare
    vertex has Euler characteristic 2.
    """

    faces: tuple[tuple[str, ...], ...]

    @property
    def count(self) -> int:
        return len(self.faces)


@dataclass(frozen=True)
class EmbeddingWitness:
    """A rotation system together with its face census and genus."""

    rotation: RotationSystem
    trace: FaceTrace
    genus: int


@dataclass(frozen=True)
class CrosscheckVerdict:
    """Outcome of running both deciders on one graph."""

    criterion_planar: bool
    embedding_planar: bool
    agree: bool
    obstruct: ObstructCertificate | None
    witness: EmbeddingWitness | None


def _canonical_face(cycle: tuple[str, ...]) -> tuple[str, ...]:
    if not cycle:
        return cycle
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def trace_faces(graph: StarGraph, rotation: RotationSystem) -> FaceTrace:
    """Orbits of the face-walk permutation of ``rotation`` on ``graph``.

    From a departing half-edge h, the walk crosses the edge to partner(h) and
    departs next via the rotation successor of partner(h).  Each rotation
    must order exactly the half-edges of its vertex.
    """
    succ = {}
    for v, order in graph.vertices.items():
        rho = rotation.rotation_at(v)
        if sorted(rho) != sorted(order.sequence):
            raise StarPlanError(f"rotation at {v!r} does not list its half-edges")
        n = len(rho)
        for i in range(n):
            succ[rho[i]] = rho[(i + 1) % n]
    faces = []
    pending = set(succ)
    for h0 in graph.half_edge_ids:
        if h0 not in pending:
            continue
        cycle = []
        h = h0
        while h in pending:
            pending.discard(h)
            cycle.append(h)
            h = succ[graph.partner(h)]
        faces.append(_canonical_face(tuple(cycle)))
    for order in graph.vertices.values():
        if len(order) == 0:
            faces.append(())
    return FaceTrace(tuple(sorted(faces)))


def connected_components(graph: StarGraph) -> tuple[tuple[str, ...], ...]:
    """Vertex sets of the connected components, each sorted, in sorted order."""
    seen: set[str] = set()
    comps = []
    for v0 in graph.vertices:
        if v0 in seen:
            continue
        stack = [v0]
        comp = []
        seen.add(v0)
        while stack:
            v = stack.pop()
            comp.append(v)
            for h in graph.vertices[v].sequence:
                w = graph.vertex_of(graph.partner(h))
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return tuple(sorted(comps))


def genus_of_rotation(graph: StarGraph, rotation: RotationSystem) -> int:
    """Total genus over connected components of the surface induced by ``rotation``."""
    trace = trace_faces(graph, rotation)
    comps = connected_components(graph)
    comp_of_vertex = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of_vertex[v] = i
    counts = [[0, 0, 0] for _ in comps]  # V, E, F per component
    for i, comp in enumerate(comps):
        counts[i][0] = len(comp)
    for a, b in graph.edges:
        counts[comp_of_vertex[graph.vertex_of(a)]][1] += 1
    empties = [i for i, comp in enumerate(comps) if len(comp) == 1 and len(graph.vertices[comp[0]]) == 0]
    empty_iter = iter(empties)
    for face in trace.faces:
        if face:
            counts[comp_of_vertex[graph.vertex_of(face[0])]][2] += 1
        else:
            counts[next(empty_iter)][2] += 1
    total = 0
    for v, e, f in counts:
        chi = v - e + f
        if (2 - chi) % 2:
            raise StarPlanError("face trace produced an odd Euler defect")
        total += (2 - chi) // 2
    return total


def _orientations(graph: StarGraph, v: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    seq = graph.vertices[v].sequence
    return seq, normalize_rotation(tuple(reversed(seq)))


def find_planar_star_embedding(graph: StarGraph) -> EmbeddingWitness | None:
    """Search for a genus-zero rotation system compatible with the cyclic orders.

    Each vertex independently realizes its cyclic order forward or backward.
    Reversing every vertex of a component mirrors the embedding, so the first
    vertex of each component is pinned forward and the remaining assignments
    are scanned exhaustively.  Returns the first witness found, or None.
    """
    comps = connected_components(graph)
    free: list[str] = []
    base: dict[str, tuple[str, ...]] = {}
    for comp in comps:
        for k, v in enumerate(comp):
            fwd, _ = _orientations(graph, v)
            base[v] = fwd
            if k > 0 and len(graph.vertices[v]) > 0:
                free.append(v)
    for bits in range(1 << len(free)):
        rho = dict(base)
        for t, v in enumerate(free):
            if bits >> t & 1:
                rho[v] = _orientations(graph, v)[1]
        rotation = RotationSystem(rho)
        trace = trace_faces(graph, rotation)
        genus = genus_of_rotation(graph, rotation)
        if genus == 0:
            return EmbeddingWitness(rotation, trace, 0)
    return None


def _compatible(graph: StarGraph, rotation: RotationSystem) -> bool:
    for v, order in graph.vertices.items():
        rho = rotation.rotation_at(v)
        if sorted(rho) != sorted(order.sequence):
            return False
        if CyclicOrder(rho) != order:
            return False
    return True


def verify_embedding(graph: StarGraph, witness: EmbeddingWitness) -> bool:
    """Re-check an embedding witness: compatibility, face census, genus claim.

    The face trace is recomputed from scratch and compared set-for-set with
    the recorded census, so a tampered face list is caught even when the
    count happens to match.
    """
    try:
        if not _compatible(graph, witness.rotation):
            return False
        trace = trace_faces(graph, witness.rotation)
        if sorted(trace.faces) != sorted(witness.trace.faces):
            return False
        return genus_of_rotation(graph, witness.rotation) == witness.genus
    except StarPlanError:
        return False


def is_star_planar_by_criterion(
    graph: StarGraph, *, walk_ceiling: int = DEFAULT_WALK_CEILING
) -> tuple[bool, ObstructCertificate | None]:
    """Decide star-planarity by absence of a once-crossing walk pair."""
    cert = find_obstruct(graph, walk_ceiling=walk_ceiling)
    return cert is None, cert


def crosscheck(
    graph: StarGraph, *, walk_ceiling: int = DEFAULT_WALK_CEILING
) -> CrosscheckVerdict:
    """Run both deciders and compare their answers.

    The two paths share no search code, so agreement is meaningful evidence;
    whichever side has something to show contributes its certificate, and
    both certificates are verified before the verdict is returned.
    """
    planar_c, cert = is_star_planar_by_criterion(graph, walk_ceiling=walk_ceiling)
    witness = find_planar_star_embedding(graph)
    planar_e = witness is not None
    if cert is not None and not verify_obstruct(graph, cert):
        raise StarPlanError("criterion produced a certificate that fails verification")
    if witness is not None and not verify_embedding(graph, witness):
        raise StarPlanError("embedding search produced a witness that fails verification")
    return CrosscheckVerdict(planar_c, planar_e, planar_c == planar_e, cert, witness)
