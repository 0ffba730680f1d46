"""Closed walks, crossings, and the crossing-pair obstruction machinery.

A closed walk traverses each of its edges exactly once and is recorded as a
cyclic sequence of passes, one per vertex visit; consecutive passes are joined
by edges of the graph.  Two edge-disjoint closed walks cross at a vertex when
their passes alternate in that vertex's cyclic order, and a pair of
edge-disjoint walks with exactly one crossing (counted with multiplicity over
all pass pairs) is the obstruction this package searches for: a 4/6-valent
star graph embeds in the plane compatibly with its cyclic orders if and only
if no such pair exists.

The second half of the module relates walks of an expanded graph (every
6-vertex replaced by a triangle of 4-vertices, see ``starplan.expansion``) to
walks of the original: transition systems are traced through triangles and an
obstruction certificate found on the expansion is converted into one on the
original graph.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .core import (
    ResourceCeilingError,
    StarGraph,
    StarPlanError,
    alternates,
    opposite_half_edge,
)

if TYPE_CHECKING:
    from .expansion import ExpansionMap

__all__ = [
    "DEFAULT_WALK_CEILING",
    "Pass",
    "ClosedWalk",
    "TransitionSystem",
    "ObstructCertificate",
    "LiftError",
    "enumerate_closed_walks",
    "crossings",
    "self_crossings",
    "find_obstruct",
    "verify_obstruct",
    "closed_walk_violations",
    "transition_system_violations",
    "cycles_of_transition_system",
    "complete_transition_system",
    "classify_triangle_vertex",
    "classify_triangle_case",
    "lift_transition_system",
    "lift_obstruct",
]

DEFAULT_WALK_CEILING = 1_000_000

Step = tuple[str, str, str]  # (vertex, arriving half-edge, departing half-edge)


class LiftError(StarPlanError):
    """Raised when no obstruction pair exists among the lifted walks.

    Carries the lifted walk partition so the failure can be inspected; this
    is never silently retried.
    """

    def __init__(self, message: str, walks: tuple[ClosedWalk, ...] = ()) -> None:
        super().__init__(message)
        self.walks = walks


@dataclass(frozen=True)
class Pass:
    """One visit of a closed walk to a vertex: an unordered pair of half-edges."""

    vertex: str
    pair: tuple[str, str]

    def __post_init__(self) -> None:
        a, b = self.pair
        if a == b:
            raise ValueError(f"pass at {self.vertex!r} must use two distinct half-edges")
        object.__setattr__(self, "pair", (a, b) if a < b else (b, a))


def _reverse_steps(steps: tuple[Step, ...]) -> tuple[Step, ...]:
    return tuple((v, out, inn) for v, inn, out in reversed(steps))


def _canonical_steps(steps: tuple[Step, ...]) -> tuple[Step, ...]:
    n = len(steps)
    best = None
    for base in (steps, _reverse_steps(steps)):
        for i in range(n):
            cand = base[i:] + base[:i]
            if best is None or cand < best:
                best = cand
    return best if best is not None else steps


@dataclass(frozen=True)
class ClosedWalk:
    """Edge-simple closed walk, stored as a canonical cyclic sequence of steps.

    Each step ``(vertex, h_in, h_out)`` records one pass: the walk arrives at
    ``vertex`` via ``h_in`` and departs via ``h_out``; the departing half-edge
    of step i and the arriving half-edge of step i+1 (cyclically) form an edge
    of the graph.  Identity is up to rotation and reversal of the step
    sequence, realized by normalizing to the least representative.
    """

    steps: tuple[Step, ...]

    def __post_init__(self) -> None:
        steps = tuple((str(v), str(a), str(b)) for v, a, b in self.steps)
        if not steps:
            raise ValueError("a closed walk has at least one step")
        for v, a, b in steps:
            if a == b:
                raise ValueError(f"step at {v!r} arrives and departs via the same half-edge")
        object.__setattr__(self, "steps", _canonical_steps(steps))

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def passes(self) -> tuple[Pass, ...]:
        return tuple(Pass(v, (a, b)) for v, a, b in self.steps)

    @property
    def edge_pairs(self) -> tuple[tuple[str, str], ...]:
        """Edges traversed, one per step: departing half of step i with arriving half of step i+1."""
        n = len(self.steps)
        out = []
        for i in range(n):
            a = self.steps[i][2]
            b = self.steps[(i + 1) % n][1]
            out.append((a, b) if a < b else (b, a))
        return tuple(out)

    @property
    def edge_set(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.edge_pairs)

    @property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(v for v, _, _ in self.steps)


@dataclass(frozen=True, eq=False)
class TransitionSystem:
    """A perfect matching on the half-edges at every vertex of a graph.

    Following matched partners and graph edges partitions the edge set into
    closed walks (``cycles_of_transition_system``).
    """

    matchings: Mapping[str, tuple[tuple[str, str], ...]]

    def __post_init__(self) -> None:
        fixed = {}
        for v in sorted(self.matchings):
            pairs = tuple(sorted(tuple(sorted((a, b))) for a, b in self.matchings[v]))
            fixed[v] = pairs
        object.__setattr__(self, "matchings", fixed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TransitionSystem):
            return NotImplemented
        return dict(self.matchings) == dict(other.matchings)

    def partner_map(self) -> dict[str, str]:
        out: dict[str, str] = {}
        for pairs in self.matchings.values():
            for a, b in pairs:
                out[a] = b
                out[b] = a
        return out


@dataclass(frozen=True)
class ObstructCertificate:
    """Pair of edge-disjoint closed walks crossing exactly once.

    ``crossing_vertex`` with ``pass_a``/``pass_b`` records where the single
    crossing happens, so a verifier can re-check the claim without redoing
    the search.
    """

    walk_a: ClosedWalk
    walk_b: ClosedWalk
    crossing_vertex: str
    pass_a: Pass
    pass_b: Pass


# ---------------------------------------------------------------------------
# enumeration


def enumerate_closed_walks(
    graph: StarGraph,
    max_edges: int | None = None,
    *,
    walk_ceiling: int = DEFAULT_WALK_CEILING,
) -> tuple[ClosedWalk, ...]:
    """All edge-simple closed walks of ``graph`` using at most ``max_edges`` edges.

    With the default ``max_edges`` (the full edge count) the enumeration is
    complete.  Walks are deduplicated by canonical form and returned sorted,
    so the output is deterministic.  Exceeding ``walk_ceiling`` distinct
    walks raises ResourceCeilingError.

    The search roots a depth-first scan at each edge in canonical order and
    only extends with strictly larger edge indices, so every walk is
    generated from its least edge only (once per direction) before
    deduplication.
    """
    edges = graph.edges
    m = len(edges)
    limit = m if max_edges is None else min(max_edges, m)
    index_of_half = {}
    for i, (a, b) in enumerate(edges):
        index_of_half[a] = i
        index_of_half[b] = i
    found: dict[tuple[Step, ...], ClosedWalk] = {}

    def record(path: list[tuple[str, str]]) -> None:
        k = len(path)
        steps = tuple(
            (graph.vertex_of(path[j][1]), path[j][1], path[(j + 1) % k][0]) for j in range(k)
        )
        walk = ClosedWalk(steps)
        if walk.steps not in found:
            found[walk.steps] = walk
            if len(found) > walk_ceiling:
                raise ResourceCeilingError(
                    f"closed-walk enumeration exceeded the ceiling of {walk_ceiling} walks"
                )

    for root in range(m):
        ra, rb = edges[root]
        for h_from, h_to in ((ra, rb), (rb, ra)):
            start_vertex = graph.vertex_of(h_from)
            path = [(h_from, h_to)]
            used = 1 << root

            def extend() -> None:
                nonlocal used
                cur = graph.vertex_of(path[-1][1])
                if cur == start_vertex:
                    record(path)
                if len(path) >= limit:
                    return
                for h in graph.vertices[cur].sequence:
                    e = index_of_half[h]
                    if e <= root or used & (1 << e):
                        continue
                    used |= 1 << e
                    path.append((h, graph.partner(h)))
                    extend()
                    path.pop()
                    used &= ~(1 << e)

            extend()
    return tuple(found[k] for k in sorted(found))


# ---------------------------------------------------------------------------
# crossings


def crossings(
    graph: StarGraph, walk_a: ClosedWalk, walk_b: ClosedWalk
) -> tuple[int, tuple[tuple[str, Pass, Pass], ...]]:
    """Crossing count of two edge-disjoint walks, with the crossing locations.

    Every pass of one walk is tested against every pass of the other at
    shared vertices; the count is the number of alternating pairs, so a pair
    of walks can cross the same vertex several times and each alternation
    contributes.  Walks sharing an edge are rejected.
    """
    if walk_a.edge_set & walk_b.edge_set:
        raise ValueError("crossings is defined for edge-disjoint walks only")
    by_vertex: dict[str, list[Pass]] = defaultdict(list)
    for p in walk_b.passes:
        by_vertex[p.vertex].append(p)
    hits = []
    for pa in walk_a.passes:
        for pb in by_vertex.get(pa.vertex, ()):
            if alternates(graph.vertices[pa.vertex], pa.pair, pb.pair):
                hits.append((pa.vertex, pa, pb))
    hits.sort(key=lambda t: (t[0], t[1].pair, t[2].pair))
    return len(hits), tuple(hits)


def self_crossings(graph: StarGraph, walk: ClosedWalk) -> int:
    """Number of alternating pairs among the walk's own passes at shared vertices."""
    by_vertex: dict[str, list[Pass]] = defaultdict(list)
    for p in walk.passes:
        by_vertex[p.vertex].append(p)
    count = 0
    for v, passes in by_vertex.items():
        order = graph.vertices[v]
        for i in range(len(passes)):
            for j in range(i + 1, len(passes)):
                if alternates(order, passes[i].pair, passes[j].pair):
                    count += 1
    return count


def find_obstruct(
    graph: StarGraph, *, walk_ceiling: int = DEFAULT_WALK_CEILING
) -> ObstructCertificate | None:
    """First pair of edge-disjoint closed walks with exactly one crossing.

    Pairs are scanned in canonical walk order, so the returned certificate is
    deterministic for a given graph.  Returns None when no such pair exists,
    which by the criterion means the graph is star-planar.
    """
    walks = enumerate_closed_walks(graph, walk_ceiling=walk_ceiling)
    edge_index = {e: i for i, e in enumerate(graph.edges)}
    vertex_index = {v: i for i, v in enumerate(graph.vertices)}
    emasks = []
    vmasks = []
    for w in walks:
        em = 0
        for e in w.edge_set:
            em |= 1 << edge_index[e]
        vm = 0
        for v in w.vertex_set:
            vm |= 1 << vertex_index[v]
        emasks.append(em)
        vmasks.append(vm)
    n = len(walks)
    for i in range(n):
        for j in range(i + 1, n):
            if emasks[i] & emasks[j] or not vmasks[i] & vmasks[j]:
                continue
            count, hits = crossings(graph, walks[i], walks[j])
            if count == 1:
                v, pa, pb = hits[0]
                return ObstructCertificate(walks[i], walks[j], v, pa, pb)
    return None


def closed_walk_violations(graph: StarGraph, walk: ClosedWalk) -> list[str]:
    """Structural reasons why ``walk`` is not a valid closed walk of ``graph``."""
    problems = []
    for v, a, b in walk.steps:
        if v not in graph.vertices:
            problems.append(f"walk visits unknown vertex {v!r}")
            continue
        order = graph.vertices[v]
        for h in (a, b):
            if h not in order:
                problems.append(f"half-edge {h!r} does not belong to vertex {v!r}")
    if problems:
        return problems
    n = len(walk.steps)
    seen_edges = set()
    for i in range(n):
        a = walk.steps[i][2]
        b = walk.steps[(i + 1) % n][1]
        if graph.partner(a) != b:
            problems.append(f"consecutive passes not joined by an edge: {a!r} / {b!r}")
            continue
        e = (a, b) if a < b else (b, a)
        if e in seen_edges:
            problems.append(f"edge {e!r} traversed more than once")
        seen_edges.add(e)
    return problems


def verify_obstruct(graph: StarGraph, cert: ObstructCertificate) -> bool:
    """Independently re-check an obstruction certificate.

    Validates both walks against the graph, their edge-disjointness, and that
    the crossing tally is exactly one with the single crossing at the
    recorded vertex and passes.  Deliberately shares nothing with
    ``find_obstruct`` beyond the core alternation primitive.
    """
    for walk in (cert.walk_a, cert.walk_b):
        if closed_walk_violations(graph, walk):
            return False
    if cert.walk_a.edge_set & cert.walk_b.edge_set:
        return False
    tally = []
    for pa in cert.walk_a.passes:
        for pb in cert.walk_b.passes:
            if pa.vertex != pb.vertex:
                continue
            if alternates(graph.vertices[pa.vertex], pa.pair, pb.pair):
                tally.append((pa.vertex, pa, pb))
    if len(tally) != 1:
        return False
    v, pa, pb = tally[0]
    return v == cert.crossing_vertex and pa == cert.pass_a and pb == cert.pass_b


# ---------------------------------------------------------------------------
# transition systems


def transition_system_violations(graph: StarGraph, system: TransitionSystem) -> list[str]:
    """Reasons why ``system`` is not a valid transition system for ``graph``."""
    problems = []
    if set(system.matchings) != set(graph.vertices):
        missing = sorted(set(graph.vertices) - set(system.matchings))
        extra = sorted(set(system.matchings) - set(graph.vertices))
        if missing:
            problems.append("no matching for vertices: " + ", ".join(missing))
        if extra:
            problems.append("matchings for unknown vertices: " + ", ".join(extra))
        return problems
    for v, pairs in system.matchings.items():
        halves = [h for pair in pairs for h in pair]
        if any(a == b for a, b in pairs):
            problems.append(f"matching at {v!r} pairs a half-edge with itself")
        if sorted(halves) != sorted(graph.vertices[v].sequence):
            problems.append(f"matching at {v!r} is not a perfect matching on its half-edges")
    return problems


def cycles_of_transition_system(
    graph: StarGraph, system: TransitionSystem
) -> tuple[ClosedWalk, ...]:
    """Partition the edges of ``graph`` into closed walks induced by ``system``.

    Starting from any half-edge, alternately applying the vertex matching and
    hopping to the edge partner traces out a closed walk; each edge lands in
    exactly one walk.  The result is sorted canonically.
    """
    problems = transition_system_violations(graph, system)
    if problems:
        raise StarPlanError("invalid transition system: " + "; ".join(problems))
    match = system.partner_map()
    consumed: set[str] = set()
    walks = []
    for h0 in graph.half_edge_ids:
        if h0 in consumed:
            continue
        orbit = []
        h = h0
        while True:
            orbit.append(h)
            consumed.add(h)
            consumed.add(match[h])
            h = graph.partner(match[h])
            if h == h0:
                break
        steps = tuple((graph.vertex_of(h), h, match[h]) for h in orbit)
        walks.append(ClosedWalk(steps))
    covered = [e for w in walks for e in w.edge_pairs]
    if sorted(covered) != sorted(graph.edges):
        raise StarPlanError("transition system tracing failed to partition the edges")
    return tuple(sorted(walks, key=lambda w: w.steps))


def complete_transition_system(
    graph: StarGraph, partial: Mapping[str, Iterable[Sequence[str]]]
) -> TransitionSystem:
    """Extend per-vertex pair constraints to a full transition system.

    Half-edges not covered by ``partial`` are paired by adjacency in the
    canonical cyclic order, first available first, which makes the completion
    deterministic.
    """
    matchings = {}
    for v, order in graph.vertices.items():
        pairs = [tuple(sorted((a, b))) for a, b in partial.get(v, ())]
        matched = {h for pair in pairs for h in pair}
        if len(matched) != 2 * len(pairs):
            raise ValueError(f"overlapping pairs supplied at vertex {v!r}")
        for h in matched:
            if h not in order:
                raise ValueError(f"half-edge {h!r} does not belong to vertex {v!r}")
        rest = [h for h in order.sequence if h not in matched]
        if len(rest) % 2:
            raise StarPlanError(f"odd number of unmatched half-edges at vertex {v!r}")
        while rest:
            a, b = rest[0], rest[1]
            pairs.append((a, b) if a < b else (b, a))
            rest = rest[2:]
        matchings[v] = tuple(pairs)
    return TransitionSystem(matchings)


# ---------------------------------------------------------------------------
# lifting through expanded triangles


def _triangle_of(emap: "ExpansionMap", vertex: str):
    for tri in emap.triangles:
        if vertex in tri.corners:
            return tri
    raise StarPlanError(f"vertex {vertex!r} is not a triangle corner of the expansion map")


def classify_triangle_vertex(
    g_prime: StarGraph, emap: "ExpansionMap", system: TransitionSystem, vertex: str
) -> str:
    """Class of a triangle corner under a transition system.

    ``closed`` pairs the two triangle half-edges together, ``crossing`` pairs
    each half-edge with its opposite, and the remaining mixed matching is
    ``open``.
    """
    tri = _triangle_of(emap, vertex)
    i = tri.corners.index(vertex)
    prev_half = tri.prev_halves[i]
    next_half = tri.next_halves[i]
    partner = dict(
        p for a, b in system.matchings[vertex] for p in ((a, b), (b, a))
    ).get(prev_half)
    if partner is None:
        raise StarPlanError(f"transition system has no pair for {prev_half!r} at {vertex!r}")
    if partner == next_half:
        return "closed"
    if partner == opposite_half_edge(g_prime, prev_half):
        return "crossing"
    return "open"


_CASE_BY_CLASSES = {
    ("open", "open", "open"): 1,
    ("closed", "closed", "closed"): 2,
    ("crossing", "crossing", "crossing"): 3,
    ("closed", "open", "open"): 4,
    ("crossing", "open", "open"): 5,
    ("closed", "closed", "open"): 6,
    ("closed", "closed", "crossing"): 7,
    ("crossing", "crossing", "open"): 8,
    ("closed", "crossing", "crossing"): 9,
    ("closed", "crossing", "open"): 10,
}


def classify_triangle_case(
    g_prime: StarGraph, emap: "ExpansionMap", system: TransitionSystem, origin: str
) -> int:
    """Case number (1-10) for the multiset of corner classes of one triangle."""
    for tri in emap.triangles:
        if tri.origin == origin:
            classes = tuple(
                sorted(classify_triangle_vertex(g_prime, emap, system, c) for c in tri.corners)
            )
            return _CASE_BY_CLASSES[classes]
    raise StarPlanError(f"no triangle with origin {origin!r} in the expansion map")


def lift_transition_system(
    graph: StarGraph,
    g_prime: StarGraph,
    emap: "ExpansionMap",
    system_prime: TransitionSystem,
) -> TransitionSystem:
    """Transition system on the original graph induced by one on its expansion.

    Matchings at unexpanded vertices are copied.  At each expanded 6-vertex,
    every external half-edge is paired with the external half-edge reached by
    following the expansion's matchings and triangle edges through the
    triangle; closed walks living entirely inside a triangle have no image
    and are dropped.
    """
    match_prime = system_prime.partner_map()
    expanded = {tri.origin: tri for tri in emap.triangles}
    matchings: dict[str, tuple[tuple[str, str], ...]] = {}
    for v in graph.vertices:
        if v not in expanded:
            matchings[v] = system_prime.matchings[v]
            continue
        tri = expanded[v]
        new_to_orig = {new: orig for orig, new in tri.external_map}
        pairs = []
        seen: set[str] = set()
        for orig in sorted(dict(tri.external_map)):
            if orig in seen:
                continue
            cur = dict(tri.external_map)[orig]
            while True:
                partner = match_prime[cur]
                if partner in new_to_orig:
                    other = new_to_orig[partner]
                    break
                cur = g_prime.partner(partner)
            pairs.append(tuple(sorted((orig, other))))
            seen.add(orig)
            seen.add(other)
        matchings[v] = tuple(sorted(pairs))
    return TransitionSystem(matchings)


def lift_obstruct(
    graph: StarGraph,
    g_prime: StarGraph,
    emap: "ExpansionMap",
    cert_prime: ObstructCertificate,
) -> ObstructCertificate:
    """Convert an obstruction on the expansion into one on the original graph.

    The certificate's two walks are completed to a full transition system on
    the expansion (unconstrained half-edges paired by cyclic adjacency), the
    system is lifted through the triangles, and the induced walk partition of
    the original graph is scanned for a pair crossing exactly once.  The case
    analysis of triangle corners guarantees such a pair survives; if none is
    found a LiftError carrying the partition is raised.
    """
    if not verify_obstruct(g_prime, cert_prime):
        raise StarPlanError("obstruction certificate does not verify against the expansion")
    if not emap.triangles:
        return cert_prime
    partial: dict[str, list[tuple[str, str]]] = defaultdict(list)
    for walk in (cert_prime.walk_a, cert_prime.walk_b):
        for p in walk.passes:
            partial[p.vertex].append(p.pair)
    system_prime = complete_transition_system(g_prime, partial)
    system = lift_transition_system(graph, g_prime, emap, system_prime)
    walks = cycles_of_transition_system(graph, system)
    for i in range(len(walks)):
        for j in range(i + 1, len(walks)):
            if not walks[i].vertex_set & walks[j].vertex_set:
                continue
            count, hits = crossings(graph, walks[i], walks[j])
            if count == 1:
                v, pa, pb = hits[0]
                cert = ObstructCertificate(walks[i], walks[j], v, pa, pb)
                if not verify_obstruct(graph, cert):
                    raise LiftError(
                        "lifted pair found but failed independent verification", walks
                    )
                return cert
    raise LiftError("lifting failed: no pair of lifted walks crosses exactly once", walks)
