"""Half-edge data model for graphs carrying an unoriented cyclic order per vertex.

A star graph is an abstract graph (loops and parallel edges are first-class)
whose half-edges are grouped per vertex into a cyclic order that is meaningful
only up to rotation and reversal.  This module provides the immutable data
types (CyclicOrder, StarGraph, RotationSystem), structural validation, the
opposite-half-edge lookup for even-degree vertices, and the alternation
primitive on which every crossing computation in the package is built.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "StarPlanError",
    "ResourceCeilingError",
    "DegreeGuardError",
    "CyclicOrder",
    "StarGraph",
    "RotationSystem",
    "validate",
    "degrees_ok_46",
    "opposite_half_edge",
    "alternates",
    "normalize_rotation",
]


class StarPlanError(Exception):
    """Domain error raised by star-graph operations."""


class ResourceCeilingError(StarPlanError):
    """A configured resource ceiling (walk count, iteration bound) was hit."""


class DegreeGuardError(StarPlanError):
    """An operation restricted to 4/6-valent graphs was given something else."""


def _canonical_cycle(seq: tuple[str, ...]) -> tuple[str, ...]:
    """Lexicographically least sequence among all rotations of seq and of its reversal."""
    n = len(seq)
    if n <= 1:
        return seq
    best = seq
    for base in (seq, seq[::-1]):
        for i in range(n):
            cand = base[i:] + base[:i]
            if cand < best:
                best = cand
    return best


def normalize_rotation(seq: Sequence[str]) -> tuple[str, ...]:
    """Rotate an oriented cyclic sequence so its least element comes first.

    Unlike CyclicOrder canonicalization this never reverses: orientation is
    preserved, only the starting point is normalized.
    """
    t = tuple(seq)
    if len(t) <= 1:
        return t
    i = t.index(min(t))
    return t[i:] + t[:i]


@dataclass(frozen=True)
class CyclicOrder:
    """Unoriented cyclic order of half-edge identifiers around one vertex.

    Two orders are equal exactly when one is a rotation of the other or a
    rotation of its reversal.  Instances normalize to a canonical form on
    construction (the lexicographically least representative sequence), so
    ordinary equality and hashing respect the cyclic symmetry.
    """

    sequence: tuple[str, ...]

    def __post_init__(self) -> None:
        seq = tuple(self.sequence)
        if len(set(seq)) != len(seq):
            dupes = sorted(h for h, c in Counter(seq).items() if c > 1)
            raise ValueError(f"repeated half-edge(s) in cyclic order: {', '.join(dupes)}")
        object.__setattr__(self, "sequence", _canonical_cycle(seq))

    def __len__(self) -> int:
        return len(self.sequence)

    def __iter__(self) -> Iterator[str]:
        return iter(self.sequence)

    def __contains__(self, half_edge: object) -> bool:
        return half_edge in self.sequence

    def index(self, half_edge: str) -> int:
        return self.sequence.index(half_edge)


class StarGraph:
    """Immutable half-edge graph with a CyclicOrder at each vertex.

    ``vertices`` maps vertex id to the cyclic order of its half-edges;
    ``edges`` is a perfect matching on half-edge ids, stored as sorted pairs
    in sorted order.  Loops (both halves at one vertex) and parallel edges
    are ordinary citizens.  Instances are never mutated; every
    transformation in the package builds a new graph.

    Construction is permissive so that ``validate`` can report structural
    violations as data; algorithms assume a graph that validates cleanly.
    """

    __slots__ = ("vertices", "edges", "_vertex_of", "_partner")

    def __init__(
        self,
        vertices: Mapping[str, CyclicOrder | Sequence[str]],
        edges: Iterable[Sequence[str]] = (),
    ) -> None:
        vs: dict[str, CyclicOrder] = {}
        for v in sorted(vertices):
            order = vertices[v]
            vs[v] = order if isinstance(order, CyclicOrder) else CyclicOrder(tuple(order))
        object.__setattr__(self, "vertices", vs)
        pairs = tuple(sorted(tuple(sorted((a, b))) for a, b in edges))
        object.__setattr__(self, "edges", pairs)
        vertex_of: dict[str, str] = {}
        for v, order in vs.items():
            for h in order.sequence:
                vertex_of[h] = v
        partner: dict[str, str] = {}
        for a, b in pairs:
            partner[a] = b
            partner[b] = a
        object.__setattr__(self, "_vertex_of", vertex_of)
        object.__setattr__(self, "_partner", partner)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("StarGraph is immutable")

    def vertex_of(self, half_edge: str) -> str:
        try:
            return self._vertex_of[half_edge]
        except KeyError:
            raise StarPlanError(f"unknown half-edge {half_edge!r}") from None

    def partner(self, half_edge: str) -> str:
        try:
            return self._partner[half_edge]
        except KeyError:
            raise StarPlanError(f"half-edge {half_edge!r} is not matched by any edge") from None

    def degree(self, vertex: str) -> int:
        try:
            return len(self.vertices[vertex])
        except KeyError:
            raise StarPlanError(f"unknown vertex {vertex!r}") from None

    @property
    def half_edge_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._vertex_of))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StarGraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self) -> int:
        key = tuple((v, o.sequence) for v, o in self.vertices.items())
        return hash((key, self.edges))

    def __repr__(self) -> str:
        return f"StarGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"


@dataclass(frozen=True)
class RotationSystem:
    """Oriented cyclic order of half-edges per vertex (an embedding candidate).

    Rotation lists are normalized to start at their least half-edge; the
    orientation (direction of the list) is significant, unlike CyclicOrder.
    """

    rotations: Mapping[str, tuple[str, ...]]

    def __post_init__(self) -> None:
        fixed = {}
        for v in sorted(self.rotations):
            rot = tuple(self.rotations[v])
            if len(set(rot)) != len(rot):
                raise ValueError(f"repeated half-edge in rotation at vertex {v!r}")
            fixed[v] = normalize_rotation(rot)
        object.__setattr__(self, "rotations", fixed)

    def rotation_at(self, vertex: str) -> tuple[str, ...]:
        try:
            return self.rotations[vertex]
        except KeyError:
            raise StarPlanError(f"no rotation recorded for vertex {vertex!r}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RotationSystem):
            return NotImplemented
        return dict(self.rotations) == dict(other.rotations)


def validate(graph: StarGraph) -> list[str]:
    """Return a list of structural violations; an empty list means valid.

    Checks that every half-edge appears in exactly one vertex order and in
    exactly one edge pair, and that no edge pairs a half-edge with itself.
    Violations are data, not failures: nothing raises.
    """
    problems: list[str] = []
    placement: dict[str, list[str]] = {}
    for v, order in graph.vertices.items():
        for h in order.sequence:
            placement.setdefault(h, []).append(v)
    for h, vs in sorted(placement.items()):
        if len(vs) > 1:
            problems.append(f"half-edge {h!r} listed at multiple vertices: {', '.join(sorted(vs))}")
    edge_count: Counter[str] = Counter()
    for a, b in graph.edges:
        if a == b:
            problems.append(f"edge pairs half-edge {a!r} with itself")
        for h in (a, b):
            if h not in placement:
                problems.append(f"edge ({a!r}, {b!r}) references unknown half-edge {h!r}")
            edge_count[h] += 1
    for h, c in sorted(edge_count.items()):
        if c > 1:
            problems.append(f"half-edge {h!r} appears in {c} edges")
    unmatched = sorted(h for h in placement if edge_count.get(h, 0) == 0)
    if unmatched:
        problems.append("unmatched half-edges: " + ", ".join(unmatched))
    return problems


def degrees_ok_46(graph: StarGraph) -> bool:
    """True iff every vertex has degree 4 or 6.

    Edgeless vertices are exempt: a degree-0 vertex is trivially planar and
    the deciders skip it rather than reject the graph.
    """
    return all(len(order) in (0, 4, 6) for order in graph.vertices.values())


def opposite_half_edge(graph: StarGraph, half_edge: str) -> str:
    """Half-edge at cyclic distance n/2 from ``half_edge`` around its vertex.

    Defined only at even-degree vertices; the choice is invariant under
    rotation and reversal of the order, and the map is an involution.
    """
    v = graph.vertex_of(half_edge)
    seq = graph.vertices[v].sequence
    n = len(seq)
    if n % 2 != 0:
        raise StarPlanError(f"no opposite defined at odd-degree vertex {v!r}")
    i = seq.index(half_edge)
    return seq[(i + n // 2) % n]


def alternates(order: CyclicOrder, pair_p: Sequence[str], pair_q: Sequence[str]) -> bool:
    """True iff the two half-edges of pair_p separate those of pair_q in ``order``.

    The four half-edges must be distinct and all present.  The result is
    invariant under rotation and reversal of the order and under swapping
    the two pairs, which is what makes it usable as a crossing test.
    """
    p = tuple(pair_p)
    q = tuple(pair_q)
    four = set(p) | set(q)
    if len(p) != 2 or len(q) != 2 or len(four) != 4:
        raise ValueError("alternates needs two disjoint pairs of distinct half-edges")
    missing = sorted(h for h in four if h not in order)
    if missing:
        raise ValueError(f"half-edge(s) not in cyclic order: {', '.join(missing)}")
    marks = [h in q for h in order.sequence if h in four]
    return marks[0] == marks[2]
