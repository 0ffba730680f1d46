"""Replacing 6-valent vertices by triangles of 4-valent ones, and undoing it.

``expand`` splits every 6-valent vertex into three degree-4 corners joined in
a triangle: the six half-edges are grouped into consecutive pairs of the
canonical cyclic order (two ways to do that, selected by ``variant``), each
corner keeps one pair flanked by two fresh triangle half-edges, and the
corners are wired in a 3-cycle.  External half-edges keep their identities,
so every edge of the original graph survives verbatim and the returned
``ExpansionMap`` records exactly how to fold the triangles back.

``contract_planar_rotation`` is the inverse on embeddings: given a genus-zero
rotation system of the expansion it produces one for the original graph.  A
triangle can be folded only when its three corners are oriented the same
way; a mixed triangle is repaired by reversing the rotation of the minority
corner together with everything hanging off its external edges, which keeps
the genus at zero and never unfixes another triangle, so the number of
repairs is bounded by the number of triangles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    CyclicOrder,
    RotationSystem,
    StarGraph,
    StarPlanError,
    normalize_rotation,
    validate,
)
from .planarity import genus_of_rotation

__all__ = [
    "ContractError",
    "TriangleExpansion",
    "ExpansionMap",
    "expand",
    "corner_orientation",
    "align_triangle_orientations",
    "contract_planar_rotation",
]


class ContractError(StarPlanError):
    """Raised when a rotation system of an expansion cannot be folded back."""


@dataclass(frozen=True)
class TriangleExpansion:
    """Bookkeeping for one expanded 6-valent vertex.

    Corner i carries external pair ``groups[i]`` in the order inherited from
    the original cyclic sequence, flanked by triangle half-edges
    ``prev_halves[i]`` and ``next_halves[i]``; its cyclic order is
    ``(prev, a, b, next)``.  ``external_map`` pairs each original external
    half-edge with its name in the expansion (the identity here, kept
    explicit so certificates can state the bijection).
    """

    origin: str
    corners: tuple[str, str, str]
    prev_halves: tuple[str, str, str]
    next_halves: tuple[str, str, str]
    groups: tuple[tuple[str, str], tuple[str, str], tuple[str, str]]
    external_map: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ExpansionMap:
    """All triangles produced by one ``expand`` call, plus the variant used."""

    variant: int
    triangles: tuple[TriangleExpansion, ...]


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name = name + "_"
    taken.add(name)
    return name


def expand(graph: StarGraph, variant: int = 1) -> tuple[StarGraph, ExpansionMap]:
    """Split every 6-valent vertex of ``graph`` into a triangle of 4-valent corners.

    ``variant`` selects which of the two consecutive-pair groupings of the
    canonical cyclic order is used: 1 pairs positions (1,2)(3,4)(5,6), 2
    pairs (2,3)(4,5)(6,1).  Vertices of other degrees are copied unchanged.
    """
    if variant not in (1, 2):
        raise ValueError("variant must be 1 or 2")
    problems = validate(graph)
    if problems:
        raise StarPlanError("cannot expand an inconsistent graph: " + "; ".join(problems))
    vertex_names = set(graph.vertices)
    half_names = set(graph.half_edge_ids)
    new_vertices: dict[str, CyclicOrder | tuple[str, ...]] = {}
    new_edges: list[tuple[str, str]] = list(graph.edges)
    triangles = []
    for a in sorted(graph.vertices):
        order = graph.vertices[a]
        if len(order) != 6:
            new_vertices[a] = order
            continue
        seq = order.sequence if variant == 1 else order.sequence[1:] + order.sequence[:1]
        groups = ((seq[0], seq[1]), (seq[2], seq[3]), (seq[4], seq[5]))
        corners = tuple(_fresh(f"{a}.c{i}", vertex_names) for i in (1, 2, 3))
        prev_halves = tuple(_fresh(f"{a}.t{i}p", half_names) for i in (1, 2, 3))
        next_halves = tuple(_fresh(f"{a}.t{i}n", half_names) for i in (1, 2, 3))
        for i in range(3):
            xa, xb = groups[i]
            new_vertices[corners[i]] = (prev_halves[i], xa, xb, next_halves[i])
        for i in range(3):
            new_edges.append((next_halves[i], prev_halves[(i + 1) % 3]))
        triangles.append(
            TriangleExpansion(
                origin=a,
                corners=corners,
                prev_halves=prev_halves,
                next_halves=next_halves,
                groups=groups,
                external_map=tuple((x, x) for x in order.sequence),
            )
        )
    g_prime = StarGraph(new_vertices, new_edges)
    return g_prime, ExpansionMap(variant, tuple(triangles))


def corner_orientation(rotation: RotationSystem, tri: TriangleExpansion, i: int) -> int:
    """+1 when corner i realizes its reference order forward, -1 backward.

    The reference at corner i is ``(prev, a, b, next)``; with four distinct
    half-edges a rotation is a cyclic shift of exactly one of the reference
    and its reversal, so the sign is never ambiguous.
    """
    ref = (tri.prev_halves[i],) + tri.groups[i] + (tri.next_halves[i],)
    rho = rotation.rotation_at(tri.corners[i])
    if normalize_rotation(rho) == normalize_rotation(ref):
        return 1
    if normalize_rotation(rho) == normalize_rotation(tuple(reversed(ref))):
        return -1
    raise ContractError(f"rotation at corner {tri.corners[i]!r} does not match its half-edges")


def _hanging_piece(g_prime: StarGraph, tri: TriangleExpansion, minority: int) -> set[str]:
    banned = set(tri.corners)
    piece: set[str] = set()
    stack = []
    for h in tri.groups[minority]:
        w = g_prime.vertex_of(g_prime.partner(h))
        if w not in banned and w not in piece:
            piece.add(w)
            stack.append(w)
    while stack:
        v = stack.pop()
        for h in g_prime.vertices[v].sequence:
            w = g_prime.vertex_of(g_prime.partner(h))
            if w not in banned and w not in piece:
                piece.add(w)
                stack.append(w)
    return piece


def align_triangle_orientations(
    g_prime: StarGraph, emap: ExpansionMap, rotation: RotationSystem
) -> tuple[RotationSystem, int]:
    """Repair mixed triangles of a genus-zero rotation until all are uniform.

    Each repair reverses the minority corner together with the subgraph
    hanging off its external edges (the three corners removed); the result
    must stay at genus zero and strictly decrease the number of mixed
    triangles, so at most one repair per triangle is ever needed.  Returns
    the repaired rotation and the number of repairs performed.
    """
    if genus_of_rotation(g_prime, rotation) != 0:
        raise ContractError("cannot align triangles of a rotation that is not genus zero")
    rho = {v: rotation.rotation_at(v) for v in g_prime.vertices}
    flips = 0
    for _ in range(len(emap.triangles) + 1):
        current = RotationSystem(rho)
        mixed = None
        for tri in emap.triangles:
            signs = [corner_orientation(current, tri, i) for i in range(3)]
            if len(set(signs)) > 1:
                minority_sign = 1 if signs.count(1) == 1 else -1
                mixed = (tri, signs.index(minority_sign))
                break
        if mixed is None:
            return current, flips
        tri, minority = mixed
        to_flip = _hanging_piece(g_prime, tri, minority) | {tri.corners[minority]}
        for v in to_flip:
            rho[v] = normalize_rotation(tuple(reversed(rho[v])))
        flips += 1
        if genus_of_rotation(g_prime, RotationSystem(rho)) != 0:
            raise ContractError("triangle repair broke the genus-zero property")
    raise ContractError("triangle repairs did not terminate within the expected bound")


def contract_planar_rotation(
    graph: StarGraph,
    g_prime: StarGraph,
    emap: ExpansionMap,
    rotation: RotationSystem,
) -> RotationSystem:
    """Fold a genus-zero rotation of the expansion back onto the original graph.

    After aligning every triangle, each one is collapsed to its origin
    vertex: the external half-edges are read around the triangle in the
    shared orientation, which removes two vertices, three edges and the
    triangle face, leaving the Euler characteristic unchanged.  The result
    is genus zero and realizes each original cyclic order forward or
    backward.
    """
    aligned, _ = align_triangle_orientations(g_prime, emap, rotation)
    rho: dict[str, tuple[str, ...]] = {}
    expanded = {tri.origin: tri for tri in emap.triangles}
    for v in graph.vertices:
        if v not in expanded:
            rho[v] = aligned.rotation_at(v)
            continue
        tri = expanded[v]
        sign = corner_orientation(aligned, tri, 0)
        merged: list[str] = []
        for i in range(3):
            merged.extend(tri.groups[i])
        if sign == -1:
            merged.reverse()
        new_to_orig = {new: orig for orig, new in tri.external_map}
        rho[v] = tuple(new_to_orig[h] for h in merged)
    result = RotationSystem(rho)
    if genus_of_rotation(graph, result) != 0:
        raise ContractError("contracted rotation is not genus zero")
    return result
