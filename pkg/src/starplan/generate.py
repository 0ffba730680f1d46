"""Seeded random star graphs for stress tests and cross-validation runs."""

from __future__ import annotations

import random

from .core import StarGraph

__all__ = ["gen_random"]


def gen_random(n4: int, n6: int, seed: int) -> StarGraph:
    """Random star graph with ``n4`` 4-valent and ``n6`` 6-valent vertices.

    Vertices are named v1, v2, ... with the 4-valent ones first and half-edge
    j of vertex v named "v.j".  Each vertex's cyclic order is a uniform
    shuffle of its half-edges, and the edge matching pairs up a uniform
    shuffle of all half-edges, so loops and parallel edges occur naturally.
    The same seed always yields the same graph.
    """
    if n4 < 0 or n6 < 0 or n4 + n6 == 0:
        raise ValueError("need a non-negative vertex count of each degree, at least one vertex")
    rng = random.Random(seed)
    vertices: dict[str, tuple[str, ...]] = {}
    pool: list[str] = []
    for k in range(n4 + n6):
        v = f"v{k + 1}"
        degree = 4 if k < n4 else 6
        halves = [f"{v}.{j}" for j in range(1, degree + 1)]
        pool.extend(halves)
        rng.shuffle(halves)
        vertices[v] = tuple(halves)
    rng.shuffle(pool)
    edges = [(pool[i], pool[i + 1]) for i in range(0, len(pool), 2)]
    return StarGraph(vertices, edges)
