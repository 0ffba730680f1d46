"""Shared builders and independent oracles for the test suite.

The oracles here deliberately reimplement their answers from first
principles (brute force where possible) so that library results are checked
against code that shares nothing with the implementation under test.
"""

from __future__ import annotations

import itertools

from starplan import StarGraph, TransitionSystem, expand


def bouquet4(pairs):
    """Single 4-valent vertex "v" with order (h1..h4) and the given loop pairs."""
    return StarGraph({"v": ("h1", "h2", "h3", "h4")}, pairs)


def bouquet6(pairs):
    """Single 6-valent vertex "a" with order (1..6) and the given loop pairs."""
    return StarGraph({"a": ("1", "2", "3", "4", "5", "6")}, pairs)


NESTED = [("h1", "h2"), ("h3", "h4")]
CROSSED = [("h1", "h3"), ("h2", "h4")]
THREE_LOOPS = [("1", "4"), ("3", "5"), ("2", "6")]
PETALS = [("1", "2"), ("3", "4"), ("5", "6")]
OPPOSITE = [("1", "4"), ("2", "5"), ("3", "6")]


def all_matchings(items):
    """Every perfect matching of a sequence, as lists of pairs."""
    items = list(items)
    if not items:
        yield []
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1 :]
        for m in all_matchings(rest):
            yield [(first, items[i])] + m


def canonical_steps(steps):
    """Least representative of a step sequence under rotation and reversal."""
    steps = tuple(steps)
    n = len(steps)
    rev = tuple((v, b, a) for v, a, b in reversed(steps))
    return min(base[i:] + base[:i] for base in (steps, rev) for i in range(n))


def oracle_walks(graph):
    """Every edge-simple closed walk, by brute force over all pass matchings.

    A closed walk's passes extend to a perfect matching of the half-edges at
    every vertex, and conversely every such matching decomposes the edges
    into closed walks, so the union over all matchings is exactly the set of
    edge-simple closed walks.  Returns canonical step tuples.
    """
    partner = {}
    for a, b in graph.edges:
        partner[a] = b
        partner[b] = a
    vertex_of = {h: v for v, o in graph.vertices.items() for h in o.sequence}
    per_vertex = [list(all_matchings(graph.vertices[v].sequence)) for v in sorted(graph.vertices)]
    walks = set()
    for combo in itertools.product(*per_vertex):
        m = {}
        for pairs in combo:
            for a, b in pairs:
                m[a] = b
                m[b] = a
        left = set(m)
        while left:
            h0 = min(left)
            orbit = []
            h = h0
            while True:
                orbit.append(h)
                left.discard(h)
                left.discard(m[h])
                h = partner[m[h]]
                if h == h0:
                    break
            walks.add(canonical_steps((vertex_of[x], x, m[x]) for x in orbit))
    return walks


# ---------------------------------------------------------------------------
# triangle-case fixtures
#
# Each case is a single 6-valent vertex with three loops, expanded with
# variant 1, plus a transition system on the expansion that realizes a given
# class at each corner.  The expected values were worked out by hand:
# "lifted" is the pairing of original half-edges after tracing through the
# triangle, and "counts" is (walks, pairwise crossings, self crossings) on
# the expansion followed by the same three numbers after lifting.

CASE_TABLE = {
    1: {
        "classes": ("open", "open", "open"),
        "loops": [("2", "3"), ("4", "5"), ("6", "1")],
        "lifted": {("2", "3"), ("4", "5"), ("1", "6")},
        "counts": (3, 0, 0, 3, 0, 0),
    },
    2: {
        "classes": ("closed", "closed", "closed"),
        "loops": [("1", "2"), ("3", "4"), ("5", "6")],
        "lifted": {("1", "2"), ("3", "4"), ("5", "6")},
        "counts": (4, 0, 0, 3, 0, 0),
    },
    3: {
        "classes": ("crossing", "crossing", "crossing"),
        "loops": [("1", "4"), ("2", "5"), ("3", "6")],
        "lifted": {("1", "4"), ("2", "5"), ("3", "6")},
        "counts": (3, 3, 0, 3, 3, 0),
    },
    4: {
        "classes": ("open", "open", "closed"),
        "loops": [("2", "3"), ("1", "4"), ("5", "6")],
        "lifted": {("2", "3"), ("1", "4"), ("5", "6")},
        "counts": (3, 0, 0, 3, 0, 0),
    },
    5: {
        "classes": ("crossing", "open", "open"),
        "loops": [("1", "3"), ("2", "6"), ("4", "5")],
        "lifted": {("1", "3"), ("2", "6"), ("4", "5")},
        "counts": (3, 1, 0, 3, 1, 0),
    },
    6: {
        "classes": ("open", "closed", "closed"),
        "loops": [("1", "2"), ("3", "4"), ("5", "6")],
        "lifted": {("1", "2"), ("3", "4"), ("5", "6")},
        "counts": (3, 0, 0, 3, 0, 0),
    },
    7: {
        "classes": ("crossing", "closed", "closed"),
        "loops": [("1", "2"), ("3", "4"), ("5", "6")],
        "lifted": {("1", "2"), ("3", "4"), ("5", "6")},
        "counts": (3, 0, 1, 3, 0, 0),
    },
    8: {
        "classes": ("crossing", "crossing", "open"),
        "loops": [("1", "4"), ("2", "6"), ("3", "5")],
        "lifted": {("1", "4"), ("2", "6"), ("3", "5")},
        "counts": (3, 2, 0, 3, 2, 0),
    },
    9: {
        "classes": ("crossing", "crossing", "closed"),
        "loops": [("1", "4"), ("2", "3"), ("5", "6")],
        "lifted": {("1", "4"), ("2", "3"), ("5", "6")},
        "counts": (3, 2, 0, 3, 0, 0),
    },
    10: {
        "classes": ("crossing", "open", "closed"),
        "loops": [("1", "3"), ("2", "4"), ("5", "6")],
        "lifted": {("1", "3"), ("2", "4"), ("5", "6")},
        "counts": (3, 1, 0, 3, 1, 0),
    },
}


def corner_pairs(tri, i, cls):
    """Matching pairs at corner i realizing the given class."""
    p = tri.prev_halves[i]
    n = tri.next_halves[i]
    xa, xb = tri.groups[i]
    if cls == "closed":
        return [(p, n), (xa, xb)]
    if cls == "crossing":
        return [(p, xb), (xa, n)]
    if cls == "open":
        return [(p, xa), (xb, n)]
    raise ValueError(cls)


def case_fixture(case):
    """(g, g_prime, emap, system_prime) realizing one triangle case."""
    row = CASE_TABLE[case]
    g = bouquet6(row["loops"])
    g_prime, emap = expand(g, 1)
    tri = emap.triangles[0]
    matchings = {
        tri.corners[i]: corner_pairs(tri, i, row["classes"][i]) for i in range(3)
    }
    return g, g_prime, emap, TransitionSystem(matchings)
