"""Graphviz DOT export.

Half-edge structure is preserved in the output: every vertex node lists its
cyclic order in its label and every edge carries the two half-edge names as
tail and head labels, so the drawing can be read back against the graph
file.  Output is deterministic.
"""

from __future__ import annotations

from .core import StarGraph

__all__ = ["to_dot"]


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def to_dot(graph: StarGraph, name: str = "star") -> str:
    lines = [f'graph "{_esc(name)}" {{']
    lines.append("  node [shape=circle];")
    for v in sorted(graph.vertices):
        order = " ".join(graph.vertices[v].sequence)
        label = _esc(v) + (f"\\n({_esc(order)})" if order else "")
        lines.append(f'  "{_esc(v)}" [label="{label}"];')
    for a, b in graph.edges:
        va = _esc(graph.vertex_of(a))
        vb = _esc(graph.vertex_of(b))
        lines.append(
            f'  "{va}" -- "{vb}" [taillabel="{_esc(a)}", headlabel="{_esc(b)}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
