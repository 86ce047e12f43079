"""Deterministic DOT output for design graphs.

Instances render as boxes, models as hexagons, processes as ellipses and
actors as triangles.  Nodes are emitted sorted by id and edges sorted by
(from, to), with no layout coordinates, so the same graph always yields
byte-identical output.  Structural validity is enough; an ill-typed graph
still renders, which is handy when debugging one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import PatternGraph

SHAPES = {
    "instance": "box",
    "model": "hexagon",
    "process": "ellipse",
    "actor": "triangle",
}

_PLAIN_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class RenderOptions:
    format: str = "dot"
    rankdir: str = "LR"
    show_meta: bool = False

    def __post_init__(self) -> None:
        if self.format != "dot":
            raise ValueError(f"unsupported format {self.format!r}")
        if self.rankdir not in ("LR", "TB"):
            raise ValueError(f"rankdir must be LR or TB, not {self.rankdir!r}")


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _ident(node_id: str) -> str:
    # The DSL allows hyphens in ids but DOT does not, so those get quoted.
    if _PLAIN_ID.match(node_id):
        return node_id
    return _quote(node_id)


def to_dot(g: PatternGraph, options: RenderOptions | None = None) -> str:
    if options is None:
        options = RenderOptions()
    lines = [f"digraph {_quote(g.name)} {{"]
    lines.append(f"  rankdir={options.rankdir};")
    if options.show_meta:
        for key in sorted(g.meta):
            lines.append(f"  // {key} = {g.meta[key]}")
    for node in sorted(g.nodes, key=lambda n: n.id):
        shape = SHAPES.get(node.kind, "plaintext")
        label = _quote(f"{node.id} : {node.type}")
        lines.append(f"  {_ident(node.id)} [shape={shape}, label={label}];")
    for edge in sorted(g.edges, key=lambda e: (e.src, e.dst)):
        lines.append(f"  {_ident(edge.src)} -> {_ident(edge.dst)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
