"""Independent oracle for subgraph matching.

Enumerates every injective mapping from pattern nodes to target nodes with
itertools.permutations and filters by the two membership conditions (node
type compatibility, edge preservation).  No candidate pruning, no search
order tricks: slow and obviously correct, for cross-checking the real
matcher on small graphs.
"""

from __future__ import annotations

from itertools import permutations

from boxology.graph import PatternGraph
from boxology.matcher import Match
from boxology.taxonomy import is_subtype


def brute_force_matches(
    pattern: PatternGraph, target: PatternGraph, *, exact_types: bool = False
) -> list[Match]:
    pattern_nodes = sorted(pattern.nodes, key=lambda n: n.id)
    target_ids = sorted(n.id for n in target.nodes)
    if not pattern_nodes:
        return [Match(pattern.name, ())]
    if len(pattern_nodes) > len(target_ids):
        return []
    target_edges = {(e.src, e.dst) for e in target.edges}
    found: list[Match] = []
    for image in permutations(target_ids, len(pattern_nodes)):
        assignment = {
            p.id: t_id for p, t_id in zip(pattern_nodes, image)
        }
        ok = True
        for p, t_id in zip(pattern_nodes, image):
            t = target.node(t_id)
            if exact_types:
                if t.type != p.type:
                    ok = False
                    break
            elif not is_subtype(t.type, p.type):
                ok = False
                break
        if not ok:
            continue
        for e in pattern.edges:
            if (assignment[e.src], assignment[e.dst]) not in target_edges:
                ok = False
                break
        if not ok:
            continue
        found.append(
            Match(pattern.name, tuple(sorted(assignment.items())))
        )
    found.sort(key=lambda m: m.targets())
    return found
