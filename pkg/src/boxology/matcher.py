"""Occurrences of patterns inside larger designs.

A match embeds a pattern graph into a target graph: node mapping injective,
every pattern edge present between the mapped nodes, and each mapped node's
type at or below the pattern node's type.  Extra target edges are fine; the
image does not have to be an induced subgraph.

The search backtracks over pattern nodes, process nodes first since their
types prune hardest.  Results are deduplicated and sorted by the mapped
target ids (taken in pattern-node id order), so output order is stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import Catalog
from .graph import PatternGraph
from .taxonomy import is_subtype


class TooManyProcessesError(RuntimeError):
    """Decomposition refused; the graph exceeds the process budget."""


@dataclass(frozen=True)
class Match:
    """A pattern occurrence; ``mapping`` pairs are sorted by pattern id."""

    pattern: str
    mapping: tuple[tuple[str, str], ...]

    def as_dict(self) -> dict[str, str]:
        return dict(self.mapping)

    def targets(self) -> tuple[str, ...]:
        """Mapped target ids in pattern-node id order: the sort key."""
        return tuple(t for _, t in self.mapping)


def find_matches(
    pattern: PatternGraph,
    target: PatternGraph,
    *,
    exact_types: bool = False,
) -> list[Match]:
    """All matches of ``pattern`` in ``target``, in stable order.

    With ``exact_types`` the node types must be equal instead of merely
    compatible, which together with equal node and edge counts is how
    isomorphism gets decided.
    """

    def compatible(pattern_type, target_type) -> bool:
        if exact_types:
            return target_type == pattern_type
        return is_subtype(target_type, pattern_type)

    p_nodes = list(pattern.nodes)
    if not p_nodes:
        return [Match(pattern.name, ())]

    # In-/out-neighbour ids per node, both sides.
    p_out: dict[str, set[str]] = {n.id: set() for n in p_nodes}
    p_in: dict[str, set[str]] = {n.id: set() for n in p_nodes}
    for e in pattern.edges:
        p_out[e.src].add(e.dst)
        p_in[e.dst].add(e.src)
    t_out: dict[str, set[str]] = {n.id: set() for n in target.nodes}
    t_in: dict[str, set[str]] = {n.id: set() for n in target.nodes}
    for e in target.edges:
        t_out[e.src].add(e.dst)
        t_in[e.dst].add(e.src)

    # Order: processes first, then higher degree, then id for determinism.
    order = sorted(
        p_nodes,
        key=lambda n: (
            not n.is_process(),
            -(len(p_out[n.id]) + len(p_in[n.id])),
            n.id,
        ),
    )

    candidates: dict[str, list[str]] = {}
    for pn in order:
        good = [
            tn.id
            for tn in target.nodes
            if compatible(pn.type, tn.type)
            and len(t_out[tn.id]) >= len(p_out[pn.id])
            and len(t_in[tn.id]) >= len(p_in[pn.id])
        ]
        if not good:
            return []
        candidates[pn.id] = good

    found: set[tuple[tuple[str, str], ...]] = set()
    assignment: dict[str, str] = {}
    used: set[str] = set()

    def place(idx: int) -> None:
        if idx == len(order):
            found.add(
                tuple(sorted((p, t) for p, t in assignment.items()))
            )
            return
        pid = order[idx].id
        for tid in candidates[pid]:
            if tid in used:
                continue
            ok = True
            for succ in p_out[pid]:
                if succ in assignment and assignment[succ] not in t_out[tid]:
                    ok = False
                    break
            if ok:
                for pred in p_in[pid]:
                    if pred in assignment and assignment[pred] not in t_in[tid]:
                        ok = False
                        break
            if not ok:
                continue
            assignment[pid] = tid
            used.add(tid)
            place(idx + 1)
            del assignment[pid]
            used.discard(tid)

    place(0)
    matches = [Match(pattern.name, mapping) for mapping in found]
    matches.sort(key=Match.targets)
    return matches


def verify_match(
    match: Match, pattern: PatternGraph, target: PatternGraph
) -> bool:
    """Recheck a match from first principles: injective and total on the
    pattern, edge-preserving, subtype-compatible."""
    mapping = match.as_dict()
    if sorted(mapping) != sorted(n.id for n in pattern.nodes):
        return False
    if len(set(mapping.values())) != len(mapping):
        return False
    for pid, tid in mapping.items():
        if not target.has_node(tid):
            return False
        if not is_subtype(target.node(tid).type, pattern.node(pid).type):
            return False
    target_edges = {(e.src, e.dst) for e in target.edges}
    return all(
        (mapping[e.src], mapping[e.dst]) in target_edges for e in pattern.edges
    )


def isomorphic(a: PatternGraph, b: PatternGraph) -> bool:
    """Structural equality up to node renaming, with equal types."""
    if len(a.nodes) != len(b.nodes) or len(a.edges) != len(b.edges):
        return False
    return bool(find_matches(a, b, exact_types=True))


# ---------------------------------------------------------------------------
# Decomposition into elementary parts


@dataclass(frozen=True)
class Decomposition:
    """A best cover of the target's process nodes by elementary matches."""

    parts: tuple[Match, ...]
    uncovered: frozenset[str]

    def part_names(self) -> list[str]:
        return [m.pattern for m in self.parts]


def decompose(
    target: PatternGraph,
    catalog: Catalog,
    *,
    max_processes: int = 64,
) -> Decomposition:
    """Cover as many process nodes as possible with elementary patterns.

    Every elementary pattern contains exactly one process, so each part
    claims exactly one target process and parts never compete for
    coverage: a process is covered iff any elementary match lands on it.
    Boxes may be shared between parts.  Per process, ties are broken by
    catalog order 1a..2d, then by the mapped-id sort order.
    """
    processes = [n.id for n in target.process_nodes()]
    if len(processes) > max_processes:
        raise TooManyProcessesError(
            f"{len(processes)} process nodes exceed the limit of "
            f"{max_processes}"
        )

    Key = tuple[int, tuple[str, ...]]
    best: dict[str, tuple[Key, Match]] = {}
    for rank, elem in enumerate(catalog.elementary()):
        elem_processes = [n.id for n in elem.process_nodes()]
        if len(elem_processes) != 1:
            continue
        pid = elem_processes[0]
        for match in find_matches(elem, target):
            covered = match.as_dict()[pid]
            key: Key = (rank, match.targets())
            if covered not in best or key < best[covered][0]:
                best[covered] = (key, match)

    chosen = tuple(best[p][1] for p in sorted(best))
    # Each part owns one process; boxes may repeat, processes must not.
    claimed = [
        tid
        for m in chosen
        for tid in m.as_dict().values()
        if target.node(tid).is_process()
    ]
    assert len(claimed) == len(set(claimed))
    return Decomposition(
        chosen,
        frozenset(p for p in processes if p not in best),
    )
