"""Building larger patterns from smaller ones.

Composition takes the disjoint union of two graphs and fuses the glued
node pairs; a fused node keeps the left id and takes the meet of the two
types, so gluing a generic model onto a semantic model yields the
semantic one, and gluing incomparable types is refused.  Abstraction
lifts chosen node types to strict ancestors, specialisation lowers them
to strict descendants; with inverse replacement maps they undo each
other.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .graph import (
    CheckDiagnostic,
    Edge,
    Node,
    PatternGraph,
    TypingRuleTable,
    check_well_formed,
    default_rules,
)
from .taxonomy import Taxonomy, TypePath, is_subtype, meet

GluePairs = Sequence[tuple[str, str]]


class ComposeError(ValueError):
    """Base class for composition and retyping failures."""


class IncompatibleGlueError(ComposeError):
    def __init__(self, left_id: str, right_id: str, left_type: TypePath, right_type: TypePath) -> None:
        super().__init__(
            f"cannot glue {left_id!r} ({left_type}) to {right_id!r} "
            f"({right_type}): the types do not meet"
        )
        self.left_id = left_id
        self.right_id = right_id


class ResultIllTypedError(ComposeError):
    def __init__(self, diagnostics: list[CheckDiagnostic]) -> None:
        summary = "; ".join(d.message for d in diagnostics)
        super().__init__(f"result is not well-formed: {summary}")
        self.diagnostics = diagnostics


class NotAnAncestorError(ComposeError):
    pass


class NotADescendantError(ComposeError):
    pass


def _fresh_id(base: str, taken: set[str]) -> str:
    new = base
    while new in taken:
        new = new + "_r"
    return new


def compose(
    left: PatternGraph,
    right: PatternGraph,
    glue: GluePairs,
    name: str,
    rules: TypingRuleTable | None = None,
    taxonomy: Taxonomy | None = None,
) -> PatternGraph:
    """Glue ``right`` onto ``left`` and re-check the result.

    Glue pairs must name distinct left ids and distinct right ids.  The
    fused node keeps the left id and label; a right label that would be
    lost is preserved in the result's meta.  Unglued right ids that clash
    with left ids are renamed with an ``_r`` suffix.
    """
    if rules is None:
        rules = default_rules()
    left_glued = [l for l, _ in glue]
    right_glued = [r for _, r in glue]
    if len(set(left_glued)) != len(left_glued):
        raise ComposeError("glue lists a left node twice")
    if len(set(right_glued)) != len(right_glued):
        raise ComposeError("glue lists a right node twice")
    for l, r in glue:
        if not left.has_node(l):
            raise ComposeError(f"glue references unknown left node {l!r}")
        if not right.has_node(r):
            raise ComposeError(f"glue references unknown right node {r!r}")

    fused_types: dict[str, TypePath] = {}
    meta = dict(left.meta)
    for key, value in right.meta.items():
        meta.setdefault(key, value)
    rename: dict[str, str] = {}
    for l, r in glue:
        ln, rn = left.node(l), right.node(r)
        fused = meet(ln.type, rn.type)
        if fused is None:
            raise IncompatibleGlueError(l, r, ln.type, rn.type)
        fused_types[l] = fused
        rename[r] = l
        if rn.label is not None and ln.label is not None and rn.label != ln.label:
            meta.setdefault(f"label:{l}", rn.label)

    taken = {n.id for n in left.nodes}
    for rn in right.nodes:
        if rn.id in rename:
            continue
        fresh = _fresh_id(rn.id, taken)
        rename[rn.id] = fresh
        taken.add(fresh)

    partner = dict(glue)
    nodes: list[Node] = []
    for ln in left.nodes:
        if ln.id in fused_types:
            rn = right.node(partner[ln.id])
            label = ln.label if ln.label is not None else rn.label
            nodes.append(Node(ln.id, fused_types[ln.id], label))
        else:
            nodes.append(ln)
    for rn in right.nodes:
        if rn.id in right_glued:
            continue
        nodes.append(Node(rename[rn.id], rn.type, rn.label))

    edge_set = {(e.src, e.dst) for e in left.edges}
    edges = [Edge(e.src, e.dst) for e in left.edges]
    for e in right.edges:
        src, dst = rename[e.src], rename[e.dst]
        if (src, dst) in edge_set:
            continue
        edge_set.add((src, dst))
        edges.append(Edge(src, dst))

    result = PatternGraph(name, tuple(nodes), tuple(edges), meta)
    diagnostics = [
        d
        for d in check_well_formed(result, rules, taxonomy)
        if d.severity == "error"
    ]
    if diagnostics:
        raise ResultIllTypedError(diagnostics)
    return result


def _retype(
    g: PatternGraph,
    replacements: Mapping[str, TypePath],
    rules: TypingRuleTable | None,
    taxonomy: Taxonomy | None,
) -> PatternGraph:
    nodes = tuple(
        Node(n.id, replacements.get(n.id, n.type), n.label) for n in g.nodes
    )
    result = PatternGraph(g.name, nodes, g.edges, dict(g.meta))
    diagnostics = [
        d
        for d in check_well_formed(result, rules or default_rules(), taxonomy)
        if d.severity == "error"
    ]
    if diagnostics:
        raise ResultIllTypedError(diagnostics)
    return result


def abstract_types(
    g: PatternGraph,
    replacements: Mapping[str, TypePath],
    rules: TypingRuleTable | None = None,
    taxonomy: Taxonomy | None = None,
) -> PatternGraph:
    """Lift the named nodes to strict supertypes of their current types."""
    for node_id, new_type in replacements.items():
        if not g.has_node(node_id):
            raise ComposeError(f"unknown node {node_id!r}")
        current = g.node(node_id).type
        if new_type == current or not is_subtype(current, new_type):
            raise NotAnAncestorError(
                f"{node_id}: {new_type} is not a strict ancestor of {current}"
            )
    return _retype(g, replacements, rules, taxonomy)


def specialize_types(
    g: PatternGraph,
    replacements: Mapping[str, TypePath],
    rules: TypingRuleTable | None = None,
    taxonomy: Taxonomy | None = None,
) -> PatternGraph:
    """Lower the named nodes to strict subtypes of their current types."""
    for node_id, new_type in replacements.items():
        if not g.has_node(node_id):
            raise ComposeError(f"unknown node {node_id!r}")
        current = g.node(node_id).type
        if new_type == current or not is_subtype(new_type, current):
            raise NotADescendantError(
                f"{node_id}: {new_type} is not a strict descendant of {current}"
            )
    return _retype(g, replacements, rules, taxonomy)
