"""Design graphs and their well-formedness rules.

A pattern graph is a small directed graph whose nodes are typed by the
taxonomy.  Instances, models and actors are drawn as boxes; processes sit
between them, and every edge connects exactly one process to one box.  A
table of typing rules says, per process type, what a process may consume
and must produce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Mapping

from .taxonomy import Taxonomy, TypePath, is_subtype, TaxonomyError

Severity = Literal["error", "warning"]


class GraphError(ValueError):
    """A structural invariant was violated at construction time."""


@dataclass(frozen=True)
class Node:
    """A typed node; ``kind`` is the root segment of its type."""

    id: str
    type: TypePath
    label: str | None = None

    @property
    def kind(self) -> str:
        return self.type.root

    def is_process(self) -> bool:
        return self.type.is_process()


@dataclass(frozen=True)
class Edge:
    src: str
    dst: str


@dataclass(frozen=True)
class PatternGraph:
    """An immutable design graph.

    Construction enforces the hard structural invariants: node ids are
    unique, edges join existing nodes, there are no self-loops and no
    duplicate edges.  Typing discipline is the checker's business, so a
    graph object may well be ill-typed; cycles through distinct nodes are
    allowed.  Nodes and edges are stored in canonical sorted order, which
    makes equality structural.
    """

    name: str
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    meta: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ids = [n.id for n in self.nodes]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})[0]
            raise GraphError(f"duplicate node id {dup!r}")
        id_set = set(ids)
        seen: set[tuple[str, str]] = set()
        for e in self.edges:
            if e.src not in id_set or e.dst not in id_set:
                raise GraphError(f"edge {e.src}->{e.dst} references unknown node")
            if e.src == e.dst:
                raise GraphError(f"self-loop on {e.src!r}")
            if (e.src, e.dst) in seen:
                raise GraphError(f"duplicate edge {e.src}->{e.dst}")
            seen.add((e.src, e.dst))
        object.__setattr__(
            self, "nodes", tuple(sorted(self.nodes, key=lambda n: n.id))
        )
        object.__setattr__(
            self, "edges", tuple(sorted(self.edges, key=lambda e: (e.src, e.dst)))
        )
        object.__setattr__(self, "meta", dict(sorted(self.meta.items())))
        object.__setattr__(self, "_by_id", {n.id: n for n in self.nodes})

    def node(self, node_id: str) -> Node:
        return self._by_id[node_id]  # type: ignore[attr-defined]

    def has_node(self, node_id: str) -> bool:
        return node_id in self._by_id  # type: ignore[attr-defined]

    def inputs_of(self, node_id: str) -> list[Node]:
        """Nodes feeding ``node_id``, in edge order."""
        return [self.node(e.src) for e in self.edges if e.dst == node_id]

    def outputs_of(self, node_id: str) -> list[Node]:
        return [self.node(e.dst) for e in self.edges if e.src == node_id]

    def process_nodes(self) -> list[Node]:
        return [n for n in self.nodes if n.is_process()]

    def with_name(self, name: str) -> PatternGraph:
        return PatternGraph(name, self.nodes, self.edges, dict(self.meta))


# ---------------------------------------------------------------------------
# Typing rules


@dataclass(frozen=True)
class PortRule:
    """Bounds for neighbour boxes below ``allowed``; None max = unbounded."""

    allowed: TypePath
    min_count: int = 0
    max_count: int | None = None


@dataclass(frozen=True)
class ProcessRule:
    inputs: tuple[PortRule, ...]
    outputs: tuple[PortRule, ...]
    input_total: tuple[int, int | None] | None = None
    output_total: tuple[int, int | None] | None = None
    warn_on_equal_io: bool = False


class TypingRuleTable:
    """Rows keyed by process type path; lookup picks the most specific row
    whose key is a supertype of the queried process type."""

    def __init__(self, rows: Mapping[TypePath, ProcessRule]) -> None:
        for key in rows:
            if not key.is_process():
                raise GraphError(f"rule key {key} is not a process type")
        self._rows = dict(rows)

    def lookup(self, process_type: TypePath) -> tuple[TypePath, ProcessRule] | None:
        best: tuple[TypePath, ProcessRule] | None = None
        for key, rule in self._rows.items():
            if is_subtype(process_type, key):
                if best is None or len(key.segments) > len(best[0].segments):
                    best = (key, rule)
        return best

    def rows(self) -> dict[TypePath, ProcessRule]:
        return dict(self._rows)


def _p(*segments: str) -> TypePath:
    return TypePath(segments)


_INSTANCE = _p("instance")
_MODEL = _p("model")
_ACTOR = _p("actor")

_default_rules: TypingRuleTable | None = None


def default_rules() -> TypingRuleTable:
    """The shipped rule table.

    train      >=1 instance in, extra model inputs allowed; exactly 1 model out
    engineer   >=1 actor in; exactly 1 model out
    transform  exactly one instance-or-model in and out; equal types warn
    deduce     >=1 model and >=1 instance in; >=1 instance out
    induce     >=1 instance in, optional models; exactly 1 model out
    """
    global _default_rules
    if _default_rules is not None:
        return _default_rules
    one = (1, 1)
    _default_rules = TypingRuleTable(
        {
            _p("process", "generate", "train"): ProcessRule(
                inputs=(PortRule(_INSTANCE, 1), PortRule(_MODEL)),
                outputs=(PortRule(_MODEL, 1, 1),),
            ),
            _p("process", "generate", "engineer"): ProcessRule(
                inputs=(PortRule(_ACTOR, 1),),
                outputs=(PortRule(_MODEL, 1, 1),),
            ),
            _p("process", "transform"): ProcessRule(
                inputs=(PortRule(_INSTANCE), PortRule(_MODEL)),
                outputs=(PortRule(_INSTANCE), PortRule(_MODEL)),
                input_total=one,
                output_total=one,
                warn_on_equal_io=True,
            ),
            _p("process", "infer", "deduce"): ProcessRule(
                inputs=(PortRule(_MODEL, 1), PortRule(_INSTANCE, 1)),
                outputs=(PortRule(_INSTANCE, 1),),
            ),
            _p("process", "infer", "induce"): ProcessRule(
                inputs=(PortRule(_INSTANCE, 1), PortRule(_MODEL)),
                outputs=(PortRule(_MODEL, 1, 1),),
            ),
        }
    )
    return _default_rules


# ---------------------------------------------------------------------------
# Well-formedness checking


@dataclass(frozen=True)
class CheckDiagnostic:
    """A finding about a graph, tied to a node or an edge."""

    severity: Severity
    code: str
    message: str
    node: str | None = None
    edge: tuple[str, str] | None = None


def _count_bounds_ok(count: int, lo: int, hi: int | None) -> bool:
    return count >= lo and (hi is None or count <= hi)


def _check_ports(
    g: PatternGraph,
    proc: Node,
    boxes: list[Node],
    rules: tuple[PortRule, ...],
    total: tuple[int, int | None] | None,
    direction: str,
    out: list[CheckDiagnostic],
) -> None:
    for box in boxes:
        if not any(is_subtype(box.type, r.allowed) for r in rules):
            out.append(
                CheckDiagnostic(
                    "error",
                    f"{direction}-kind",
                    f"{proc.id}: {direction} {box.id!r} of type {box.type} "
                    f"is not allowed for {proc.type}",
                    node=proc.id,
                )
            )
    for rule in rules:
        count = sum(1 for box in boxes if is_subtype(box.type, rule.allowed))
        if not _count_bounds_ok(count, rule.min_count, rule.max_count):
            want = f">={rule.min_count}"
            if rule.max_count is not None:
                want = (
                    f"exactly {rule.min_count}"
                    if rule.min_count == rule.max_count
                    else f"{rule.min_count}..{rule.max_count}"
                )
            out.append(
                CheckDiagnostic(
                    "error",
                    f"{direction}-count",
                    f"{proc.id}: {proc.type} requires {want} "
                    f"{rule.allowed} {direction}(s), found {count}",
                    node=proc.id,
                )
            )
    if total is not None and not _count_bounds_ok(len(boxes), *total):
        lo, hi = total
        want = f"exactly {lo}" if lo == hi else f"{lo}..{'*' if hi is None else hi}"
        out.append(
            CheckDiagnostic(
                "error",
                f"{direction}-total",
                f"{proc.id}: {proc.type} takes {want} {direction}(s), "
                f"found {len(boxes)}",
                node=proc.id,
            )
        )


def check_well_formed(
    g: PatternGraph,
    rules: TypingRuleTable | None = None,
    taxonomy: Taxonomy | None = None,
) -> list[CheckDiagnostic]:
    """All typing findings for a graph, deterministically ordered.

    Never raises: the result is empty iff the graph is well-formed.  When a
    taxonomy is given, node types are also validated against it.  Ordering
    is node findings by node id, then edge findings by (src, dst).
    """
    if rules is None:
        rules = default_rules()
    node_diags: list[CheckDiagnostic] = []
    edge_diags: list[CheckDiagnostic] = []

    for node in g.nodes:
        if taxonomy is not None:
            try:
                taxonomy.resolve(node.type.segments)
            except TaxonomyError as exc:
                node_diags.append(
                    CheckDiagnostic(
                        "error",
                        "unknown-type",
                        f"{node.id}: {exc}",
                        node=node.id,
                    )
                )
                continue
        if node.is_process():
            found = rules.lookup(node.type)
            if found is None:
                node_diags.append(
                    CheckDiagnostic(
                        "warning",
                        "no-rule",
                        f"{node.id}: no typing rule covers {node.type}",
                        node=node.id,
                    )
                )
                continue
            _, rule = found
            ins = [b for b in g.inputs_of(node.id) if not b.is_process()]
            outs = [b for b in g.outputs_of(node.id) if not b.is_process()]
            _check_ports(g, node, ins, rule.inputs, rule.input_total, "input", node_diags)
            _check_ports(g, node, outs, rule.outputs, rule.output_total, "output", node_diags)
            if (
                rule.warn_on_equal_io
                and len(ins) == 1
                and len(outs) == 1
                and ins[0].type == outs[0].type
            ):
                node_diags.append(
                    CheckDiagnostic(
                        "warning",
                        "same-io-type",
                        f"{node.id}: input and output share the type "
                        f"{ins[0].type}",
                        node=node.id,
                    )
                )
        else:
            degree = len(g.inputs_of(node.id)) + len(g.outputs_of(node.id))
            if degree == 0:
                # Actors are routinely drawn detached, so that is only worth
                # a warning; a detached instance or model box is dead weight.
                severity: Severity = (
                    "warning" if node.kind == "actor" else "error"
                )
                node_diags.append(
                    CheckDiagnostic(
                        severity,
                        "orphan-box",
                        f"{node.id}: {node.kind} box touches no process",
                        node=node.id,
                    )
                )

    for edge in g.edges:
        ends = sum(
            1 for nid in (edge.src, edge.dst) if g.node(nid).is_process()
        )
        if ends == 0:
            edge_diags.append(
                CheckDiagnostic(
                    "error",
                    "box-box-edge",
                    f"edge {edge.src}->{edge.dst} joins two boxes",
                    edge=(edge.src, edge.dst),
                )
            )
        elif ends == 2:
            edge_diags.append(
                CheckDiagnostic(
                    "error",
                    "process-process-edge",
                    f"edge {edge.src}->{edge.dst} joins two processes",
                    edge=(edge.src, edge.dst),
                )
            )

    return node_diags + edge_diags


def has_errors(diagnostics: Iterable[CheckDiagnostic]) -> bool:
    return any(d.severity == "error" for d in diagnostics)
