"""Seeded generator of small well-formed graphs.

Builds graphs gadget by gadget: each gadget is one process wired with the
inputs and outputs its rule demands, drawing on already-present boxes with
some probability so that gadgets overlap.  A gadget that runs out of node
budget is rolled back whole, so construction always satisfies the rules;
a sanity assert keeps the generator honest.
"""

from __future__ import annotations

import random

from boxology.graph import Edge, Node, PatternGraph, check_well_formed, has_errors
from boxology.taxonomy import TypePath

_INSTANCE_TYPES = [
    ("instance",),
    ("instance", "data"),
    ("instance", "data", "text"),
    ("instance", "data", "tensor"),
    ("instance", "data", "number"),
    ("instance", "sym"),
    ("instance", "sym", "label"),
    ("instance", "sym", "relation"),
]

_MODEL_TYPES = [
    ("model",),
    ("model", "stat"),
    ("model", "stat", "NN"),
    ("model", "sem"),
    ("model", "sem", "ontology"),
    ("model", "sem", "KG"),
]

_ACTOR_TYPES = [("actor",), ("actor", "human"), ("actor", "agent")]

_PROCESS_TYPES = [
    ("process", "generate", "train"),
    ("process", "generate", "engineer"),
    ("process", "transform"),
    ("process", "infer", "deduce"),
    ("process", "infer", "deduce", "classify"),
    ("process", "infer", "induce"),
]


class _Builder:
    def __init__(self, rng: random.Random, max_nodes: int) -> None:
        self.rng = rng
        self.max_nodes = max_nodes
        self.nodes: list[Node] = []
        self.edges: set[tuple[str, str]] = set()

    def checkpoint(self) -> tuple[int, set[tuple[str, str]]]:
        return len(self.nodes), set(self.edges)

    def rollback(self, mark: tuple[int, set[tuple[str, str]]]) -> None:
        del self.nodes[mark[0] :]
        self.edges = mark[1]

    def fresh(self, segments: tuple[str, ...]) -> str:
        node_id = f"n{len(self.nodes)}"
        self.nodes.append(Node(node_id, TypePath(segments)))
        return node_id

    def box(
        self,
        kind: str,
        choices: list[tuple[str, ...]],
        exclude: set[str] = frozenset(),
    ) -> str | None:
        """An existing or fresh box of the given kind; None when impossible."""
        pool = [
            n.id
            for n in self.nodes
            if n.type.root == kind and n.id not in exclude
        ]
        have_room = len(self.nodes) < self.max_nodes
        if pool and (not have_room or self.rng.random() < 0.5):
            return self.rng.choice(pool)
        if not have_room:
            return None
        return self.fresh(self.rng.choice(choices))

    def connect(self, src: str, dst: str) -> None:
        self.edges.add((src, dst))


def _gadget(b: _Builder) -> bool:
    """Add one rule-satisfying process with its ports; False if it won't fit."""
    mark = b.checkpoint()
    segments = b.rng.choice(_PROCESS_TYPES)
    role = segments[-1] if segments[-1] != "classify" else "deduce"
    sources: list[str | None]
    sinks: list[str | None]
    if role in ("train", "induce"):
        sources = [b.box("instance", _INSTANCE_TYPES)]
        sinks = [b.box("model", _MODEL_TYPES)]
    elif role == "engineer":
        sources = [b.box("actor", _ACTOR_TYPES)]
        sinks = [b.box("model", _MODEL_TYPES)]
    elif role == "transform":
        kind = b.rng.choice(["instance", "model"])
        choices = _INSTANCE_TYPES if kind == "instance" else _MODEL_TYPES
        src = b.box(kind, choices)
        sources = [src]
        sinks = [b.box(kind, choices, exclude={src} if src else frozenset())]
    else:  # deduce
        m = b.box("model", _MODEL_TYPES)
        inst = b.box("instance", _INSTANCE_TYPES)
        sources = [m, inst]
        sinks = [
            b.box(
                "instance",
                _INSTANCE_TYPES,
                exclude={inst} if inst else frozenset(),
            )
        ]
    if (
        any(s is None for s in sources)
        or any(s is None for s in sinks)
        or len(b.nodes) >= b.max_nodes
    ):
        b.rollback(mark)
        return False
    p = b.fresh(segments)
    for s in sources:
        assert s is not None
        b.connect(s, p)
    for s in sinks:
        assert s is not None
        b.connect(p, s)
    if role in ("train", "induce") and b.rng.random() < 0.3:
        extra = b.box("model", _MODEL_TYPES, exclude={s for s in sinks if s})
        if extra is not None:
            b.connect(extra, p)
    return True


def random_wellformed(
    rng: random.Random, *, max_nodes: int = 8, name: str = "random"
) -> PatternGraph:
    """A well-formed graph with 1-2 processes and at most max_nodes nodes."""
    while True:
        b = _Builder(rng, max_nodes)
        wanted = rng.randint(1, 2)
        built = 0
        for _ in range(6):
            if built == wanted:
                break
            if _gadget(b):
                built += 1
        if built == 0:
            continue
        touched = {v for e in b.edges for v in e}
        nodes = tuple(n for n in b.nodes if n.id in touched)
        g = PatternGraph(
            name, nodes, tuple(Edge(s, d) for s, d in sorted(b.edges)), {}
        )
        diagnostics = check_well_formed(g)
        assert not has_errors(diagnostics), (
            "generator bug: " + "; ".join(d.message for d in diagnostics)
        )
        return g
