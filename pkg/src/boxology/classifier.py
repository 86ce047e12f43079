"""Classifying whole designs and relating them to the Kautz categories.

A design is ML when it is exactly one data-learning part feeding one
statistical-inference part, KR when it is exactly one symbolic-inference
part, HYBRID for any other full cover, and UNCLASSIFIED when processes
stay uncovered or there are none at all.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .catalog import Catalog
from .graph import PatternGraph
from .matcher import Decomposition, decompose, find_matches


class SystemClass(str, Enum):
    ML = "ML"
    KR = "KR"
    HYBRID = "HYBRID"
    UNCLASSIFIED = "UNCLASSIFIED"

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.value


@dataclass(frozen=True)
class Classification:
    system_class: SystemClass
    decomposition: Decomposition


def classify_system(g: PatternGraph, catalog: Catalog) -> Classification:
    """Classify a well-formed design via its elementary decomposition."""
    dec = decompose(g, catalog)
    if not g.process_nodes() or dec.uncovered:
        cls = SystemClass.UNCLASSIFIED
    else:
        counts = Counter(dec.part_names())
        if counts == {"1a": 1, "2a": 1}:
            cls = SystemClass.ML
        elif counts == {"2b": 1}:
            cls = SystemClass.KR
        else:
            cls = SystemClass.HYBRID
    return Classification(cls, dec)


# Which compositional patterns witness which Kautz category.  Category 6
# (fully integrated systems) has no witnessing pattern and is never
# reported.
KAUTZ_TABLE: dict[str, frozenset[int]] = {
    "3b": frozenset({1, 4}),
    "11": frozenset({2}),
    "6a": frozenset({3}),
    "6b": frozenset({3}),
    "8": frozenset({4}),
    "10": frozenset({4}),
    "7": frozenset({5}),
}


@dataclass(frozen=True)
class KautzReport:
    types: frozenset[int]
    evidence: dict[int, tuple[str, ...]]


def kautz_types(g: PatternGraph, catalog: Catalog) -> KautzReport:
    """Kautz categories suggested by compositional patterns found in ``g``."""
    evidence: dict[int, list[str]] = {}
    for name, categories in KAUTZ_TABLE.items():
        if name not in catalog:
            continue
        if find_matches(catalog[name], g):
            for category in categories:
                evidence.setdefault(category, []).append(name)
    return KautzReport(
        frozenset(evidence),
        {k: tuple(sorted(v)) for k, v in sorted(evidence.items())},
    )
