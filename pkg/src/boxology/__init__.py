"""Toolkit for hybrid system design patterns.

Designs are small typed dataflow graphs written in a textual pattern
language.  The package parses them, checks their typing discipline,
matches a catalog of known patterns inside them, composes patterns into
larger ones, classifies whole systems, and renders everything to
Graphviz DOT.
"""

from .catalog import Catalog, CatalogError, builtin
from .classifier import (
    KAUTZ_TABLE,
    Classification,
    KautzReport,
    SystemClass,
    classify_system,
    kautz_types,
)
from .composer import (
    ComposeError,
    IncompatibleGlueError,
    NotAnAncestorError,
    NotADescendantError,
    ResultIllTypedError,
    abstract_types,
    compose,
    specialize_types,
)
from .dsl import (
    Diagnostic,
    ParseResult,
    SourceFile,
    parse,
    parse_text,
    print_file,
    print_graph,
)
from .graph import (
    CheckDiagnostic,
    Edge,
    GraphError,
    Node,
    PatternGraph,
    check_well_formed,
    default_rules,
    has_errors,
)
from .matcher import (
    Decomposition,
    Match,
    TooManyProcessesError,
    decompose,
    find_matches,
    isomorphic,
    verify_match,
)
from .renderer import RenderOptions, to_dot
from .taxonomy import (
    TaxonomyError,
    Taxonomy,
    TypePath,
    default_taxonomy,
    is_subtype,
    least_common_ancestor,
    load_extensions,
    meet,
    parse_type_path,
)

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "CatalogError",
    "builtin",
    "KAUTZ_TABLE",
    "Classification",
    "KautzReport",
    "SystemClass",
    "classify_system",
    "kautz_types",
    "ComposeError",
    "IncompatibleGlueError",
    "NotAnAncestorError",
    "NotADescendantError",
    "ResultIllTypedError",
    "abstract_types",
    "compose",
    "specialize_types",
    "Diagnostic",
    "ParseResult",
    "SourceFile",
    "parse",
    "parse_text",
    "print_file",
    "print_graph",
    "CheckDiagnostic",
    "Edge",
    "GraphError",
    "Node",
    "PatternGraph",
    "check_well_formed",
    "default_rules",
    "has_errors",
    "Decomposition",
    "Match",
    "TooManyProcessesError",
    "decompose",
    "find_matches",
    "isomorphic",
    "verify_match",
    "RenderOptions",
    "to_dot",
    "TaxonomyError",
    "Taxonomy",
    "TypePath",
    "default_taxonomy",
    "is_subtype",
    "least_common_ancestor",
    "load_extensions",
    "meet",
    "parse_type_path",
    "__version__",
]
