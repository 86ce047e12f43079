"""The shipped pattern catalog and loading of user catalogs.

The builtin catalog is plain ``.box`` data bundled with the package: eight
elementary patterns (1a-1d, 2a-2d), each built around a single process,
and the compositional patterns assembled from them.  A copy is installed
as an ordinary file so users can start their own catalog from it.
"""

from __future__ import annotations

from importlib import resources

from .dsl import Diagnostic, ParseResult, SourceFile, parse
from .graph import (
    CheckDiagnostic,
    PatternGraph,
    TypingRuleTable,
    check_well_formed,
    default_rules,
)
from .taxonomy import Taxonomy, default_taxonomy

ELEMENTARY = ("1a", "1b", "1c", "1d", "2a", "2b", "2c", "2d")


class CatalogError(ValueError):
    """A catalog source failed parsing or checking; carries everything found."""

    def __init__(
        self,
        path: str,
        parse_diagnostics: tuple[Diagnostic, ...] = (),
        check_diagnostics: tuple[tuple[str, CheckDiagnostic], ...] = (),
    ) -> None:
        lines = [d.render(path) for d in parse_diagnostics]
        lines += [
            f"{path}: pattern {name!r}: {d.severity}[{d.code}]: {d.message}"
            for name, d in check_diagnostics
        ]
        super().__init__(
            "invalid catalog:\n" + "\n".join(lines) if lines else "invalid catalog"
        )
        self.path = path
        self.parse_diagnostics = parse_diagnostics
        self.check_diagnostics = check_diagnostics


class Catalog:
    """Named patterns in presentation order."""

    def __init__(self, entries: dict[str, PatternGraph]) -> None:
        self.entries = dict(entries)

    def names(self) -> list[str]:
        return list(self.entries)

    def __getitem__(self, name: str) -> PatternGraph:
        return self.entries[name]

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def elementary(self) -> list[PatternGraph]:
        """The single-process building blocks, in catalog order."""
        return [self.entries[n] for n in ELEMENTARY if n in self.entries]


def load(
    src: SourceFile,
    taxonomy: Taxonomy | None = None,
    rules: TypingRuleTable | None = None,
) -> Catalog:
    """Parse and check a catalog file; reject it whole on any error."""
    if taxonomy is None:
        taxonomy = default_taxonomy()
    if rules is None:
        rules = default_rules()
    result: ParseResult = parse(src, taxonomy)
    parse_errors = tuple(
        d for d in result.diagnostics if d.severity == "error"
    )
    check_errors: list[tuple[str, CheckDiagnostic]] = []
    for g in result.graphs:
        for d in check_well_formed(g, rules, taxonomy):
            if d.severity == "error":
                check_errors.append((g.name, d))
    if parse_errors or check_errors:
        raise CatalogError(src.path, parse_errors, tuple(check_errors))
    return Catalog({g.name: g for g in result.graphs})


def load_path(
    path: str,
    taxonomy: Taxonomy | None = None,
    rules: TypingRuleTable | None = None,
) -> Catalog:
    return load(SourceFile.from_path(path), taxonomy, rules)


def builtin_text() -> str:
    """The raw ``.box`` source of the shipped catalog."""
    return (
        resources.files("boxology").joinpath("data/builtin.box").read_text("utf-8")
    )


_builtin: Catalog | None = None


def builtin() -> Catalog:
    """The shipped catalog, parsed and checked once."""
    global _builtin
    if _builtin is None:
        _builtin = load(SourceFile("<builtin catalog>", builtin_text()))
    return _builtin
