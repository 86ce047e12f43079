"""Type paths and the four-rooted type taxonomy.

Every node in a design graph carries a type path such as ``model:stat:NN``.
The first segment names one of the four kinds (instance, model, process,
actor); the remaining segments walk down a strict tree.  Subtyping is path
prefixing: ``a`` is a subtype of ``b`` iff ``b``'s segments are a prefix of
``a``'s.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

KINDS = ("instance", "model", "process", "actor")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*\Z")


class TaxonomyError(ValueError):
    """Base class for type-path and taxonomy failures."""


class MalformedPathError(TaxonomyError):
    """The text is not a colon-joined sequence of identifiers."""


class UnknownRootError(TaxonomyError):
    """The first segment is not one of the four kinds."""


class UnknownSegmentError(TaxonomyError):
    """A later segment does not exist under its parent.

    ``position`` is the 1-based index of the offending segment.
    """

    def __init__(self, message: str, position: int) -> None:
        super().__init__(message)
        self.position = position


class NoCommonAncestorError(TaxonomyError):
    """The two paths live under different roots."""


class ExtensionFileError(TaxonomyError):
    """An extension file line could not be applied.

    ``line`` is the 1-based line number of the failure.
    """

    def __init__(self, message: str, line: int) -> None:
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class TypePath:
    """An ordered, non-empty sequence of identifier segments."""

    segments: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise MalformedPathError("type path needs at least one segment")
        for seg in self.segments:
            if not _IDENT.match(seg):
                raise MalformedPathError(f"bad segment {seg!r}")

    def __str__(self) -> str:
        return ":".join(self.segments)

    @property
    def root(self) -> str:
        return self.segments[0]

    @property
    def parent(self) -> TypePath | None:
        if len(self.segments) == 1:
            return None
        return TypePath(self.segments[:-1])

    def is_process(self) -> bool:
        return self.root == "process"


def is_subtype(a: TypePath, b: TypePath) -> bool:
    """True iff ``a`` lies at or below ``b`` in the tree."""
    return a.segments[: len(b.segments)] == b.segments


def least_common_ancestor(a: TypePath, b: TypePath) -> TypePath:
    """Longest shared prefix; raises NoCommonAncestorError across roots."""
    if a.root != b.root:
        raise NoCommonAncestorError(f"{a} and {b} have different roots")
    common = 0
    for x, y in zip(a.segments, b.segments):
        if x != y:
            break
        common += 1
    return TypePath(a.segments[:common])


def meet(a: TypePath, b: TypePath) -> TypePath | None:
    """The more specific of two comparable paths, else None.

    None is an ordinary result, not an error: it simply means neither path
    refines the other.
    """
    if is_subtype(a, b):
        return a
    if is_subtype(b, a):
        return b
    return None


# ---------------------------------------------------------------------------
# The taxonomy tree


class Taxonomy:
    """An immutable tree of known type paths.

    The default tree ships the four kinds with their standard refinements;
    extensions may only add leaves, never remove or rename existing nodes.
    """

    def __init__(self, paths: Iterable[TypePath]) -> None:
        known: set[tuple[str, ...]] = set()
        for path in sorted(paths, key=lambda p: len(p.segments)):
            if path.root not in KINDS:
                raise UnknownRootError(f"unknown kind {path.root!r}")
            for i in range(1, len(path.segments)):
                if path.segments[:i] not in known:
                    raise UnknownSegmentError(
                        f"{path}: missing ancestor "
                        f"{':'.join(path.segments[:i])!r}",
                        i,
                    )
            known.add(path.segments)
        self._known = frozenset(known)

    def __contains__(self, path: TypePath) -> bool:
        return path.segments in self._known

    def paths(self) -> list[TypePath]:
        """All known paths, sorted by their textual form."""
        return sorted(
            (TypePath(segs) for segs in self._known), key=str
        )

    def resolve(self, segments: tuple[str, ...]) -> TypePath:
        """Validate raw segments against the tree and build a TypePath."""
        if not segments or any(not s for s in segments):
            raise MalformedPathError("empty segment in type path")
        for seg in segments:
            if not _IDENT.match(seg):
                raise MalformedPathError(f"bad segment {seg!r}")
        if segments[0] not in KINDS:
            raise UnknownRootError(f"unknown kind {segments[0]!r}")
        for i in range(2, len(segments) + 1):
            if segments[:i] not in self._known:
                raise UnknownSegmentError(
                    f"unknown segment {segments[i - 1]!r} at position {i} "
                    f"in {':'.join(segments)!r}",
                    i,
                )
        return TypePath(segments)

    def extended(self, leaves: Iterable[TypePath]) -> Taxonomy:
        """A new taxonomy with extra leaf paths added."""
        extra = list(leaves)
        for leaf in extra:
            if leaf.root not in KINDS:
                raise UnknownRootError(f"unknown kind {leaf.root!r}")
            parent = leaf.segments[:-1]
            if parent and parent not in self._known:
                raise UnknownSegmentError(
                    f"{leaf}: parent {':'.join(parent)!r} does not exist",
                    len(parent),
                )
        tax = Taxonomy.__new__(Taxonomy)
        tax._known = self._known | {leaf.segments for leaf in extra}
        return tax


def parse_type_path(text: str, taxonomy: Taxonomy) -> TypePath:
    """Parse ``"model:stat"``-style text into a validated TypePath."""
    if not text or text.startswith(":") or text.endswith(":") or "::" in text:
        raise MalformedPathError(f"malformed type path {text!r}")
    return taxonomy.resolve(tuple(text.split(":")))


_DEFAULT_TREE = """
instance
instance:data
instance:data:number
instance:data:text
instance:data:tensor
instance:data:stream
instance:sym
instance:sym:label
instance:sym:relation
instance:sym:trace
model
model:stat
model:stat:NN
model:stat:bayesian
model:stat:markov
model:sem
model:sem:taxonomy
model:sem:ontology
model:sem:KG
model:sem:rulebase
model:sem:diffeq
process
process:generate
process:generate:train
process:generate:engineer
process:transform
process:infer
process:infer:induce
process:infer:deduce
process:infer:deduce:classify
process:infer:deduce:predict
actor
actor:human
actor:agent
actor:robot
"""

_default: Taxonomy | None = None


def default_taxonomy() -> Taxonomy:
    """The shipped tree, built once and shared."""
    global _default
    if _default is None:
        _default = Taxonomy(
            TypePath(tuple(line.split(":")))
            for line in _DEFAULT_TREE.split()
        )
    return _default


def load_extensions(text: str, base: Taxonomy | None = None) -> Taxonomy:
    """Extend a taxonomy from line-oriented text.

    One canonical type path per line; blank lines and ``#`` comments are
    skipped.  Each line adds one leaf, so a deeper extension must list its
    ancestors first.
    """
    tax = base if base is not None else default_taxonomy()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            leaf = TypePath(tuple(line.split(":")))
            tax = tax.extended([leaf])
        except TaxonomyError as exc:
            raise ExtensionFileError(str(exc), lineno) from exc
    return tax
