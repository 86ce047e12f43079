"""The ``.box`` design language: parsing and canonical printing.

Grammar::

    file    := { pattern }
    pattern := "pattern" STRING "{" { stmt } "}"
    stmt    := node | edge | meta
    node    := "node" IDENT ":" TYPEPATH
    edge    := "edge" IDENT "->" IDENT
    meta    := "meta" IDENT "=" STRING

    IDENT    := [A-Za-z_][A-Za-z0-9_-]*
    TYPEPATH := IDENT { ":" IDENT }
    STRING   := double-quoted; the only escapes are \\" and \\\\

``#`` starts a line comment; whitespace is insignificant.  The keywords
``pattern``, ``node``, ``edge`` and ``meta`` are reserved and cannot be
used as identifiers.  Files are UTF-8; CR characters are dropped on input
and output always uses LF.

Parsing is total: any input yields a ParseResult whose diagnostics carry
1-based line and column positions.  After an error the parser skips ahead
to the next ``pattern`` keyword and carries on, so one bad block does not
hide findings in the rest of the file.

Printing is canonical: meta entries sorted by key, then nodes sorted by
id, then edges sorted by (from, to), one declaration per line with
two-space indentation.  Parsing a printed graph reproduces it exactly,
and printing is a fixpoint: print(parse(print(g))) == print(g).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

from .graph import Edge, Node, PatternGraph, Severity
from .taxonomy import Taxonomy, TaxonomyError, default_taxonomy

KEYWORDS = frozenset({"pattern", "node", "edge", "meta"})

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*")


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    line: int
    column: int
    code: str
    message: str

    def render(self, path: str) -> str:
        return (
            f"{path}:{self.line}:{self.column}: "
            f"{self.severity}[{self.code}]: {self.message}"
        )


@dataclass(frozen=True)
class SourceFile:
    """A named piece of ``.box`` text, CR-normalised."""

    path: str
    text: str

    def __post_init__(self) -> None:
        cleaned = self.text.replace("\r", "")
        if cleaned.startswith("﻿"):
            cleaned = cleaned[1:]
        object.__setattr__(self, "text", cleaned)

    @classmethod
    def from_bytes(cls, path: str, data: bytes) -> SourceFile:
        return cls(path, data.decode("utf-8", errors="replace"))

    @classmethod
    def from_path(cls, path: str) -> SourceFile:
        with open(path, "rb") as handle:
            return cls.from_bytes(path, handle.read())


@dataclass(frozen=True)
class SourceMap:
    """Where a pattern's declarations live, for reporting on its graph."""

    header: tuple[int, int]
    nodes: dict[str, tuple[int, int]] = field(default_factory=dict)
    edges: dict[tuple[str, str], tuple[int, int]] = field(default_factory=dict)

    def locate(
        self, node: str | None, edge: tuple[str, str] | None
    ) -> tuple[int, int]:
        if node is not None and node in self.nodes:
            return self.nodes[node]
        if edge is not None and edge in self.edges:
            return self.edges[edge]
        return self.header


@dataclass(frozen=True)
class ParseResult:
    graphs: tuple[PatternGraph, ...]
    diagnostics: tuple[Diagnostic, ...]
    source_maps: dict[str, SourceMap] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)


# ---------------------------------------------------------------------------
# Lexer


@dataclass(frozen=True)
class Token:
    type: str  # IDENT STRING LBRACE RBRACE COLON ARROW EQUALS EOF
    value: str
    line: int
    column: int


def _lex(src: SourceFile) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    text = src.text
    i, line, col = 0, 1, 1

    def advance(n: int = 1) -> None:
        nonlocal i, line, col
        for _ in range(n):
            if i < len(text) and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < len(text):
        ch = text[i]
        if ch in " \t\n":
            advance()
            continue
        if ch == "#":
            while i < len(text) and text[i] != "\n":
                advance()
            continue
        start_line, start_col = line, col
        if ch == '"':
            advance()
            parts: list[str] = []
            closed = False
            while i < len(text):
                c = text[i]
                if c == '"':
                    advance()
                    closed = True
                    break
                if c == "\n":
                    break
                if c == "\\":
                    if i + 1 < len(text) and text[i + 1] in '"\\':
                        parts.append(text[i + 1])
                        advance(2)
                        continue
                    diags.append(
                        Diagnostic(
                            "error", line, col, "bad-escape",
                            "only \\\" and \\\\ may follow a backslash",
                        )
                    )
                    advance()
                    continue
                parts.append(c)
                advance()
            if not closed:
                diags.append(
                    Diagnostic(
                        "error", start_line, start_col, "unterminated-string",
                        "string literal is not closed",
                    )
                )
            tokens.append(Token("STRING", "".join(parts), start_line, start_col))
            continue
        m = _IDENT_RE.match(text, i)
        if m:
            word = m.group()
            tokens.append(Token("IDENT", word, start_line, start_col))
            advance(len(word))
            continue
        if ch == "{":
            tokens.append(Token("LBRACE", ch, start_line, start_col))
            advance()
            continue
        if ch == "}":
            tokens.append(Token("RBRACE", ch, start_line, start_col))
            advance()
            continue
        if ch == ":":
            tokens.append(Token("COLON", ch, start_line, start_col))
            advance()
            continue
        if ch == "=":
            tokens.append(Token("EQUALS", ch, start_line, start_col))
            advance()
            continue
        if text.startswith("->", i):
            tokens.append(Token("ARROW", "->", start_line, start_col))
            advance(2)
            continue
        diags.append(
            Diagnostic(
                "error", start_line, start_col, "bad-char",
                f"unexpected character {ch!r}",
            )
        )
        advance()
    tokens.append(Token("EOF", "", line, col))
    return tokens, diags


# ---------------------------------------------------------------------------
# Parser


@dataclass
class _NodeDecl:
    id: str
    segments: tuple[str, ...]
    pos: tuple[int, int]
    type_pos: tuple[int, int]


@dataclass
class _EdgeDecl:
    src: str
    dst: str
    pos: tuple[int, int]


@dataclass
class _MetaDecl:
    key: str
    value: str
    pos: tuple[int, int]


class _Parser:
    def __init__(self, tokens: list[Token], taxonomy: Taxonomy) -> None:
        self.tokens = tokens
        self.taxonomy = taxonomy
        self.pos = 0
        self.diags: list[Diagnostic] = []
        self.graphs: list[PatternGraph] = []
        self.source_maps: dict[str, SourceMap] = {}
        self.names_seen: set[str] = set()

    # -- token plumbing ----------------------------------------------------

    def _peek(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.type != "EOF":
            self.pos += 1
        return tok

    def _at_keyword(self, word: str) -> bool:
        tok = self._peek()
        return tok.type == "IDENT" and tok.value == word

    def _error(self, tok: Token, code: str, message: str) -> None:
        self.diags.append(
            Diagnostic("error", tok.line, tok.column, code, message)
        )

    def _sync_to_pattern(self) -> None:
        while self._peek().type != "EOF" and not self._at_keyword("pattern"):
            self._advance()

    # -- productions -------------------------------------------------------

    def parse_file(self) -> None:
        while self._peek().type != "EOF":
            if self._at_keyword("pattern"):
                self._parse_pattern()
            else:
                tok = self._peek()
                self._error(
                    tok, "syntax",
                    f"expected 'pattern', got {tok.value or tok.type!r}",
                )
                self._advance()
                self._sync_to_pattern()

    def _parse_pattern(self) -> None:
        mark = len(self.diags)
        header = self._advance()  # 'pattern'
        name_tok = self._peek()
        if name_tok.type != "STRING":
            self._error(name_tok, "syntax", "expected pattern name string")
            self._sync_to_pattern()
            return
        self._advance()
        brace = self._peek()
        if brace.type != "LBRACE":
            self._error(brace, "syntax", "expected '{' after pattern name")
            self._sync_to_pattern()
            return
        self._advance()

        nodes: list[_NodeDecl] = []
        edges: list[_EdgeDecl] = []
        metas: list[_MetaDecl] = []
        closed = False
        while True:
            tok = self._peek()
            if tok.type == "RBRACE":
                self._advance()
                closed = True
                break
            if tok.type == "EOF" or self._at_keyword("pattern"):
                self._error(tok, "syntax", "pattern block is not closed")
                break
            if self._at_keyword("node"):
                self._parse_node(nodes)
            elif self._at_keyword("edge"):
                self._parse_edge(edges)
            elif self._at_keyword("meta"):
                self._parse_meta(metas)
            else:
                self._error(
                    tok, "syntax",
                    f"expected 'node', 'edge' or 'meta', got "
                    f"{tok.value or tok.type!r}",
                )
                self._advance()
                self._skip_statement()
        self._assemble(
            name_tok.value,
            (header.line, header.column),
            nodes,
            edges,
            metas,
            dirty=len(self.diags) > mark,
        )
        if not closed:
            return

    def _skip_statement(self) -> None:
        while True:
            tok = self._peek()
            if tok.type in ("EOF", "RBRACE") or (
                tok.type == "IDENT" and tok.value in KEYWORDS
            ):
                return
            self._advance()

    def _expect_ident(self, what: str) -> Token | None:
        tok = self._peek()
        if tok.type != "IDENT":
            self._error(tok, "syntax", f"expected {what}")
            self._skip_statement()
            return None
        if tok.value in KEYWORDS:
            self._error(
                tok, "syntax", f"keyword {tok.value!r} cannot be used as {what}"
            )
            self._skip_statement()
            return None
        return self._advance()

    def _parse_node(self, out: list[_NodeDecl]) -> None:
        kw = self._advance()
        ident = self._expect_ident("a node identifier")
        if ident is None:
            return
        colon = self._peek()
        if colon.type != "COLON":
            self._error(colon, "syntax", "expected ':' before the node type")
            self._skip_statement()
            return
        self._advance()
        first = self._expect_ident("a type segment")
        if first is None:
            return
        segments = [first.value]
        while self._peek().type == "COLON":
            self._advance()
            seg = self._peek()
            if seg.type != "IDENT":
                self._error(seg, "syntax", "expected a type segment after ':'")
                self._skip_statement()
                return
            segments.append(self._advance().value)
        out.append(
            _NodeDecl(
                ident.value,
                tuple(segments),
                (kw.line, kw.column),
                (first.line, first.column),
            )
        )

    def _parse_edge(self, out: list[_EdgeDecl]) -> None:
        kw = self._advance()
        src = self._expect_ident("a source identifier")
        if src is None:
            return
        arrow = self._peek()
        if arrow.type != "ARROW":
            self._error(arrow, "syntax", "expected '->'")
            self._skip_statement()
            return
        self._advance()
        dst = self._expect_ident("a destination identifier")
        if dst is None:
            return
        out.append(_EdgeDecl(src.value, dst.value, (kw.line, kw.column)))

    def _parse_meta(self, out: list[_MetaDecl]) -> None:
        kw = self._advance()
        key = self._expect_ident("a meta key")
        if key is None:
            return
        eq = self._peek()
        if eq.type != "EQUALS":
            self._error(eq, "syntax", "expected '=' after the meta key")
            self._skip_statement()
            return
        self._advance()
        value = self._peek()
        if value.type != "STRING":
            self._error(value, "syntax", "expected a quoted meta value")
            self._skip_statement()
            return
        self._advance()
        out.append(_MetaDecl(key.value, value.value, (kw.line, kw.column)))

    # -- graph assembly ----------------------------------------------------

    def _assemble(
        self,
        name: str,
        header: tuple[int, int],
        node_decls: list[_NodeDecl],
        edge_decls: list[_EdgeDecl],
        meta_decls: list[_MetaDecl],
        *,
        dirty: bool = False,
    ) -> None:
        # a block that already produced syntax errors still gets its
        # declarations validated, but never yields a graph
        bad = dirty
        if name in self.names_seen:
            self.diags.append(
                Diagnostic(
                    "error", header[0], header[1], "duplicate-pattern",
                    f"pattern {name!r} is declared twice",
                )
            )
            return
        self.names_seen.add(name)

        nodes: list[Node] = []
        ids: set[str] = set()
        for decl in node_decls:
            if decl.id in ids:
                self._positioned_error(
                    decl.pos, "duplicate-id",
                    f"node {decl.id!r} is declared twice",
                )
                bad = True
                continue
            ids.add(decl.id)
            try:
                type_path = self.taxonomy.resolve(decl.segments)
            except TaxonomyError as exc:
                self._positioned_error(decl.type_pos, "unknown-type", str(exc))
                bad = True
                continue
            nodes.append(Node(decl.id, type_path))

        edges: list[Edge] = []
        seen_edges: set[tuple[str, str]] = set()
        for decl in edge_decls:
            missing = [n for n in (decl.src, decl.dst) if n not in ids]
            if missing:
                self._positioned_error(
                    decl.pos, "unknown-node",
                    f"edge references undeclared node {missing[0]!r}",
                )
                bad = True
                continue
            if decl.src == decl.dst:
                self._positioned_error(
                    decl.pos, "self-loop",
                    f"edge {decl.src}->{decl.dst} is a self-loop",
                )
                bad = True
                continue
            if (decl.src, decl.dst) in seen_edges:
                self._positioned_error(
                    decl.pos, "duplicate-edge",
                    f"edge {decl.src}->{decl.dst} is declared twice",
                )
                bad = True
                continue
            seen_edges.add((decl.src, decl.dst))
            edges.append(Edge(decl.src, decl.dst))

        meta: dict[str, str] = {}
        for decl in meta_decls:
            if decl.key in meta:
                self._positioned_error(
                    decl.pos, "duplicate-meta",
                    f"meta key {decl.key!r} is set twice",
                )
                bad = True
                continue
            meta[decl.key] = decl.value

        if bad:
            return
        self.graphs.append(PatternGraph(name, tuple(nodes), tuple(edges), meta))
        self.source_maps[name] = SourceMap(
            header,
            {d.id: d.pos for d in node_decls},
            {(d.src, d.dst): d.pos for d in edge_decls},
        )

    def _positioned_error(
        self, pos: tuple[int, int], code: str, message: str
    ) -> None:
        self.diags.append(Diagnostic("error", pos[0], pos[1], code, message))


def parse(src: SourceFile, taxonomy: Taxonomy | None = None) -> ParseResult:
    """Parse a source file; never raises.

    Graphs are returned for every block that parsed cleanly, in file
    order; blocks with errors contribute diagnostics instead.
    """
    if taxonomy is None:
        taxonomy = default_taxonomy()
    tokens, lex_diags = _lex(src)
    parser = _Parser(tokens, taxonomy)
    parser.parse_file()
    diags = sorted(
        lex_diags + parser.diags, key=lambda d: (d.line, d.column, d.code)
    )
    return ParseResult(
        tuple(parser.graphs), tuple(diags), parser.source_maps
    )


def parse_text(
    text: str, taxonomy: Taxonomy | None = None, path: str = "<memory>"
) -> ParseResult:
    return parse(SourceFile(path, text), taxonomy)


# ---------------------------------------------------------------------------
# Canonical printer


def _escape(value: str) -> str:
    if "\n" in value:
        raise ValueError("strings in .box files cannot contain newlines")
    return value.replace("\\", "\\\\").replace('"', '\\"')


def print_graph(g: PatternGraph) -> str:
    """One pattern block in canonical form, ending with a newline."""
    lines = [f'pattern "{_escape(g.name)}" {{']
    for key in sorted(g.meta):
        lines.append(f'  meta {key} = "{_escape(g.meta[key])}"')
    for node in sorted(g.nodes, key=lambda n: n.id):
        lines.append(f"  node {node.id}: {node.type}")
    for edge in sorted(g.edges, key=lambda e: (e.src, e.dst)):
        lines.append(f"  edge {edge.src} -> {edge.dst}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_file(graphs: Iterable[PatternGraph]) -> str:
    """A whole ``.box`` file: blocks separated by blank lines."""
    return "\n".join(print_graph(g) for g in graphs)
