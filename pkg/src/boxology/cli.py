"""Command line front end.

Results go to stdout; diagnostics go to stderr as
``file:line:col: severity[code]: message``.  Exit status 0 means success
(warnings allowed), 1 means error diagnostics or a failed operation, and
2 means the invocation itself was unusable (missing file, unknown
pattern, bad flags).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import catalog as catalog_mod
from .classifier import classify_system, kautz_types
from .composer import ComposeError, compose
from .dsl import (
    Diagnostic,
    ParseResult,
    SourceFile,
    parse,
    print_graph,
)
from .graph import CheckDiagnostic, PatternGraph, check_well_formed
from .matcher import Match, TooManyProcessesError, decompose, find_matches
from .renderer import RenderOptions, to_dot
from .taxonomy import (
    ExtensionFileError,
    Taxonomy,
    default_taxonomy,
    load_extensions,
)


class _Fail(Exception):
    def __init__(self, code: int) -> None:
        self.code = code


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _read_source(path: str) -> SourceFile:
    try:
        return SourceFile.from_path(path)
    except OSError as exc:
        _err(f"{path}: cannot read: {exc.strerror or exc}")
        raise _Fail(2) from exc


def _taxonomy_for(args: argparse.Namespace) -> Taxonomy:
    ext_path = getattr(args, "taxonomy", None)
    if not ext_path:
        return default_taxonomy()
    try:
        with open(ext_path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        _err(f"{ext_path}: cannot read: {exc.strerror or exc}")
        raise _Fail(2) from exc
    try:
        return load_extensions(text)
    except ExtensionFileError as exc:
        _err(f"{ext_path}:{exc.line}:1: error[taxonomy]: {exc}")
        raise _Fail(1) from exc


def _catalog_for(args: argparse.Namespace, taxonomy: Taxonomy) -> catalog_mod.Catalog:
    path = getattr(args, "catalog", None) or os.environ.get("BOXOLOGY_CATALOG")
    if not path:
        return catalog_mod.builtin()
    src = _read_source(path)
    try:
        return catalog_mod.load(src, taxonomy)
    except catalog_mod.CatalogError as exc:
        _err(str(exc))
        raise _Fail(1) from exc


def _print_parse_diagnostics(path: str, diagnostics: Sequence[Diagnostic]) -> None:
    for d in diagnostics:
        _err(d.render(path))


def _render_check_diagnostic(
    path: str, result: ParseResult, g: PatternGraph, d: CheckDiagnostic
) -> str:
    source_map = result.source_maps.get(g.name)
    line, col = (1, 1) if source_map is None else source_map.locate(d.node, d.edge)
    return f"{path}:{line}:{col}: {d.severity}[{d.code}]: {d.message}"


def _parse_file(
    path: str, taxonomy: Taxonomy, *, checked: bool
) -> tuple[ParseResult, list[PatternGraph]]:
    """Parse (and optionally well-formedness-gate) a design file.

    Prints every diagnostic; raises _Fail(1) when any is an error.
    """
    src = _read_source(path)
    result = parse(src, taxonomy)
    lines: list[tuple[tuple[int, int], str, bool]] = [
        ((d.line, d.column), d.render(path), d.severity == "error")
        for d in result.diagnostics
    ]
    if checked and result.ok:
        for g in result.graphs:
            source_map = result.source_maps.get(g.name)
            for d in check_well_formed(g, taxonomy=taxonomy):
                pos = (
                    (1, 1)
                    if source_map is None
                    else source_map.locate(d.node, d.edge)
                )
                lines.append(
                    (
                        pos,
                        f"{path}:{pos[0]}:{pos[1]}: "
                        f"{d.severity}[{d.code}]: {d.message}",
                        d.severity == "error",
                    )
                )
    failed = False
    for _, text, is_error in sorted(lines, key=lambda item: item[0]):
        _err(text)
        failed = failed or is_error
    if failed:
        raise _Fail(1)
    return result, list(result.graphs)


# ---------------------------------------------------------------------------
# Commands


def _cmd_check(args: argparse.Namespace) -> int:
    taxonomy = _taxonomy_for(args)
    _parse_file(args.file, taxonomy, checked=True)
    return 0


def _format_match(m: Match) -> str:
    pairs = " ".join(f"{p}={t}" for p, t in m.mapping)
    return f"{m.pattern}: {pairs}"


def _cmd_match(args: argparse.Namespace) -> int:
    taxonomy = _taxonomy_for(args)
    cat = _catalog_for(args, taxonomy)
    if args.pattern is not None and args.pattern not in cat:
        _err(f"unknown pattern {args.pattern!r}")
        return 2
    _, graphs = _parse_file(args.file, taxonomy, checked=True)
    wanted = [args.pattern] if args.pattern is not None else cat.names()
    matches: list[Match] = []
    for target in graphs:
        for name in wanted:
            matches.extend(find_matches(cat[name], target))
    if args.json:
        doc = [{"pattern": m.pattern, "mapping": m.as_dict()} for m in matches]
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for m in matches:
            print(_format_match(m))
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    taxonomy = _taxonomy_for(args)
    cat = _catalog_for(args, taxonomy)
    _, graphs = _parse_file(args.file, taxonomy, checked=True)
    for target in graphs:
        try:
            dec = decompose(target, cat)
        except TooManyProcessesError as exc:
            _err(f"{args.file}: {exc}")
            return 1
        for part in dec.parts:
            print(_format_match(part))
        print("uncovered:" + "".join(f" {p}" for p in sorted(dec.uncovered)))
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    taxonomy = _taxonomy_for(args)
    cat = _catalog_for(args, taxonomy)
    _, graphs = _parse_file(args.file, taxonomy, checked=True)
    for target in graphs:
        print(classify_system(target, cat).system_class.value)
    return 0


def _cmd_kautz(args: argparse.Namespace) -> int:
    taxonomy = _taxonomy_for(args)
    cat = _catalog_for(args, taxonomy)
    _, graphs = _parse_file(args.file, taxonomy, checked=True)
    for target in graphs:
        report = kautz_types(target, cat)
        for category in sorted(report.evidence):
            print(f"type {category}: " + ", ".join(report.evidence[category]))
    return 0


def _cmd_compose(args: argparse.Namespace) -> int:
    taxonomy = _taxonomy_for(args)
    cat = _catalog_for(args, taxonomy)
    for name in (args.left, args.right):
        if name not in cat:
            _err(f"unknown pattern {name!r}")
            return 2
    glue: list[tuple[str, str]] = []
    if args.glue:
        for chunk in args.glue.split(","):
            left, sep, right = chunk.partition("=")
            if not sep or not left or not right:
                _err(f"bad glue entry {chunk!r}; expected leftId=rightId")
                return 2
            glue.append((left, right))
    try:
        result = compose(
            cat[args.left],
            cat[args.right],
            glue,
            args.name or f"{args.left}+{args.right}",
            taxonomy=taxonomy,
        )
    except ComposeError as exc:
        _err(str(exc))
        return 1
    text = print_graph(result)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        print(text, end="")
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    taxonomy = _taxonomy_for(args)
    result, graphs = _parse_file(args.file, taxonomy, checked=False)
    if len(graphs) != 1:
        _err(
            f"{args.file}: render expects exactly one pattern, "
            f"found {len(graphs)}"
        )
        return 2
    options = RenderOptions(
        format=args.format, rankdir=args.rankdir, show_meta=args.show_meta
    )
    text = to_dot(graphs[0], options)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        print(text, end="")
    return 0


def _cmd_catalog(args: argparse.Namespace) -> int:
    taxonomy = _taxonomy_for(args)
    cat = _catalog_for(args, taxonomy)
    if args.action == "list":
        for name in cat.names():
            print(name)
        return 0
    if args.name not in cat:
        _err(f"unknown pattern {args.name!r}")
        return 2
    print(print_graph(cat[args.name]), end="")
    return 0


# ---------------------------------------------------------------------------
# Argument wiring


def _add_taxonomy_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--taxonomy",
        metavar="FILE",
        help="taxonomy extension file: one extra leaf type path per line",
    )


def _add_catalog_flag(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--catalog",
        metavar="FILE",
        help="catalog file (default: builtin, or $BOXOLOGY_CATALOG)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxology",
        description="Check, match, classify and draw design-pattern graphs.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("check", help="parse a file and check well-formedness")
    p.add_argument("file")
    _add_taxonomy_flag(p)
    p.set_defaults(handler=_cmd_check)

    p = subs.add_parser("match", help="find catalog patterns inside a design")
    p.add_argument("file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pattern", help="catalog pattern to search for")
    group.add_argument(
        "--all", action="store_true", help="search for every catalog pattern"
    )
    p.add_argument("--json", action="store_true", help="machine-readable output")
    _add_catalog_flag(p)
    _add_taxonomy_flag(p)
    p.set_defaults(handler=_cmd_match)

    p = subs.add_parser(
        "decompose", help="cover a design with elementary patterns"
    )
    p.add_argument("file")
    _add_catalog_flag(p)
    _add_taxonomy_flag(p)
    p.set_defaults(handler=_cmd_decompose)

    p = subs.add_parser("classify", help="name the system class of a design")
    p.add_argument("file")
    _add_catalog_flag(p)
    _add_taxonomy_flag(p)
    p.set_defaults(handler=_cmd_classify)

    p = subs.add_parser(
        "kautz", help="report Kautz categories witnessed by a design"
    )
    p.add_argument("file")
    _add_catalog_flag(p)
    _add_taxonomy_flag(p)
    p.set_defaults(handler=_cmd_kautz)

    p = subs.add_parser("compose", help="glue two catalog patterns together")
    p.add_argument("--left", required=True, metavar="NAME")
    p.add_argument("--right", required=True, metavar="NAME")
    p.add_argument(
        "--glue",
        default="",
        metavar="L=R[,L=R...]",
        help="node pairs to fuse, left id = right id",
    )
    p.add_argument("--name", help="name of the composed pattern")
    p.add_argument("-o", "--out", metavar="FILE", help="write here, not stdout")
    _add_catalog_flag(p)
    _add_taxonomy_flag(p)
    p.set_defaults(handler=_cmd_compose)

    p = subs.add_parser("render", help="emit Graphviz DOT for a design")
    p.add_argument("file")
    p.add_argument("--format", default="dot", choices=["dot"])
    p.add_argument("--rankdir", default="LR", choices=["LR", "TB"])
    p.add_argument("--show-meta", action="store_true")
    p.add_argument("-o", "--out", metavar="FILE", help="write here, not stdout")
    _add_taxonomy_flag(p)
    p.set_defaults(handler=_cmd_render)

    p = subs.add_parser("catalog", help="inspect the pattern catalog")
    catalog_subs = p.add_subparsers(dest="action", required=True)
    listing = catalog_subs.add_parser("list", help="one pattern name per line")
    _add_catalog_flag(listing)
    _add_taxonomy_flag(listing)
    listing.set_defaults(handler=_cmd_catalog, action="list")
    show = catalog_subs.add_parser("show", help="print one pattern's source")
    show.add_argument("name")
    _add_catalog_flag(show)
    _add_taxonomy_flag(show)
    show.set_defaults(handler=_cmd_catalog, action="show")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits itself on usage errors and --help; keep main() a
        # plain int-returning function either way.
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.handler(args)
    except _Fail as fail:
        return fail.code
    except OSError as exc:
        _err(f"i/o failure: {exc}")
        return 2


def entry() -> None:  # pragma: no cover - thin wrapper
    sys.exit(main())
