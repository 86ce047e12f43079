import string

from hypothesis import given, settings
from hypothesis import strategies as st

from boxology.dsl import (
    SourceFile,
    parse,
    parse_text,
    print_file,
    print_graph,
)
from boxology.graph import Edge, Node, PatternGraph
from boxology.taxonomy import TypePath, default_taxonomy


def diag_index(result):
    return {(d.code, d.line, d.column) for d in result.diagnostics}


GOOD = """\
# a comment
pattern "tiny" {
  meta label = "the \\"small\\" one"
  node d: instance:data
  node tr: process:generate:train
  node m: model:stat:NN
  edge d -> tr
  edge tr -> m
}
"""


class TestParseGood:
    def test_single_pattern(self):
        result = parse_text(GOOD)
        assert result.ok and not result.diagnostics
        (g,) = result.graphs
        assert g.name == "tiny"
        assert [x.id for x in g.nodes] == ["d", "m", "tr"]
        assert g.meta["label"] == 'the "small" one'

    def test_source_map_positions(self):
        result = parse_text(GOOD)
        sm = result.source_maps["tiny"]
        assert sm.header == (2, 1)
        assert sm.nodes["d"] == (4, 3)
        assert sm.edges[("d", "tr")] == (7, 3)

    def test_crlf_and_bom(self):
        data = ("﻿" + GOOD).replace("\n", "\r\n").encode("utf-8")
        result = parse(SourceFile.from_bytes("x.box", data))
        assert result.ok
        assert result.source_maps["tiny"].nodes["d"] == (4, 3)

    def test_two_patterns(self):
        text = GOOD + '\npattern "other" {\n  node a: actor\n}\n'
        result = parse_text(text)
        assert [g.name for g in result.graphs] == ["tiny", "other"]

    def test_empty_file_is_ok(self):
        result = parse_text("")
        assert result.ok and result.graphs == ()

    def test_comment_only_file(self):
        assert parse_text("# nothing here\n").ok


class TestParseErrors:
    def test_unknown_type_position(self):
        text = 'pattern "p" {\n  node d: instance:qua\n}\n'
        result = parse_text(text)
        assert not result.ok and not result.graphs
        (d,) = result.diagnostics
        assert (d.code, d.line, d.column) == ("unknown-type", 2, 11)

    def test_duplicate_node(self):
        text = 'pattern "p" {\n  node d: instance\n  node d: model\n}\n'
        (d,) = parse_text(text).diagnostics
        assert d.code == "duplicate-id" and d.line == 3

    def test_edge_to_undeclared(self):
        text = 'pattern "p" {\n  node d: instance\n  edge d -> ghost\n}\n'
        (d,) = parse_text(text).diagnostics
        assert d.code == "unknown-node" and d.line == 3

    def test_bad_type_does_not_hide_edges(self):
        # the node is still declared, so its edges do not double-report
        text = (
            'pattern "p" {\n'
            "  node d: instance:qua\n"
            "  node p2: process:transform\n"
            "  edge d -> p2\n"
            "}\n"
        )
        result = parse_text(text)
        assert [d.code for d in result.diagnostics] == ["unknown-type"]

    def test_self_loop_and_duplicate_edge(self):
        text = (
            'pattern "p" {\n'
            "  node a: instance\n"
            "  node b: process:transform\n"
            "  edge a -> a\n"
            "  edge a -> b\n"
            "  edge a -> b\n"
            "}\n"
        )
        found = [d.code for d in parse_text(text).diagnostics]
        assert found == ["self-loop", "duplicate-edge"]

    def test_duplicate_pattern_keeps_first(self):
        text = (
            'pattern "p" {\n  node a: actor\n}\n'
            'pattern "p" {\n  node b: actor\n}\n'
        )
        result = parse_text(text)
        assert [d.code for d in result.diagnostics] == ["duplicate-pattern"]
        (g,) = result.graphs
        assert g.has_node("a")

    def test_duplicate_meta(self):
        text = 'pattern "p" {\n  meta k = "1"\n  meta k = "2"\n}\n'
        (d,) = parse_text(text).diagnostics
        assert d.code == "duplicate-meta"

    def test_string_escapes(self):
        text = 'pattern "p" {\n  meta k = "a\\tb"\n}\n'
        (d,) = parse_text(text).diagnostics
        assert d.code == "bad-escape"

    def test_unterminated_string(self):
        result = parse_text('pattern "p {\n}\n')
        assert any(d.code == "unterminated-string" for d in result.diagnostics)

    def test_bad_char(self):
        result = parse_text('pattern "p" {\n  node d: instance;\n}\n')
        assert any(d.code == "bad-char" for d in result.diagnostics)

    def test_keyword_cannot_name_a_node(self):
        result = parse_text('pattern "p" {\n  node edge: instance\n}\n')
        assert any(d.severity == "error" for d in result.diagnostics)

    def test_unclosed_block(self):
        result = parse_text('pattern "p" {\n  node d: instance\n')
        assert any(
            "not closed" in d.message for d in result.diagnostics
        )

    def test_diagnostics_sorted_by_position(self):
        text = (
            'pattern "a" {\n  node x: instance:qua\n}\n'
            'pattern "b" {\n  node y: nope\n}\n'
        )
        diags = parse_text(text).diagnostics
        assert [(d.line, d.column) for d in diags] == sorted(
            (d.line, d.column) for d in diags
        )


class TestRecovery:
    def test_resyncs_at_next_pattern(self):
        text = (
            "garbage garbage\n"
            'pattern "ok" {\n  node a: actor\n}\n'
        )
        result = parse_text(text)
        assert [g.name for g in result.graphs] == ["ok"]
        assert result.diagnostics

    def test_broken_block_does_not_take_down_siblings(self):
        text = (
            'pattern "bad" {\n  node : instance\n}\n'
            'pattern "ok" {\n  node a: actor\n}\n'
        )
        result = parse_text(text)
        assert "ok" in [g.name for g in result.graphs]
        assert "bad" not in [g.name for g in result.graphs]

    def test_never_raises_on_junk(self):
        for junk in ["{", "}", '"', "->", "=", "pattern", 'pattern "x"', "\x00"]:
            parse_text(junk)  # must not raise


class TestPrinting:
    def test_render_format(self):
        d = parse_text('pattern "p" {\n node d: instance:qua\n}\n').diagnostics[0]
        assert d.render("f.box") == (
            f"f.box:{d.line}:{d.column}: error[unknown-type]: {d.message}"
        )

    def test_canonical_shape(self):
        g = PatternGraph(
            "p",
            (
                Node("b", TypePath(("model",))),
                Node("a", TypePath(("instance",))),
                Node("p1", TypePath(("process", "transform"))),
            ),
            (Edge("p1", "b"), Edge("a", "p1")),
            {"z": "last", "a": "first"},
        )
        assert print_graph(g) == (
            'pattern "p" {\n'
            '  meta a = "first"\n'
            '  meta z = "last"\n'
            "  node a: instance\n"
            "  node b: model\n"
            "  node p1: process:transform\n"
            "  edge a -> p1\n"
            "  edge p1 -> b\n"
            "}\n"
        )

    def test_print_file_blank_line_between(self):
        result = parse_text(GOOD + '\npattern "q" {\n  node a: actor\n}\n')
        text = print_file(result.graphs)
        assert "}\n\npattern" in text

    def test_parse_print_identity_on_catalog(self, cat):
        for name in cat.names():
            text = print_graph(cat[name])
            result = parse_text(text)
            assert result.ok
            assert print_graph(result.graphs[0]) == text


_ident = st.from_regex(r"[a-z][a-z0-9_]{0,5}", fullmatch=True).filter(
    lambda s: s not in {"pattern", "node", "edge", "meta"}
)
_meta_value = st.text(
    alphabet=string.ascii_letters + string.digits + ' .,:"\\/-', max_size=12
)
_type = st.sampled_from(
    [
        ("instance",),
        ("instance", "data"),
        ("instance", "sym", "label"),
        ("model", "stat", "NN"),
        ("model", "sem"),
        ("process", "transform"),
        ("process", "infer", "deduce"),
        ("actor", "human"),
    ]
)


@st.composite
def graphs(draw):
    ids = draw(
        st.lists(_ident, min_size=1, max_size=6, unique=True)
    )
    nodes = tuple(Node(i, TypePath(draw(_type))) for i in ids)
    pairs = [
        (a.id, b.id)
        for a in nodes
        for b in nodes
        if a.id != b.id and a.is_process() != b.is_process()
    ]
    chosen = draw(
        st.lists(st.sampled_from(pairs), max_size=8, unique=True)
        if pairs
        else st.just([])
    )
    meta_keys = draw(st.lists(_ident, max_size=3, unique=True))
    meta = {k: draw(_meta_value) for k in meta_keys}
    name = draw(st.text(alphabet=string.ascii_letters + "-_ ", min_size=1, max_size=10))
    return PatternGraph(
        name, nodes, tuple(Edge(a, b) for a, b in chosen), meta
    )


class TestRoundTripProperty:
    @given(graphs())
    @settings(max_examples=200, deadline=None)
    def test_print_parse_print_fixpoint(self, g):
        text = print_graph(g)
        result = parse_text(text)
        assert result.ok, [d.message for d in result.diagnostics]
        (g2,) = result.graphs
        assert g2.name == g.name
        assert g2.nodes == g.nodes
        assert g2.edges == g.edges
        assert g2.meta == g.meta
        assert print_graph(g2) == text
