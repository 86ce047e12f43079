import pathlib

import pytest

from boxology.catalog import (
    ELEMENTARY,
    Catalog,
    CatalogError,
    builtin,
    builtin_text,
    load,
    load_path,
)
from boxology.dsl import SourceFile, print_file
from boxology.graph import check_well_formed, has_errors


class TestBuiltin:
    def test_names_in_presentation_order(self, cat):
        names = cat.names()
        assert names[:8] == list(ELEMENTARY)
        assert names[0] == "1a"
        assert len(names) >= 20
        assert len(set(names)) == len(names)

    def test_every_entry_checks_clean(self, cat, rules, taxonomy):
        for name in cat.names():
            diags = check_well_formed(cat[name], rules, taxonomy)
            assert not has_errors(diags), name

    def test_elementary_have_one_process_each(self, cat):
        for g in cat.elementary():
            assert len(g.process_nodes()) == 1, g.name

    def test_compositional_have_more(self, cat):
        for name in ["3a", "4", "5a", "6a", "7", "11"]:
            assert len(cat[name].process_nodes()) >= 2, name

    def test_print_is_byte_stable(self):
        text = builtin_text()
        cat = builtin()
        assert print_file([cat[n] for n in cat.names()]) == text

    def test_builtin_cached(self):
        assert builtin() is builtin()

    def test_every_entry_has_a_label(self, cat):
        for name in cat.names():
            assert cat[name].meta.get("label"), name

    def test_container_protocol(self, cat):
        assert "1a" in cat and "zz" not in cat
        assert len(cat) == len(cat.names())
        with pytest.raises(KeyError):
            cat["zz"]


class TestRepoCopy:
    def test_repo_catalog_matches_shipped_data(self):
        repo = pathlib.Path(__file__).resolve().parent.parent
        copy = (repo / "catalog" / "builtin.box").read_text("utf-8")
        assert copy == builtin_text()


class TestLoading:
    def test_load_roundtrip(self):
        cat = load(SourceFile("<x>", builtin_text()))
        assert len(cat) == len(builtin())

    def test_parse_error_rejects_whole_file(self):
        with pytest.raises(CatalogError) as exc:
            load(SourceFile("bad.box", 'pattern "p" {\n  node q: wat\n}\n'))
        assert "bad.box:2" in str(exc.value)

    def test_check_error_rejects_whole_file(self):
        src = SourceFile(
            "bad.box",
            'pattern "ok" {\n  node a: actor\n}\n'
            'pattern "ill" {\n'
            "  node tr: process:generate:train\n"
            "  node m: model\n"
            "  edge tr -> m\n"
            "}\n",
        )
        with pytest.raises(CatalogError) as exc:
            load(src)
        assert "ill" in str(exc.value)

    def test_load_path(self, tmp_path):
        f = tmp_path / "c.box"
        f.write_text('pattern "solo" {\n  node a: actor\n}\n')
        cat = load_path(str(f))
        assert cat.names() == ["solo"]

    def test_elementary_subset_of_custom_catalog(self):
        cat = Catalog({})
        assert cat.elementary() == []
