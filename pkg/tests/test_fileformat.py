import pytest

from qlab import instances as inst
from qlab.data import counterexamples_dir, instances_dir
from qlab.errors import (
    FormatSyntaxError,
    PartialTable,
    UnresolvedReference,
)
from qlab.fileformat import (
    Instance,
    Registry,
    build_instance,
    header_of,
    load_file,
    parse_text,
    render_instance,
)


def _bundled_instance(name, kind, refs, value):
    return Instance(kind, name, refs, value)


ALL_BUNDLED = [
    ("q2.qt", "quantaloid", {}, inst.q2),
    ("q3.qt", "quantaloid", {}, inst.q3),
    ("qrel3.qt", "quantaloid", {}, inst.qrel3),
    ("chain3_q2.qc", "category", {"base": "q2"}, inst.chain3_q2),
    ("zero_qrel3.qc", "category", {"base": "qrel3"}, inst.zero_qrel3),
    ("p1_qrel3.qc", "category", {"base": "qrel3"}, inst.p1_qrel3),
    ("pd1_qrel3.qc", "category", {"base": "qrel3"}, inst.pd1_qrel3),
    ("star_q2.qc", "category", {"base": "q2"}, inst.star_q2),
    ("f_id_chain3.qf", "functor",
     {"source": "chain3_q2", "target": "chain3_q2"}, inst.functor_id_chain3),
    ("f_bot_chain3.qf", "functor",
     {"source": "chain3_q2", "target": "chain3_q2"}, inst.functor_bot_chain3),
    ("f_collapse_chain3.qf", "functor",
     {"source": "chain3_q2", "target": "chain3_q2"},
     inst.functor_collapse_chain3),
    ("d_down_chain3.qd", "distributor",
     {"source": "star_q2", "target": "chain3_q2"},
     inst.distributor_down_chain3),
    ("p_chain2_q2.qp", "pseudofunctor", {"base": "q2"},
     inst.pseudofunctor_chain2_q2),
    ("m_chain3_q2.qm", "module", {"base": "q2"}, inst.module_chain3_q2),
    ("m_min_q3.qm", "module", {"base": "q3"}, inst.module_min_q3),
    ("m_hom1_qrel3.qm", "module", {"base": "qrel3"}, inst.module_hom1_qrel3),
    ("a_chain3_q2.qa", "action", {"base": "q2"}, inst.action_chain3_q2),
    ("a_min_q3.qa", "action", {"base": "q3"}, inst.action_min_q3),
]


@pytest.mark.parametrize("fname,kind,refs,make",
                         ALL_BUNDLED, ids=[b[0] for b in ALL_BUNDLED])
def test_bundled_file_matches_programmatic_value(fname, kind, refs, make):
    loaded = load_file(instances_dir() / fname)
    assert loaded.kind == kind
    assert loaded.refs == refs
    assert loaded.value == make()


@pytest.mark.parametrize("fname,kind,refs,make",
                         ALL_BUNDLED, ids=[b[0] for b in ALL_BUNDLED])
def test_render_parse_is_identity(fname, kind, refs, make):
    registry = Registry(instances_dir())
    original = load_file(instances_dir() / fname, registry)
    text = render_instance(original)
    back = build_instance(parse_text(text), registry.resolve)
    assert back == original
    assert render_instance(back) == text


@pytest.mark.parametrize("fname,kind,refs,make",
                         ALL_BUNDLED, ids=[b[0] for b in ALL_BUNDLED])
def test_bundled_files_are_canonical_bytes(fname, kind, refs, make):
    # byte identity modulo nothing: bundled files are render output
    path = instances_dir() / fname
    assert render_instance(load_file(path)) == path.read_text(encoding="utf-8")


class TestSyntaxErrors:
    def test_unknown_kind(self):
        with pytest.raises(FormatSyntaxError):
            parse_text("widget w\n")

    def test_position_is_reported(self):
        with pytest.raises(FormatSyntaxError) as err:
            parse_text("quantaloid q\nobjects *\nhom * * { elements 0 1 ; "
                       "order 0 < 1 }\n")
        assert err.value.line == 3

    def test_unbalanced_brace(self):
        with pytest.raises(FormatSyntaxError):
            parse_text("quantaloid q\nhom * * { elements 0\n")

    def test_empty_file(self):
        with pytest.raises(FormatSyntaxError):
            parse_text("# nothing here\n")


class TestBuildErrors:
    def test_missing_compose_entry(self, tmp_path):
        text = (instances_dir() / "q2.qt").read_text()
        text = text.replace("(1,1)=1", "")
        (tmp_path / "q2broken.qt").write_text(text)
        with pytest.raises(PartialTable):
            load_file(tmp_path / "q2broken.qt")

    def test_missing_hom_block_without_trivial(self, tmp_path):
        (tmp_path / "q.qt").write_text(
            "quantaloid q\nobjects a b\n"
            "hom a a { elements 0 ; }\nhom b b { elements 0 ; }\n"
            "hom a b { elements 0 ; }\n"
            "id a = 0\nid b = 0\n")
        with pytest.raises(PartialTable):
            load_file(tmp_path / "q.qt")

    def test_trivial_fills_missing_pairs(self, tmp_path):
        (tmp_path / "q.qt").write_text(
            "quantaloid q\nobjects a b\ntrivial\n"
            "hom a a { elements 0 ; }\n")
        loaded = load_file(tmp_path / "q.qt")
        assert loaded.value.hom("a", "b").elements == ("0",)
        assert loaded.value.identity("b") == "0"

    def test_unresolved_reference(self, tmp_path):
        (tmp_path / "c.qc").write_text(
            "category c\nbase nowhere\nobject x : *\nhom ( x , x ) = 1\n")
        with pytest.raises(UnresolvedReference):
            load_file(tmp_path / "c.qc", Registry(tmp_path))

    def test_missing_category_hom_entry(self, tmp_path):
        (tmp_path / "c.qc").write_text(
            "category c\nbase q2\nobject x : *\nobject y : *\n"
            "hom ( x , x ) = 1\nhom ( y , y ) = 1\nhom ( x , y ) = 1\n")
        with pytest.raises(PartialTable):
            load_file(tmp_path / "c.qc")


class TestParsing:
    def test_order_statements_are_closed_transitively(self, tmp_path):
        # covers only; closure supplies 0 <= 1
        (tmp_path / "q.qt").write_text(
            "quantaloid q\nobjects *\n"
            "hom * * { elements 0 a 1 ; order 0 <= a ; order a <= 1 }\n"
            "id * = 1\n"
            "compose * * * { (0,0)=0 (0,a)=0 (0,1)=0 (a,0)=0 (a,a)=a (a,1)=a "
            "(1,0)=0 (1,a)=a (1,1)=1 }\n")
        assert load_file(tmp_path / "q.qt").value == inst.q3()

    def test_comments_and_blank_lines_are_ignored(self, tmp_path):
        text = (instances_dir() / "chain3_q2.qc").read_text()
        noisy = "# header\n\n" + text.replace("\n", "  # trailing\n", 3)
        (tmp_path / "c.qc").write_text(noisy)
        assert load_file(tmp_path / "c.qc").value == inst.chain3_q2()

    def test_header_of_reads_only_the_header(self):
        assert header_of(instances_dir() / "q2.qt") == ("quantaloid", "q2")
        broken = counterexamples_dir() / "broken_assoc.qt"
        assert header_of(broken) == ("quantaloid", "broken_assoc")


def test_registry_fallback_resolves_bundled_names(tmp_path):
    (tmp_path / "f.qf").write_text(
        "functor f\nsource chain3_q2\ntarget chain3_q2\n"
        "map bot -> bot\nmap mid -> mid\nmap top -> top\n")
    loaded = load_file(tmp_path / "f.qf")
    assert loaded.value == inst.functor_id_chain3()
