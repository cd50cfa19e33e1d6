from __future__ import annotations

import pytest

from mextree import NoContentMarkup, extract_parallel, parse_document
from mextree.mathml import walk_elements

from conftest import fixture_bytes, random_cmml_document


def _extract(name: str):
    return extract_parallel(parse_document(fixture_bytes(name)))


def test_listing_roots():
    expr = _extract("f_of_a_plus_b.mml")
    assert expr.pmml_root is not None
    assert expr.pmml_root.name == "mrow"
    assert expr.pmml_root.attributes["id"] == "r1"
    assert expr.cmml_root.name == "apply"
    assert expr.cmml_root.attributes["xref"] == "r1"


def test_listing_xref_index():
    expr = _extract("f_of_a_plus_b.mml")
    # Five content elements resolve; the ci pointing at "b" dangles.
    assert expr.xref_c2p == {
        "gen:11": "r1",
        "gen:13": "r2",
        "gen:14": "o2",
        "gen:15": "i2",
        "gen:16": "i3",
    }
    assert expr.unresolved == {"gen:12"}
    dangling = expr.id_table["gen:12"]
    assert dangling.name == "ci"
    assert dangling.attributes["xref"] == "b"


def test_xref_accounting_invariant():
    expr = _extract("f_of_a_plus_b.mml")
    with_xref = [
        el for el in walk_elements(expr.cmml_root) if "xref" in el.attributes
    ]
    assert len(expr.xref_c2p) + len(expr.unresolved) == len(with_xref)


def test_presentation_to_content_links():
    expr = _extract("f_of_a_plus_b.mml")
    assert expr.xref_p2c == {}  # the listing's presentation side carries no xrefs


def test_content_only_document():
    expr = extract_parallel(
        parse_document("<math><apply><plus/><ci>a</ci><ci>b</ci></apply></math>")
    )
    assert expr.pmml_root is None
    assert expr.unresolved == frozenset()
    assert expr.cmml_root.name == "apply"


def test_edited_xref_becomes_unresolved():
    text = fixture_bytes("f_of_a_plus_b.mml").decode()
    mutated = text.replace('xref="o2"', 'xref="zzz"')
    expr = extract_parallel(parse_document(mutated))
    plus = next(
        el for el in walk_elements(expr.cmml_root) if el.name == "plus"
    )
    assert plus.attributes["id"] in expr.unresolved
    assert "zzz" not in expr.id_table


def test_xref_into_content_tree_is_unresolved():
    # A content element pointing at another content element never resolves.
    text = (
        "<math><semantics><mrow id='m1'><mi id='m2'>x</mi></mrow>"
        "<annotation-xml encoding='MathML-Content'>"
        "<apply xref='m1'><sin xref='c9'/><ci id='c9' xref='m2'>x</ci></apply>"
        "</annotation-xml></semantics></math>"
    )
    expr = extract_parallel(parse_document(text))
    sin = next(el for el in walk_elements(expr.cmml_root) if el.name == "sin")
    assert sin.attributes["id"] in expr.unresolved


def test_content_primary_orientation():
    expr = _extract("content_primary.mml")
    assert expr.cmml_root.name == "apply"
    assert expr.pmml_root is not None
    assert expr.pmml_root.name == "mrow"
    root_id = expr.cmml_root.attributes["id"]
    assert expr.xref_c2p[root_id] == "q1"
    assert expr.unresolved == frozenset()


def test_presentation_only_document_is_rejected():
    with pytest.raises(NoContentMarkup):
        extract_parallel(parse_document("<math><mrow><mi>x</mi></mrow></math>"))


def test_empty_math_is_rejected():
    with pytest.raises(NoContentMarkup):
        extract_parallel(parse_document("<math/>"))


def test_non_math_root_is_rejected():
    with pytest.raises(NoContentMarkup):
        extract_parallel(parse_document("<mrow><mi>x</mi></mrow>"))


def test_multiple_content_annotations_warn_and_first_wins():
    text = (
        "<math><semantics><mrow id='m1'><mi id='m2'>x</mi></mrow>"
        "<annotation-xml encoding='MathML-Content'><ci id='first'>x</ci></annotation-xml>"
        "<annotation-xml encoding='MathML-Content'><ci id='second'>y</ci></annotation-xml>"
        "</semantics></math>"
    )
    expr = extract_parallel(parse_document(text))
    assert expr.cmml_root.attributes["id"] == "first"
    assert any(w.startswith("NestedSemantics") for w in expr.warnings)


def test_synthesized_ids_are_deterministic():
    data = fixture_bytes("f_of_a_plus_b.mml")
    first = extract_parallel(parse_document(data))
    second = extract_parallel(parse_document(data))
    assert list(first.id_table) == list(second.id_table)


def test_synthesized_ids_never_collide_with_authored():
    text = "<math><apply><plus/><ci id='gen:2'>a</ci><ci>b</ci></apply></math>"
    expr = extract_parallel(parse_document(text))
    ids = list(expr.id_table)
    assert len(ids) == len(set(ids))
    assert "gen:2" in expr.id_table
    assert expr.id_table["gen:2"].text_content() == "a"


def test_duplicate_authored_ids_are_reassigned():
    text = "<math><apply><plus/><ci id='dup'>a</ci><ci id='dup'>b</ci></apply></math>"
    expr = extract_parallel(parse_document(text))
    ids = [el.attributes["id"] for el in walk_elements(expr.cmml_root)]
    assert len(ids) == len(set(ids))
    assert any(w.startswith("DuplicateId") for w in expr.warnings)


def test_every_element_has_an_id(rng):
    for _ in range(50):
        document = random_cmml_document(rng)
        expr = extract_parallel(parse_document(document))
        for el in walk_elements(expr.cmml_root):
            assert el.attributes["id"] in expr.id_table
