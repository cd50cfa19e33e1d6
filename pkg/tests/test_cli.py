from __future__ import annotations

import json

import pytest

from mextree import parse_document
from mextree.cli import main

from conftest import FIXTURES, fixture_bytes


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_outputs_tree_json(capsys):
    code, out, err = _run(capsys, "parse", str(FIXTURES / "f_of_a_plus_b.mml"))
    assert code == 0
    assert err == ""
    payload = json.loads(out)
    assert payload["infix"] == "f(a + b)"

    def count(node):
        return 1 + sum(count(c) for c in node["children"])

    assert count(payload["root"]) == 4


def test_parse_broken_document_exits_one(tmp_path, capsys):
    broken = tmp_path / "broken.xml"
    broken.write_text("<math><mi>a</mi>")
    code, out, err = _run(capsys, "parse", str(broken))
    assert code == 1
    assert out == ""
    assert json.loads(err)["error"] == "MalformedXml"


def test_parse_svg_to_file(tmp_path, capsys):
    out_path = tmp_path / "t.svg"
    code, out, _ = _run(
        capsys, "parse", str(FIXTURES / "f_of_a_plus_b.mml"),
        "--format", "svg", "--out", str(out_path),
    )
    assert code == 0
    assert out == ""
    root = parse_document(out_path.read_bytes())
    assert root.name == "svg"


def test_parse_reads_stdin(capsys, monkeypatch):
    import io
    import sys

    data = fixture_bytes("f_content_only.mml")
    monkeypatch.setattr(
        sys, "stdin", type("S", (), {"buffer": io.BytesIO(data)})()
    )
    code, out, _ = _run(capsys, "parse")
    assert code == 0
    assert json.loads(out)["root"]["display"] == "f"


def test_compare_measure_identical(capsys):
    code, out, _ = _run(
        capsys, "compare",
        str(FIXTURES / "f_content_only.mml"),
        str(FIXTURES / "g_content_only.mml"),
        "--measure", "identical",
    )
    assert code == 0
    payload = json.loads(out)
    unified = []

    def collect(node):
        if node["origin"] == "both":
            unified.append(node)
        for child in node["children"]:
            collect(child)

    for root in payload["roots"]:
        collect(root)
    assert len(unified) == 3


def test_compare_identical_files_fully_unify(capsys):
    path = str(FIXTURES / "f_content_only.mml")
    code, out, _ = _run(capsys, "compare", path, path, "--measure", "identical")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["roots"]) == 1
    assert payload["roots"][0]["origin"] == "both"


def test_compare_spec_with_dangling_id(tmp_path, capsys):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text('[{"idA":"nope","idB":"gen:1","grade":"identical"}]')
    code, out, err = _run(
        capsys, "compare",
        str(FIXTURES / "f_content_only.mml"),
        str(FIXTURES / "g_content_only.mml"),
        "--spec", str(spec_path),
    )
    assert code == 1
    payload = json.loads(err)
    assert payload["error"] == "SpecViolation"
    assert payload["violations"][0]["kind"] == "UnknownId"


def test_compare_spec_and_measure_conflict(tmp_path, capsys):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text("[]")
    code, _, err = _run(
        capsys, "compare",
        str(FIXTURES / "f_content_only.mml"),
        str(FIXTURES / "g_content_only.mml"),
        "--spec", str(spec_path), "--measure", "identical",
    )
    assert code == 2
    assert json.loads(err)["error"] == "UsageError"


def test_compare_requires_spec_or_measure(capsys):
    code, _, err = _run(
        capsys, "compare",
        str(FIXTURES / "f_content_only.mml"),
        str(FIXTURES / "g_content_only.mml"),
    )
    assert code == 2
    assert json.loads(err)["error"] == "UsageError"


def test_compare_svg_output(tmp_path, capsys):
    out_path = tmp_path / "merged.svg"
    code, _, _ = _run(
        capsys, "compare",
        str(FIXTURES / "f_content_only.mml"),
        str(FIXTURES / "g_content_only.mml"),
        "--measure", "taxonomic", "--format", "svg", "--out", str(out_path),
    )
    assert code == 0
    assert parse_document(out_path.read_bytes()).name == "svg"


def test_missing_file_reports_structured_error(capsys):
    code, _, err = _run(capsys, "parse", "/nonexistent/file.mml")
    assert code == 1
    assert json.loads(err)["error"] == "FileNotFound"


def test_spec_file_with_valid_pairs(tmp_path, capsys):
    from mextree import identical_pairs, spec_to_json

    from conftest import tree_from_fixture

    f = tree_from_fixture("f_content_only.mml")
    g = tree_from_fixture("g_content_only.mml")
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(spec_to_json(identical_pairs(f, g)))
    code, out, _ = _run(
        capsys, "compare",
        str(FIXTURES / "f_content_only.mml"),
        str(FIXTURES / "g_content_only.mml"),
        "--spec", str(spec_path),
    )
    assert code == 0
    assert json.loads(out)["roots"]


@pytest.mark.parametrize("fmt", ["json", "svg"])
def test_stdout_matches_file_output(tmp_path, capsys, fmt):
    out_path = tmp_path / f"out.{fmt}"
    _run(
        capsys, "parse", str(FIXTURES / "f_of_a_plus_b.mml"),
        "--format", fmt, "--out", str(out_path),
    )
    code, out, _ = _run(
        capsys, "parse", str(FIXTURES / "f_of_a_plus_b.mml"), "--format", fmt
    )
    assert code == 0
    assert out.encode("utf-8") == out_path.read_bytes()
