from __future__ import annotations

import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import pytest
from fastapi.testclient import TestClient

from mextree import (
    ConverterBadResponse,
    ConverterUnconfigured,
    ConverterUnreachable,
    build_tree,
    extract_parallel,
    parse_document,
)
from mextree.converter import convert_latex
from mextree.service import ServiceConfig, create_app

from conftest import fixture_bytes


class _MockConverter(BaseHTTPRequestHandler):
    """Echoes the parallel-markup fixture for the expression f(a+b)."""

    def do_POST(self):  # noqa: N802 (stdlib handler naming)
        length = int(self.headers.get("Content-Length", 0))
        latex = self.rfile.read(length).decode("utf-8")
        if self.path == "/error500":
            self.send_response(500)
            self.end_headers()
            return
        if self.path == "/empty":
            self.send_response(200)
            self.end_headers()
            return
        if latex.strip() == "f(a+b)":
            body = fixture_bytes("f_of_a_plus_b.mml")
            self.send_response(200)
            self.send_header("Content-Type", "application/mathml+xml")
            self.end_headers()
            self.wfile.write(body)
        else:
            self.send_response(422)
            self.end_headers()

    def log_message(self, *args):  # keep test output quiet
        pass


@pytest.fixture(scope="module")
def mock_server():
    server = ThreadingHTTPServer(("127.0.0.1", 0), _MockConverter)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()


def test_unconfigured_converter():
    with pytest.raises(ConverterUnconfigured):
        convert_latex("f(a+b)", ServiceConfig())


def test_pipeline_through_mock_converter(mock_server):
    config = ServiceConfig(converter_url=mock_server)
    mathml = convert_latex("f(a+b)", config)
    tree = build_tree(extract_parallel(parse_document(mathml)))
    assert len(tree.nodes()) == 4
    assert tree.infix == "f(a + b)"


def test_upstream_500_is_bad_response(mock_server):
    config = ServiceConfig(converter_url=f"{mock_server}/error500")
    with pytest.raises(ConverterBadResponse) as exc:
        convert_latex("f(a+b)", config)
    assert exc.value.status == 500


def test_empty_body_is_bad_response(mock_server):
    config = ServiceConfig(converter_url=f"{mock_server}/empty")
    with pytest.raises(ConverterBadResponse):
        convert_latex("f(a+b)", config)


def test_unreachable_converter():
    config = ServiceConfig(converter_url="http://127.0.0.1:9/unroutable")
    with pytest.raises(ConverterUnreachable):
        convert_latex("f(a+b)", config)


def test_plain_url_accepted(mock_server):
    mathml = convert_latex("f(a+b)", mock_server)
    assert "<math" in mathml


class TestConvertEndpoint:
    def test_unconfigured_yields_503(self):
        client = TestClient(create_app(ServiceConfig()))
        response = client.post("/v1/convert", json={"latex": "f(a+b)"})
        assert response.status_code == 503
        assert response.json()["error"] == "ConverterUnconfigured"

    def test_upstream_error_yields_502(self, mock_server):
        client = TestClient(
            create_app(ServiceConfig(converter_url=f"{mock_server}/error500"))
        )
        response = client.post("/v1/convert", json={"latex": "f(a+b)"})
        assert response.status_code == 502

    def test_convert_then_tree_round_trip(self, mock_server):
        client = TestClient(create_app(ServiceConfig(converter_url=mock_server)))
        converted = client.post("/v1/convert", json={"latex": "f(a+b)"})
        assert converted.status_code == 200
        tree = client.post("/v1/tree", content=converted.content)
        assert tree.status_code == 200
        assert tree.json()["infix"] == "f(a + b)"

    def test_missing_latex_key_rejected(self):
        client = TestClient(create_app(ServiceConfig()))
        response = client.post("/v1/convert", json={"nope": 1})
        assert response.status_code == 400
