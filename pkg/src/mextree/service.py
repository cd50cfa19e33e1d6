"""HTTP service exposing parsing, comparison, and rendering.

Endpoints return the exact canonical bytes the library produces, so the
service and the CLI emit byte-identical documents for identical inputs.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Any, Mapping

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .converter import convert_latex
from .errors import (
    ConverterBadResponse,
    ConverterUnconfigured,
    ConverterUnreachable,
    MextreeError,
)
from .layout import RenderOptions, layout
from .mathml import extract_parallel
from .merge import collapse_unmarked, merge
from .similarity import (
    SimilaritySpec,
    identical_pairs,
    spec_from_json,
    taxonomic_pairs,
)
from .svg import to_svg
from .tree import ExpressionTree, build_tree
from .viewmodel import canonical_json, expression_payload, merged_payload
from .xmlparse import parse_document

DEFAULT_PORT = 8357
DEFAULT_BODY_LIMIT = 1024 * 1024  # expressions are small; bound parser abuse

SVG_MEDIA_TYPE = "image/svg+xml"
JSON_MEDIA_TYPE = "application/json"


@dataclass
class ServiceConfig:
    port: int = DEFAULT_PORT
    converter_url: str | None = None
    render: RenderOptions = field(default_factory=RenderOptions)
    body_limit: int = DEFAULT_BODY_LIMIT

    def __post_init__(self) -> None:
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port {self.port} out of range [1, 65535]")
        if self.body_limit <= 0:
            raise ValueError("body_limit must be positive")


def load_config(env: Mapping[str, str] | None = None) -> ServiceConfig:
    env = os.environ if env is None else env
    port = int(env.get("MEXTREE_PORT", DEFAULT_PORT))
    converter_url = env.get("MEXTREE_CONVERTER_URL") or None
    return ServiceConfig(port=port, converter_url=converter_url)


def build_expression(mathml: str | bytes) -> ExpressionTree:
    """Full pipeline from MathML text to an expression tree."""
    return build_tree(extract_parallel(parse_document(mathml)))


def compare_payload(
    mathml_a: str | bytes,
    mathml_b: str | bytes,
    spec: SimilaritySpec | None = None,
    measure: str | None = None,
) -> dict[str, Any]:
    """Parse, grade, merge, and collapse two expressions.

    Exactly one of ``spec`` (externally authored pairs) and ``measure``
    ("identical" or "taxonomic") must be given.
    """
    if (spec is None) == (measure is None):
        raise ValueError("exactly one of spec and measure is required")
    tree_a = build_expression(mathml_a)
    tree_b = build_expression(mathml_b)
    if measure is not None:
        if measure == "identical":
            spec = identical_pairs(tree_a, tree_b)
        elif measure == "taxonomic":
            spec = taxonomic_pairs(tree_a, tree_b)
        else:
            raise ValueError(f"unknown measure {measure!r}")
    assert spec is not None
    merged = collapse_unmarked(merge(tree_a, tree_b, spec))
    return {
        "treeA": expression_payload(tree_a),
        "treeB": expression_payload(tree_b),
        "merged": merged_payload(merged),
        "spec": [
            {"idA": p.id_a, "idB": p.id_b, "grade": p.grade} for p in spec.pairs
        ],
    }


def _error_response(exc: MextreeError, status: int = 400) -> JSONResponse:
    return JSONResponse(status_code=status, content=exc.payload())


def _bad_request(message: str) -> JSONResponse:
    return JSONResponse(
        status_code=400, content={"error": "BadRequest", "message": message}
    )


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or load_config()
    app = FastAPI(title="mextree", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    async def read_body(request: Request) -> bytes | JSONResponse:
        body = await request.body()
        if len(body) > config.body_limit:
            return JSONResponse(
                status_code=413,
                content={
                    "error": "PayloadTooLarge",
                    "message": f"request body exceeds {config.body_limit} bytes",
                },
            )
        return body

    @app.get("/v1/health")
    async def health() -> dict[str, str]:
        return {"status": "ok"}

    @app.post("/v1/tree")
    async def tree_json(request: Request) -> Response:
        body = await read_body(request)
        if isinstance(body, JSONResponse):
            return body
        try:
            tree = build_expression(body)
        except MextreeError as exc:
            return _error_response(exc)
        return Response(
            content=canonical_json(expression_payload(tree)).encode("utf-8"),
            media_type=JSON_MEDIA_TYPE,
        )

    @app.post("/v1/tree/svg")
    async def tree_svg(request: Request) -> Response:
        body = await read_body(request)
        if isinstance(body, JSONResponse):
            return body
        try:
            tree = build_expression(body)
        except MextreeError as exc:
            return _error_response(exc)
        document = to_svg(layout(tree, config.render), config.render)
        return Response(
            content=document.text.encode("utf-8"), media_type=SVG_MEDIA_TYPE
        )

    @app.post("/v1/compare")
    async def compare(request: Request) -> Response:
        body = await read_body(request)
        if isinstance(body, JSONResponse):
            return body
        try:
            payload = json.loads(body)
        except ValueError:
            return _bad_request("request body is not valid JSON")
        if not isinstance(payload, dict):
            return _bad_request("request body must be a JSON object")
        mathml_a = payload.get("mathmlA")
        mathml_b = payload.get("mathmlB")
        if not isinstance(mathml_a, str) or not isinstance(mathml_b, str):
            return _bad_request("mathmlA and mathmlB are required strings")
        raw_spec = payload.get("spec")
        measure = payload.get("measure")
        if (raw_spec is None) == (measure is None):
            return _bad_request("provide exactly one of spec and measure")
        if measure is not None and measure not in ("identical", "taxonomic"):
            return _bad_request(f"unknown measure {measure!r}")
        try:
            spec = spec_from_json(raw_spec) if raw_spec is not None else None
            result = compare_payload(mathml_a, mathml_b, spec=spec, measure=measure)
        except MextreeError as exc:
            return _error_response(exc)
        return Response(
            content=canonical_json(result).encode("utf-8"),
            media_type=JSON_MEDIA_TYPE,
        )

    @app.post("/v1/convert")
    async def convert(request: Request) -> Response:
        body = await read_body(request)
        if isinstance(body, JSONResponse):
            return body
        try:
            payload = json.loads(body)
            latex = payload["latex"]
            if not isinstance(latex, str):
                raise KeyError("latex")
        except (ValueError, KeyError, TypeError):
            return _bad_request('request body must be {"latex": "..."}')
        try:
            mathml = convert_latex(latex, config)
        except ConverterUnconfigured as exc:
            return _error_response(exc, status=503)
        except (ConverterUnreachable, ConverterBadResponse) as exc:
            return _error_response(exc, status=502)
        return Response(
            content=mathml.encode("utf-8"), media_type="application/mathml+xml"
        )

    return app
