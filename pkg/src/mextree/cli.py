"""Command-line front end.

Exit codes: 0 success, 1 input/processing errors, 2 usage errors.  All
errors are reported as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import MextreeError
from .layout import RenderOptions, layout
from .merge import collapse_unmarked, merge
from .service import build_expression, compare_payload
from .similarity import spec_from_json
from .svg import to_svg
from .viewmodel import (
    canonical_json,
    expression_payload,
    from_view_model,
    merged_payload,
)


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_bytes(text.encode("utf-8"))


def _fail(payload: dict, code: int) -> int:
    sys.stderr.write(json.dumps(payload, ensure_ascii=False) + "\n")
    return code


def _render_options(args: argparse.Namespace) -> RenderOptions:
    return RenderOptions(caret_style=args.caret) if args.caret else RenderOptions()


def _cmd_parse(args: argparse.Namespace) -> int:
    data = _read_input(args.file)
    tree = build_expression(data)
    if args.format == "json":
        _emit(canonical_json(expression_payload(tree)), args.out)
    else:
        opts = _render_options(args)
        _emit(to_svg(layout(tree, opts), opts).text, args.out)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    if (args.spec is None) == (args.measure is None):
        return _fail(
            {
                "error": "UsageError",
                "message": "provide exactly one of --spec and --measure",
            },
            2,
        )
    data_a = _read_input(args.file_a)
    data_b = _read_input(args.file_b)
    if args.spec is not None:
        spec = spec_from_json(Path(args.spec).read_bytes())
        tree_a = build_expression(data_a)
        tree_b = build_expression(data_b)
        merged = collapse_unmarked(merge(tree_a, tree_b, spec))
        merged_doc = merged_payload(merged)
    else:
        result = compare_payload(data_a, data_b, measure=args.measure)
        merged_doc = result["merged"]
    if args.format == "json":
        _emit(canonical_json(merged_doc), args.out)
    else:
        opts = _render_options(args)
        merged_tree = from_view_model(canonical_json(merged_doc))
        _emit(to_svg(layout(merged_tree, opts), opts).text, args.out)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app, load_config

    config = load_config()
    if args.port is not None:
        config.port = args.port
    uvicorn.run(create_app(config), host=args.host, port=config.port)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mextree",
        description=(
            "Parse parallel MathML into apply-free expression trees, "
            "compare two expressions, and render SVG or tree JSON."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_parse = sub.add_parser("parse", help="parse one MathML document")
    p_parse.add_argument("file", nargs="?", default="-", help="input file or - for stdin")
    p_parse.add_argument("--format", choices=("json", "svg"), default="json")
    p_parse.add_argument("--out", default=None, help="output path (default stdout)")
    p_parse.add_argument("--caret", choices=("^", "∧"), default=None)
    p_parse.set_defaults(handler=_cmd_parse)

    p_cmp = sub.add_parser("compare", help="compare two MathML documents")
    p_cmp.add_argument("file_a")
    p_cmp.add_argument("file_b")
    p_cmp.add_argument("--spec", default=None, help="similarity spec JSON file")
    p_cmp.add_argument(
        "--measure", choices=("identical", "taxonomic"), default=None
    )
    p_cmp.add_argument("--format", choices=("json", "svg"), default="json")
    p_cmp.add_argument("--out", default=None)
    p_cmp.add_argument("--caret", choices=("^", "∧"), default=None)
    p_cmp.set_defaults(handler=_cmd_compare)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.set_defaults(handler=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except MextreeError as exc:
        return _fail(exc.payload(), 1)
    except FileNotFoundError as exc:
        return _fail({"error": "FileNotFound", "message": str(exc)}, 1)
    except ValueError as exc:
        return _fail({"error": "UsageError", "message": str(exc)}, 2)


def run() -> None:
    sys.exit(main())
