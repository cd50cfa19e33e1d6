"""Canonical tree JSON consumed by the widgets and the HTTP API.

One schema covers both single expression trees and merged comparison
trees; key order is fixed and optional keys are omitted when they hold
their default, so serialization is byte-stable.  The schema is documented
in ``schemas/tree-view-model.schema.json`` at the repository root.
"""

from __future__ import annotations

import json
from typing import Any

from .merge import MergedNode, MergedTree
from .tree import ExprNode, ExpressionTree, infix_overview


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":"))


def _expr_node_payload(node: ExprNode) -> dict[str, Any]:
    body: dict[str, Any] = {
        "id": node.node_id,
        "kind": node.kind,
        "display": node.display,
    }
    if node.glyph is not None:
        body["glyph"] = node.glyph
    if node.ambiguous:
        body["ambiguous"] = True
    if node.qualifier_role is not None:
        body["qualifierRole"] = node.qualifier_role
    body["children"] = [_expr_node_payload(c) for c in node.children]
    return body


def _merged_node_payload(node: MergedNode) -> dict[str, Any]:
    body: dict[str, Any] = {
        "id": node.key,
        "kind": node.kind,
        "display": node.display,
    }
    if node.glyph is not None:
        body["glyph"] = node.glyph
    body["origin"] = node.origin
    if node.grade is not None:
        body["grade"] = node.grade
    if node.collapsed:
        body["collapsed"] = True
    if node.hidden_count:
        body["hiddenCount"] = node.hidden_count
    body["sourceIds"] = list(node.source_ids)
    if node.ref is not None:
        body["ref"] = node.ref
    body["children"] = [_merged_node_payload(c) for c in node.children]
    return body


def expression_payload(tree: ExpressionTree) -> dict[str, Any]:
    return {
        "root": _expr_node_payload(tree.root),
        "infix": tree.infix,
        "spans": {nid: [s, e] for nid, (s, e) in tree.span_map.items()},
    }


def merged_payload(tree: MergedTree) -> dict[str, Any]:
    return {"roots": [_merged_node_payload(r) for r in tree.roots]}


def to_view_model(tree: ExpressionTree | MergedTree) -> str:
    """Serialize a tree to its canonical JSON text."""
    if isinstance(tree, ExpressionTree):
        return canonical_json(expression_payload(tree))
    return canonical_json(merged_payload(tree))


def _expr_node_from(payload: dict[str, Any]) -> ExprNode:
    return ExprNode(
        node_id=payload["id"],
        kind=payload["kind"],
        display=payload["display"],
        glyph=payload.get("glyph"),
        ambiguous=payload.get("ambiguous", False),
        qualifier_role=payload.get("qualifierRole"),
        children=tuple(_expr_node_from(c) for c in payload.get("children", [])),
    )


def _merged_node_from(payload: dict[str, Any]) -> MergedNode:
    return MergedNode(
        origin=payload["origin"],
        source_ids=tuple(payload.get("sourceIds", [])),
        kind=payload["kind"],
        display=payload["display"],
        glyph=payload.get("glyph"),
        grade=payload.get("grade"),
        collapsed=payload.get("collapsed", False),
        hidden_count=payload.get("hiddenCount", 0),
        ref=payload.get("ref"),
        children=tuple(_merged_node_from(c) for c in payload.get("children", [])),
    )


def from_view_model(text: str | bytes) -> ExpressionTree | MergedTree:
    """Rebuild a tree from its canonical JSON (without source provenance)."""
    payload = json.loads(text)
    if "roots" in payload:
        return MergedTree(
            roots=tuple(_merged_node_from(r) for r in payload["roots"])
        )
    root = _expr_node_from(payload["root"])
    if "infix" in payload and "spans" in payload:
        infix = payload["infix"]
        spans = {nid: (s, e) for nid, (s, e) in payload["spans"].items()}
    else:
        infix, spans = infix_overview(root)
    return ExpressionTree(root=root, infix=infix, span_map=spans)
