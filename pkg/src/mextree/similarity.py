"""Similarity measures and externally supplied similarity specs.

Two desk-scale measures are provided: maximal identical subtree detection
and a taxonomic predicate over content dictionaries (same symbol →
identical, same dictionary → similar, different dictionaries → no pair).
Specs can also be authored externally as JSON and validated here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Literal

from .errors import InvalidSpecJson, UnmappedPragmaticElement
from .tree import ExprNode, ExpressionTree, StrictSymbol

Grade = Literal["similar", "identical"]

# Pragmatic operator elements covered by the shipped dictionary mapping.
# Anything outside this subset raises rather than guessing a dictionary.
_PRAGMATIC_CDS = {
    "plus": "arith1",
    "minus": "arith1",
    "times": "arith1",
    "divide": "arith1",
    "power": "arith1",
    "root": "arith1",
    "sum": "arith1",
    "sin": "transc1",
    "cos": "transc1",
    "tan": "transc1",
    "log": "transc1",
    "ln": "transc1",
    "exp": "transc1",
    "eq": "relation1",
    "neq": "relation1",
    "lt": "relation1",
    "gt": "relation1",
    "leq": "relation1",
    "geq": "relation1",
    "int": "calculus1",
    "diff": "calculus1",
}


@dataclass(frozen=True)
class CdMappingTable:
    """Pragmatic element name → strict symbol, total on the shipped subset."""

    mapping: dict[str, StrictSymbol]

    def resolve(self, name: str) -> StrictSymbol:
        symbol = self.mapping.get(name)
        if symbol is None:
            raise UnmappedPragmaticElement(name)
        return symbol


def default_cd_table() -> CdMappingTable:
    return CdMappingTable(
        {name: StrictSymbol(cd, name) for name, cd in _PRAGMATIC_CDS.items()}
    )


def to_strict(node: ExprNode, table: CdMappingTable) -> StrictSymbol:
    """Strict symbol of a node; idempotent on already-strict symbols."""
    symbol = node.symbol
    if symbol is None:
        raise UnmappedPragmaticElement(node.kind)
    if symbol.cd is not None:
        return symbol
    return table.resolve(symbol.name)


def _structural_symbol(node: ExprNode, table: CdMappingTable) -> StrictSymbol:
    """Best-effort strict symbol, total over all node kinds."""
    try:
        return to_strict(node, table)
    except UnmappedPragmaticElement:
        if node.symbol is not None:
            return node.symbol
        return StrictSymbol(None, f"{node.kind}:{node.display}")


@dataclass(frozen=True)
class SimilarityPair:
    id_a: str
    id_b: str
    grade: Grade


@dataclass(frozen=True)
class SimilaritySpec:
    pairs: tuple[SimilarityPair, ...] = ()

    def swapped(self) -> "SimilaritySpec":
        return SimilaritySpec(
            tuple(SimilarityPair(p.id_b, p.id_a, p.grade) for p in self.pairs)
        )


def spec_to_json(spec: SimilaritySpec) -> str:
    return json.dumps(
        [{"idA": p.id_a, "idB": p.id_b, "grade": p.grade} for p in spec.pairs],
        ensure_ascii=False,
        separators=(",", ":"),
    )


def spec_from_json(text: str | bytes | Any) -> SimilaritySpec:
    """Parse the JSON exchange form ``[{"idA", "idB", "grade"}, ...]``."""
    if isinstance(text, (str, bytes)):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidSpecJson(f"spec is not valid JSON: {exc}") from exc
    else:
        data = text
    if not isinstance(data, list):
        raise InvalidSpecJson("spec must be a JSON array of pair objects")
    pairs = []
    for i, item in enumerate(data):
        if not isinstance(item, dict):
            raise InvalidSpecJson(f"pair {i} is not an object")
        try:
            id_a, id_b, grade = item["idA"], item["idB"], item["grade"]
        except KeyError as exc:
            raise InvalidSpecJson(f"pair {i} is missing key {exc}") from exc
        if grade not in ("similar", "identical"):
            raise InvalidSpecJson(f"pair {i} has unknown grade {grade!r}")
        if not isinstance(id_a, str) or not isinstance(id_b, str):
            raise InvalidSpecJson(f"pair {i} ids must be strings")
        pairs.append(SimilarityPair(id_a, id_b, grade))
    return SimilaritySpec(tuple(pairs))


def _structure_keys(
    tree: ExpressionTree, table: CdMappingTable
) -> dict[str, tuple]:
    """Canonical structural key per node id (symbol, role, child keys)."""
    keys: dict[str, tuple] = {}

    def key_of(node: ExprNode) -> tuple:
        symbol = _structural_symbol(node, table)
        k = (
            symbol.cd,
            symbol.name,
            node.qualifier_role,
            tuple(key_of(c) for c in node.children),
        )
        keys[node.node_id] = k
        return k

    key_of(tree.root)
    return keys


def identical_pairs(
    tree_a: ExpressionTree,
    tree_b: ExpressionTree,
    table: CdMappingTable | None = None,
) -> SimilaritySpec:
    """Maximal pairs of structurally identical subtrees across two trees.

    A pair (a, b) is emitted when the subtrees are structurally equal and
    the parent pair (where both parents exist) is not.
    """
    table = table or default_cd_table()
    keys_a = _structure_keys(tree_a, table)
    keys_b = _structure_keys(tree_b, table)
    parents_a = tree_a.parent_map()
    parents_b = tree_b.parent_map()

    pairs = []
    for a in tree_a.root.walk():
        for b in tree_b.root.walk():
            if keys_a[a.node_id] != keys_b[b.node_id]:
                continue
            pa = parents_a.get(a.node_id)
            pb = parents_b.get(b.node_id)
            if pa is not None and pb is not None and keys_a[pa] == keys_b[pb]:
                continue
            pairs.append(SimilarityPair(a.node_id, b.node_id, "identical"))
    return SimilaritySpec(tuple(pairs))


def taxonomic_pairs(
    tree_a: ExpressionTree,
    tree_b: ExpressionTree,
    table: CdMappingTable | None = None,
) -> SimilaritySpec:
    """Dictionary-based predicate over the function heads of two trees.

    Every cross pair of heads is graded: identical when the strict symbols
    match, similar when only the dictionaries match, omitted otherwise.
    """
    table = table or default_cd_table()
    heads_a = [n for n in tree_a.root.walk() if n.kind == "function_head"]
    heads_b = [n for n in tree_b.root.walk() if n.kind == "function_head"]
    pairs = []
    for a in heads_a:
        sym_a = to_strict(a, table)
        for b in heads_b:
            sym_b = to_strict(b, table)
            if sym_a == sym_b:
                pairs.append(SimilarityPair(a.node_id, b.node_id, "identical"))
            elif sym_a.cd == sym_b.cd:
                pairs.append(SimilarityPair(a.node_id, b.node_id, "similar"))
    return SimilaritySpec(tuple(pairs))


@dataclass(frozen=True)
class SpecProblem:
    kind: str  # UnknownId | ConflictingGrades | StructuralMismatch
    severity: str  # "error" | "warning"
    message: str
    side: str | None = None
    id_a: str | None = None
    id_b: str | None = None

    def payload(self) -> dict[str, Any]:
        body: dict[str, Any] = {
            "kind": self.kind,
            "severity": self.severity,
            "message": self.message,
        }
        if self.side is not None:
            body["side"] = self.side
        if self.id_a is not None:
            body["idA"] = self.id_a
        if self.id_b is not None:
            body["idB"] = self.id_b
        return body


def validate_spec(
    spec: SimilaritySpec,
    tree_a: ExpressionTree,
    tree_b: ExpressionTree,
    table: CdMappingTable | None = None,
) -> list[SpecProblem]:
    """Check a spec against two trees; violations come back as data.

    Unknown ids and conflicting grades are errors; identical-grade pairs
    over subtrees that are not structurally equal are downgrade warnings
    (the widget must still render author-supplied specs).
    """
    table = table or default_cd_table()
    ids_a = set(tree_a.node_map())
    ids_b = set(tree_b.node_map())
    problems: list[SpecProblem] = []

    for pair in spec.pairs:
        if pair.id_a not in ids_a:
            problems.append(SpecProblem(
                kind="UnknownId",
                severity="error",
                message=f"id {pair.id_a!r} does not exist in tree A",
                side="A",
                id_a=pair.id_a,
            ))
        if pair.id_b not in ids_b:
            problems.append(SpecProblem(
                kind="UnknownId",
                severity="error",
                message=f"id {pair.id_b!r} does not exist in tree B",
                side="B",
                id_b=pair.id_b,
            ))

    grades: dict[tuple[str, str], set[str]] = {}
    for pair in spec.pairs:
        grades.setdefault((pair.id_a, pair.id_b), set()).add(pair.grade)
    for (id_a, id_b), seen in grades.items():
        if len(seen) > 1:
            problems.append(SpecProblem(
                kind="ConflictingGrades",
                severity="error",
                message=f"pair ({id_a!r}, {id_b!r}) appears with conflicting grades",
                id_a=id_a,
                id_b=id_b,
            ))

    keys_a = _structure_keys(tree_a, table)
    keys_b = _structure_keys(tree_b, table)
    for pair in spec.pairs:
        if pair.grade != "identical":
            continue
        if pair.id_a not in ids_a or pair.id_b not in ids_b:
            continue
        if keys_a[pair.id_a] != keys_b[pair.id_b]:
            problems.append(SpecProblem(
                kind="StructuralMismatch",
                severity="warning",
                message=(
                    f"identical pair ({pair.id_a!r}, {pair.id_b!r}) references "
                    "subtrees that are not structurally equal"
                ),
                id_a=pair.id_a,
                id_b=pair.id_b,
            ))
    return problems


def hard_violations(problems: Iterable[SpecProblem]) -> list[SpecProblem]:
    return [p for p in problems if p.severity == "error"]
