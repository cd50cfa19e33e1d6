"""Combined tree of two expressions under a similarity spec.

Identical-grade subtree pairs are unified into single shared subtrees,
similar-grade pairs keep both nodes highlighted, and everything else keeps
an origin tag.  ``collapse_unmarked`` then folds every maximal subtree
without graded content into a counting placeholder.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import SpecViolationError
from .similarity import (
    CdMappingTable,
    SimilaritySpec,
    default_cd_table,
    hard_violations,
    validate_spec,
)
from .tree import ExprNode, ExpressionTree

ORIGIN_A = "A"
ORIGIN_B = "B"
ORIGIN_BOTH = "both"


@dataclass(frozen=True)
class MergedNode:
    origin: str  # "A" | "B" | "both"
    source_ids: tuple[str, ...]  # (a_id,), (b_id,) or (a_id, b_id)
    kind: str
    display: str
    glyph: str | None = None
    grade: str | None = None  # None | "similar" | "identical"
    collapsed: bool = False
    hidden_count: int = 0
    ref: str | None = None  # reference stubs point at a unified node's key
    children: tuple["MergedNode", ...] = ()

    @property
    def key(self) -> str:
        """Side-prefixed id, unique even when both inputs share raw ids."""
        side = "b" if self.origin == ORIGIN_B else "a"
        return f"{side}:{self.source_ids[0]}"

    @property
    def is_stub(self) -> bool:
        return self.ref is not None

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class MergedTree:
    roots: tuple[MergedNode, ...]
    provenance: tuple[ExpressionTree, ExpressionTree, SimilaritySpec] | None = field(
        default=None, compare=False
    )

    def walk(self):
        for root in self.roots:
            yield from root.walk()


def rendered_count(tree: MergedTree) -> int:
    """Nodes shown as boxes: placeholders and reference stubs excluded."""
    return sum(1 for n in tree.walk() if not n.collapsed and not n.is_stub)


def hidden_total(tree: MergedTree) -> int:
    return sum(n.hidden_count for n in tree.walk())


def merge(
    tree_a: ExpressionTree,
    tree_b: ExpressionTree,
    spec: SimilaritySpec,
    table: CdMappingTable | None = None,
) -> MergedTree:
    """Build the combined tree; raises when the spec has hard violations.

    Unified subtrees attach at the A-side position; the B-side parent keeps
    a lightweight reference stub so the result stays a tree.  Identical
    pairs that cannot be unified (structural mismatch, overlap with an
    already unified subtree) are downgraded to similar highlighting.
    """
    table = table or default_cd_table()
    problems = validate_spec(spec, tree_a, tree_b, table)
    hard = hard_violations(problems)
    if hard:
        raise SpecViolationError(hard)
    mismatched = {
        (p.id_a, p.id_b)
        for p in problems
        if p.kind == "StructuralMismatch"
    }

    nodes_a = tree_a.node_map()
    nodes_b = tree_b.node_map()
    subtree_a = {nid: _subtree_ids(n) for nid, n in nodes_a.items()}
    subtree_b = {nid: _subtree_ids(n) for nid, n in nodes_b.items()}

    candidates = [
        p
        for p in spec.pairs
        if p.grade == "identical" and (p.id_a, p.id_b) not in mismatched
    ]
    # Outermost pair wins: larger subtrees unify first, later overlapping
    # pairs are either absorbed (nested inside a unified pair) or downgraded.
    candidates.sort(key=lambda p: -len(subtree_a[p.id_a]))
    used_a: set[str] = set()
    used_b: set[str] = set()
    unified: dict[str, str] = {}  # a-side root id -> b-side root id
    downgraded: list[tuple[str, str]] = []
    for pair in candidates:
        ids_a = subtree_a[pair.id_a]
        ids_b = subtree_b[pair.id_b]
        if ids_a & used_a or ids_b & used_b:
            if not (pair.id_a in used_a and pair.id_b in used_b):
                downgraded.append((pair.id_a, pair.id_b))
            continue
        used_a.update(ids_a)
        used_b.update(ids_b)
        unified[pair.id_a] = pair.id_b

    for pair in spec.pairs:
        if pair.grade == "identical" and (pair.id_a, pair.id_b) in mismatched:
            downgraded.append((pair.id_a, pair.id_b))

    similar_a: set[str] = set()
    similar_b: set[str] = set()
    for pair in spec.pairs:
        if pair.grade == "similar":
            similar_a.add(pair.id_a)
            similar_b.add(pair.id_b)
    for id_a, id_b in downgraded:
        similar_a.add(id_a)
        similar_b.add(id_b)

    def build_unified(a: ExprNode, b: ExprNode) -> MergedNode:
        return MergedNode(
            origin=ORIGIN_BOTH,
            source_ids=(a.node_id, b.node_id),
            kind=a.kind,
            display=a.display,
            glyph=a.glyph,
            grade="identical",
            children=tuple(
                build_unified(ca, cb) for ca, cb in zip(a.children, b.children)
            ),
        )

    def build_a(node: ExprNode) -> MergedNode:
        partner = unified.get(node.node_id)
        if partner is not None:
            return build_unified(node, nodes_b[partner])
        return MergedNode(
            origin=ORIGIN_A,
            source_ids=(node.node_id,),
            kind=node.kind,
            display=node.display,
            glyph=node.glyph,
            grade="similar" if node.node_id in similar_a else None,
            children=tuple(build_a(c) for c in node.children),
        )

    stub_targets = {id_b: id_a for id_a, id_b in unified.items()}

    def build_b(node: ExprNode) -> MergedNode:
        target = stub_targets.get(node.node_id)
        if target is not None:
            return MergedNode(
                origin=ORIGIN_B,
                source_ids=(node.node_id,),
                kind="ref",
                display="→",
                ref=f"a:{target}",
            )
        return MergedNode(
            origin=ORIGIN_B,
            source_ids=(node.node_id,),
            kind=node.kind,
            display=node.display,
            glyph=node.glyph,
            grade="similar" if node.node_id in similar_b else None,
            children=tuple(build_b(c) for c in node.children),
        )

    roots: list[MergedNode] = [build_a(tree_a.root)]
    if tree_b.root.node_id not in stub_targets:
        roots.append(build_b(tree_b.root))
    return MergedTree(roots=tuple(roots), provenance=(tree_a, tree_b, spec))


def _subtree_ids(node: ExprNode) -> frozenset[str]:
    return frozenset(n.node_id for n in node.walk())


def collapse_unmarked(tree: MergedTree) -> MergedTree:
    """Collapse every maximal subtree without graded content.

    Graded nodes, reference stubs, and all their ancestors stay visible;
    each collapsed placeholder records how many source nodes it hides.
    """

    def is_protected(node: MergedNode) -> bool:
        return node.grade is not None or node.is_stub

    def subtree_protected(node: MergedNode) -> bool:
        return any(is_protected(n) for n in node.walk())

    def source_count(node: MergedNode) -> int:
        return sum(1 for n in node.walk() if not n.is_stub)

    def placeholder(node: MergedNode) -> MergedNode:
        hidden = source_count(node)
        return MergedNode(
            origin=node.origin,
            source_ids=node.source_ids,
            kind="collapsed",
            display=f"… ({hidden})",
            collapsed=True,
            hidden_count=hidden,
        )

    def fold(node: MergedNode) -> MergedNode:
        if not subtree_protected(node):
            return placeholder(node)
        return replace(node, children=tuple(fold(c) for c in node.children))

    return MergedTree(
        roots=tuple(fold(root) for root in tree.roots),
        provenance=tree.provenance,
    )
