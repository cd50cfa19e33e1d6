"""Tidy layered layout for expression and merged trees.

Leaves are placed left to right in traversal order, every parent is
centered over the midpoint of its first and last child, and whole subtrees
shift right when the centered position would violate the horizontal gap.
Two-root merged trees are laid out side by side.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .merge import MergedNode, MergedTree
from .tree import ExprNode, ExpressionTree

CHAR_WIDTH = 8.0
BOX_PADDING = 16.0
BOX_HEIGHT = 28.0
MIN_BOX_WIDTH = 28.0


@dataclass(frozen=True)
class Theme:
    """Color palette for the SVG output; defaults are arbitrary."""

    background: str = "#ffffff"
    node_fill: str = "#f8f9fb"
    node_stroke: str = "#42526e"
    text_color: str = "#172b4d"
    edge_color: str = "#8993a4"
    ambiguous_stroke: str = "#c0392b"
    origin_a_fill: str = "#d6e9f8"
    origin_b_fill: str = "#fbe3c8"
    unified_fill: str = "#d3efd3"
    similar_stroke: str = "#b45309"
    collapsed_fill: str = "#e4e6ea"
    stub_stroke: str = "#7a869a"


@dataclass
class RenderOptions:
    level_gap: float = 56.0
    node_gap: float = 18.0
    theme: Theme = field(default_factory=Theme)
    max_depth: int | None = None
    caret_style: str = "^"  # "^" or "∧"

    def __post_init__(self) -> None:
        if self.level_gap <= 0 or self.node_gap <= 0:
            raise ValueError("level_gap and node_gap must be positive")
        if self.caret_style not in ("^", "∧"):
            raise ValueError("caret_style must be '^' or '∧'")


@dataclass
class LayoutNode:
    key: str
    label: str
    classes: tuple[str, ...]
    x: float  # box center
    y: float  # box top
    width: float
    height: float
    depth: int

    @property
    def left(self) -> float:
        return self.x - self.width / 2

    @property
    def right(self) -> float:
        return self.x + self.width / 2


@dataclass
class Layout:
    nodes: list[LayoutNode]
    edges: list[tuple[str, str]]


@dataclass(frozen=True)
class _SceneNode:
    key: str
    label: str
    classes: tuple[str, ...]
    children: tuple["_SceneNode", ...]


def _label_for(display: str, glyph: str | None, opts: RenderOptions) -> str:
    label = glyph if glyph is not None else display
    if label in ("^", "∧"):
        label = opts.caret_style
    return label


def _expr_scene(node: ExprNode, opts: RenderOptions, depth: int) -> _SceneNode:
    classes = ["node"]
    classes.append("ambiguous-dashed" if node.ambiguous else "normal")
    children: tuple[_SceneNode, ...] = ()
    if node.children:
        if opts.max_depth is not None and depth >= opts.max_depth:
            classes.append("collapsed")
        else:
            children = tuple(
                _expr_scene(c, opts, depth + 1) for c in node.children
            )
    return _SceneNode(
        key=node.node_id,
        label=_label_for(node.display, node.glyph, opts),
        classes=tuple(classes),
        children=children,
    )


def _merged_scene(node: MergedNode, opts: RenderOptions, depth: int) -> _SceneNode:
    classes = ["node"]
    if node.is_stub:
        classes.append("ref-stub")
    elif node.origin == "both":
        classes.append("unified")
    else:
        classes.append(f"origin-{node.origin}")
        if node.grade == "similar":
            classes.append("similar-highlight")
    if node.collapsed:
        classes.append("collapsed")
    children: tuple[_SceneNode, ...] = ()
    if node.children:
        if opts.max_depth is not None and depth >= opts.max_depth:
            classes.append("collapsed")
        else:
            children = tuple(
                _merged_scene(c, opts, depth + 1) for c in node.children
            )
    return _SceneNode(
        key=node.key,
        label=_label_for(node.display, node.glyph, opts),
        classes=tuple(classes),
        children=children,
    )


def _scene_roots(
    tree: ExpressionTree | MergedTree, opts: RenderOptions
) -> list[_SceneNode]:
    if isinstance(tree, ExpressionTree):
        return [_expr_scene(tree.root, opts, 0)]
    return [_merged_scene(root, opts, 0) for root in tree.roots]


def box_width(label: str) -> float:
    return max(MIN_BOX_WIDTH, len(label) * CHAR_WIDTH + BOX_PADDING)


def layout(tree: ExpressionTree | MergedTree, opts: RenderOptions | None = None) -> Layout:
    """Compute box positions and parent-child edges for a tree."""
    opts = opts or RenderOptions()
    roots = _scene_roots(tree, opts)
    nodes: list[LayoutNode] = []
    edges: list[tuple[str, str]] = []
    cursors: dict[int, float] = {}
    # floor keeps later roots fully right of earlier ones (side by side)
    floor = [0.0]

    def cursor_at(depth: int) -> float:
        return max(cursors.get(depth, 0.0), floor[0])

    def advance(depth: int, right: float) -> None:
        cursors[depth] = max(cursors.get(depth, 0.0), right + opts.node_gap)

    def place(snode: _SceneNode, depth: int) -> tuple[LayoutNode, list[LayoutNode]]:
        width = box_width(snode.label)
        y = depth * opts.level_gap
        if not snode.children:
            left = cursor_at(depth)
            node = LayoutNode(
                snode.key, snode.label, snode.classes,
                left + width / 2, y, width, BOX_HEIGHT, depth,
            )
            nodes.append(node)
            advance(depth, node.right)
            return node, [node]

        placed_children: list[LayoutNode] = []
        subtree: list[LayoutNode] = []
        for child in snode.children:
            child_node, child_subtree = place(child, depth + 1)
            placed_children.append(child_node)
            subtree.extend(child_subtree)
            edges.append((snode.key, child.key))

        center = (placed_children[0].x + placed_children[-1].x) / 2
        left = center - width / 2
        min_left = cursor_at(depth)
        if left < min_left:
            delta = min_left - left
            left = min_left
            for moved in subtree:
                moved.x += delta
                advance(moved.depth, moved.right)
        node = LayoutNode(
            snode.key, snode.label, snode.classes,
            left + width / 2, y, width, BOX_HEIGHT, depth,
        )
        nodes.append(node)
        advance(depth, node.right)
        return node, [node] + subtree

    for root in roots:
        place(root, 0)
        floor[0] = max(n.right for n in nodes) + opts.node_gap
    return Layout(nodes=nodes, edges=edges)
