"""Deterministic SVG rendering of computed layouts.

Output is canonical: fixed attribute order, two-decimal coordinates, and a
fixed style block derived from the theme, so identical inputs and options
produce byte-identical documents.
"""

from __future__ import annotations

from dataclasses import dataclass

from .layout import Layout, LayoutNode, RenderOptions

MARGIN = 16.0


@dataclass(frozen=True)
class SvgDocument:
    text: str
    view_box: tuple[float, float, float, float]


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _escape(value: str) -> str:
    return value.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _escape_attr(value: str) -> str:
    return _escape(value).replace('"', "&quot;")


def _style(opts: RenderOptions) -> str:
    t = opts.theme
    return (
        f"svg{{background:{t.background};}}"
        f".edge{{stroke:{t.edge_color};stroke-width:1.2;}}"
        f".node rect{{fill:{t.node_fill};stroke:{t.node_stroke};stroke-width:1.3;}}"
        f".node text{{fill:{t.text_color};font-family:monospace;font-size:13px;"
        "text-anchor:middle;dominant-baseline:central;}"
        f".node.ambiguous-dashed rect{{stroke:{t.ambiguous_stroke};"
        "stroke-dasharray:5 3;}"
        f".node.origin-A rect{{fill:{t.origin_a_fill};}}"
        f".node.origin-B rect{{fill:{t.origin_b_fill};}}"
        f".node.unified rect{{fill:{t.unified_fill};}}"
        f".node.similar-highlight rect{{stroke:{t.similar_stroke};stroke-width:2.4;}}"
        f".node.collapsed rect{{fill:{t.collapsed_fill};stroke-dasharray:2 2;}}"
        f".node.ref-stub rect{{fill:none;stroke:{t.stub_stroke};stroke-dasharray:2 2;}}"
    )


def to_svg(layout: Layout, opts: RenderOptions | None = None) -> SvgDocument:
    """Render a layout to a canonical SVG document."""
    opts = opts or RenderOptions()
    nodes = layout.nodes
    if nodes:
        min_left = min(n.left for n in nodes)
        max_right = max(n.right for n in nodes)
        max_bottom = max(n.y + n.height for n in nodes)
    else:
        min_left, max_right, max_bottom = 0.0, 0.0, 0.0
    dx = MARGIN - min_left
    width = max_right - min_left + 2 * MARGIN
    height = max_bottom + 2 * MARGIN
    view_box = (0.0, 0.0, width, height)

    by_key: dict[str, LayoutNode] = {n.key: n for n in nodes}
    parts: list[str] = []
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}" '
        f'width="{_fmt(width)}" height="{_fmt(height)}">'
    )
    parts.append(f"<style>{_style(opts)}</style>")

    parts.append('<g class="edges">')
    for parent_key, child_key in layout.edges:
        parent = by_key[parent_key]
        child = by_key[child_key]
        parts.append(
            '<line class="edge" '
            f'x1="{_fmt(parent.x + dx)}" y1="{_fmt(parent.y + parent.height + MARGIN)}" '
            f'x2="{_fmt(child.x + dx)}" y2="{_fmt(child.y + MARGIN)}"/>'
        )
    parts.append("</g>")

    parts.append('<g class="nodes">')
    ordered = sorted(nodes, key=lambda n: (n.depth, n.left))
    for node in ordered:
        classes = " ".join(node.classes)
        parts.append(f'<g class="{classes}" data-key="{_escape_attr(node.key)}">')
        parts.append(
            f'<rect x="{_fmt(node.left + dx)}" y="{_fmt(node.y + MARGIN)}" '
            f'width="{_fmt(node.width)}" height="{_fmt(node.height)}" rx="6"/>'
        )
        parts.append(
            f'<text x="{_fmt(node.x + dx)}" '
            f'y="{_fmt(node.y + node.height / 2 + MARGIN)}">'
            f"{_escape(node.label)}</text>"
        )
        parts.append("</g>")
    parts.append("</g>")
    parts.append("</svg>")
    return SvgDocument(text="".join(parts), view_box=view_box)
