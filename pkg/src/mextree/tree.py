"""Apply-free expression trees built from parallel markup.

Each application element is fused with its first child: the first child
becomes the operator/function node and the remaining children become its
arguments.  Node labels come from the presentation fragments linked via
``xref``; content text is the fallback when no link resolves.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContentRootMissing, EmptyApply
from .mathml import ParallelExpression, presentation_text, walk_elements
from .xmlparse import XmlElement

QUALIFIER_ROLES = (
    "bvar",
    "lowlimit",
    "uplimit",
    "degree",
    "domainofapplication",
    "interval",
    "condition",
)

# Rendering order of an application's children: bound variables, then range
# restrictions, then degree, then ordinary operands.  Stable within a group.
_QUALIFIER_GROUP = {
    "bvar": 0,
    "lowlimit": 1,
    "uplimit": 1,
    "interval": 1,
    "condition": 1,
    "domainofapplication": 1,
    "degree": 2,
}

_LEAF_KINDS = {
    "ci": "leaf_identifier",
    "cn": "leaf_number",
    "csymbol": "leaf_symbol",
}

INVISIBLE_APPLY = "⁡"


@dataclass(frozen=True)
class StrictSymbol:
    """A symbol name with an optional content-dictionary qualifier.

    Strict symbols always carry a dictionary name; identifier and number
    leaves use the reserved pseudo-dictionaries ``ci`` and ``cn`` with the
    leaf text as the symbol name.
    """

    cd: str | None
    name: str


@dataclass(frozen=True)
class ShorthandTable:
    """Maps operator element names to short display glyphs."""

    mapping: dict[str, str]

    def lookup(self, key: StrictSymbol | str) -> str | None:
        name = key.name if isinstance(key, StrictSymbol) else key
        return self.mapping.get(name)


def default_shorthand_table(caret: str = "^") -> ShorthandTable:
    """The shipped glyph table; ``caret`` picks the power glyph ("^" or "∧")."""
    return ShorthandTable({
        "power": caret,
        "plus": "+",
        "minus": "−",
        "times": "⋅",
        "divide": "/",
        "eq": "=",
        "neq": "≠",
        "lt": "<",
        "gt": ">",
        "leq": "≤",
        "geq": "≥",
        "root": "√",
        "sum": "Σ",
        "int": "∫",
        INVISIBLE_APPLY: "@",
    })


def shorthand_lookup(
    table: ShorthandTable, symbol: StrictSymbol | str
) -> str | None:
    """Glyph for a symbol or element name, or ``None`` when unmapped."""
    return table.lookup(symbol)


@dataclass(frozen=True)
class ExprNode:
    node_id: str
    kind: str  # function_head | leaf_identifier | leaf_number | leaf_symbol | qualifier | ambiguous_group
    display: str
    glyph: str | None = None
    symbol: StrictSymbol | None = None
    ambiguous: bool = False
    qualifier_role: str | None = None
    children: tuple["ExprNode", ...] = ()

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class ExpressionTree:
    root: ExprNode
    infix: str
    span_map: dict[str, tuple[int, int]]
    source: ParallelExpression | None = field(default=None, compare=False)

    def nodes(self) -> list[ExprNode]:
        return list(self.root.walk())

    def node_map(self) -> dict[str, ExprNode]:
        return {n.node_id: n for n in self.root.walk()}

    def parent_map(self) -> dict[str, str]:
        parents: dict[str, str] = {}
        for node in self.root.walk():
            for child in node.children:
                parents[child.node_id] = node.node_id
        return parents


def build_tree(
    expr: ParallelExpression, shorthand: ShorthandTable | None = None
) -> ExpressionTree:
    """Build the apply-free tree for a parsed parallel expression."""
    if expr.cmml_root is None:
        raise ContentRootMissing("expression has no content root")
    builder = _TreeBuilder(expr, shorthand or default_shorthand_table())
    root = builder.build(expr.cmml_root)
    infix, spans = infix_overview(root)
    return ExpressionTree(root=root, infix=infix, span_map=spans, source=expr)


class _TreeBuilder:
    def __init__(self, expr: ParallelExpression, shorthand: ShorthandTable):
        self.expr = expr
        self.shorthand = shorthand
        counts: dict[str, int] = {}
        for target in expr.xref_c2p.values():
            counts[target] = counts.get(target, 0) + 1
        self.shared_targets = {t for t, n in counts.items() if n >= 2}

    def build(self, el: XmlElement) -> ExprNode:
        name = el.name
        if name == "apply":
            kids = el.element_children()
            if not kids:
                raise EmptyApply(el.attributes["id"])
            head, args = kids[0], kids[1:]
            children = self._ordered_children(args)
            if head.name == "apply":
                # Opaque group: the head is itself an application and is
                # rendered wholesale instead of being expanded.
                return ExprNode(
                    node_id=head.attributes["id"],
                    kind="ambiguous_group",
                    display=self._display(head),
                    ambiguous=self._is_ambiguous(head),
                    children=children,
                )
            return self._make(head, "function_head", children)
        if name in _LEAF_KINDS:
            return self._make(el, _LEAF_KINDS[name], ())
        if name in QUALIFIER_ROLES:
            return ExprNode(
                node_id=el.attributes["id"],
                kind="qualifier",
                display=self._display(el),
                ambiguous=self._is_ambiguous(el),
                qualifier_role=name,
                children=self._ordered_children(el.element_children()),
            )
        kids = el.element_children()
        if kids:
            # Structural constructs (bind, lambda, piecewise, ...) keep the
            # element name as the head; best effort, intent is not guessed.
            return self._make(el, "function_head", self._ordered_children(kids))
        return self._make(el, "leaf_symbol", ())

    def _ordered_children(self, args: list[XmlElement]) -> tuple[ExprNode, ...]:
        keyed = [
            (_QUALIFIER_GROUP.get(arg.name, 3), i, arg)
            for i, arg in enumerate(args)
        ]
        keyed.sort(key=lambda item: (item[0], item[1]))
        return tuple(self.build(arg) for _, _, arg in keyed)

    def _make(
        self, el: XmlElement, kind: str, children: tuple[ExprNode, ...]
    ) -> ExprNode:
        symbol = self._symbol(el)
        glyph = self.shorthand.lookup(symbol) if symbol is not None else None
        return ExprNode(
            node_id=el.attributes["id"],
            kind=kind,
            display=self._display(el),
            glyph=glyph,
            symbol=symbol,
            ambiguous=self._is_ambiguous(el),
            children=children,
        )

    def _symbol(self, el: XmlElement) -> StrictSymbol | None:
        if el.name == "ci":
            return StrictSymbol("ci", el.text_content().strip() or el.name)
        if el.name == "cn":
            return StrictSymbol("cn", el.text_content().strip() or el.name)
        if el.name == "csymbol":
            return StrictSymbol(
                el.attributes.get("cd"), el.text_content().strip() or el.name
            )
        return StrictSymbol(None, el.name)

    def _is_ambiguous(self, el: XmlElement) -> bool:
        eid = el.attributes["id"]
        if eid in self.expr.unresolved:
            return True
        return self.expr.xref_c2p.get(eid) in self.shared_targets

    def _display(self, el: XmlElement) -> str:
        target = self.expr.xref_c2p.get(el.attributes["id"])
        if target is not None:
            return presentation_text(self.expr.id_table[target])
        linked = self._descendant_fragment(el)
        if linked:
            return linked
        if el.name in _LEAF_KINDS:
            text = el.text_content().strip()
            if text:
                return text
        return el.name

    def _descendant_fragment(self, el: XmlElement) -> str:
        """Concatenated text of all presentation fragments linked inside ``el``."""
        parts: list[str] = []
        covered: set[str] = set()
        for desc in walk_elements(el):
            if desc is el:
                continue
            target = self.expr.xref_c2p.get(desc.attributes["id"])
            if target is None or target in covered:
                continue
            fragment = self.expr.id_table[target]
            covered.update(e.attributes["id"] for e in walk_elements(fragment))
            parts.append(presentation_text(fragment))
        return "".join(parts)


def infix_overview(
    tree: ExpressionTree | ExprNode,
) -> tuple[str, dict[str, tuple[int, int]]]:
    """Linearize a tree to an infix overview string with per-node spans.

    Function heads render as ``label(arg, arg)``; heads with a glyph and at
    least two arguments render infix with the glyph between operands.  The
    parentheses a parent adds around an operand belong to the parent's span.
    """
    root = tree.root if isinstance(tree, ExpressionTree) else tree
    parts: list[str] = []
    spans: dict[str, tuple[int, int]] = {}
    length = [0]

    def write(text: str) -> None:
        parts.append(text)
        length[0] += len(text)

    def renders_infix(node: ExprNode) -> bool:
        return (
            node.glyph is not None
            and len(node.children) >= 2
            and all(c.qualifier_role is None for c in node.children)
        )

    def emit(node: ExprNode) -> None:
        start = length[0]
        label = node.glyph or node.display
        if not node.children:
            write(label)
        elif renders_infix(node):
            for i, child in enumerate(node.children):
                if i:
                    write(f" {node.glyph} ")
                wrap = renders_infix(child)
                if wrap:
                    write("(")
                emit(child)
                if wrap:
                    write(")")
        else:
            write(label)
            write("(")
            for i, child in enumerate(node.children):
                if i:
                    write(", ")
                emit(child)
            write(")")
        spans[node.node_id] = (start, length[0])

    emit(root)
    return "".join(parts), spans
