"""Parallel markup model: presentation and content trees with xref links.

``extract_parallel`` takes a parsed ``math`` element and resolves the mutual
cross-references between the presentation (PMML) and content (CMML) trees.
Every element receives a document-unique id (``gen:<preorder-index>`` where
the author supplied none), so downstream similarity specs can address any
content element.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NoContentMarkup
from .xmlparse import XmlElement

CONTENT_ENCODING = "MathML-Content"
PRESENTATION_ENCODING = "MathML-Presentation"

# Closed set of presentation-vocabulary element names; anything else inside
# a math document is treated as content vocabulary.
PRESENTATION_ELEMENTS = frozenset({
    "mi", "mo", "mn", "mtext", "ms", "mspace", "mrow", "mfrac", "msqrt",
    "mroot", "mstyle", "merror", "mpadded", "mphantom", "mfenced",
    "menclose", "msub", "msup", "msubsup", "munder", "mover", "munderover",
    "mmultiscripts", "mprescripts", "none", "mtable", "mtr", "mlabeledtr",
    "mtd", "maligngroup", "malignmark", "maction", "mglyph",
})

_ANNOTATION_NAMES = ("annotation", "annotation-xml")


@dataclass(frozen=True)
class ParallelExpression:
    """A parsed expression with its xref index.

    ``pmml_root`` is absent for content-only documents.  ``unresolved``
    holds ids of content elements whose ``xref`` did not resolve to a
    presentation element (dangling targets, links into the content tree
    itself, or links whose back-reference disagrees).
    """

    cmml_root: XmlElement
    pmml_root: XmlElement | None = None
    id_table: dict[str, XmlElement] = field(default_factory=dict)
    xref_c2p: dict[str, str] = field(default_factory=dict)
    xref_p2c: dict[str, str] = field(default_factory=dict)
    unresolved: frozenset[str] = frozenset()
    warnings: tuple[str, ...] = ()

    def element_id(self, el: XmlElement) -> str:
        return el.attributes["id"]


def is_presentation_element(name: str) -> bool:
    return name in PRESENTATION_ELEMENTS


def extract_parallel(root: XmlElement) -> ParallelExpression:
    """Locate the presentation and content roots and build the xref index."""
    if root.name != "math":
        raise NoContentMarkup(
            f"expected a <math> root element, found <{root.name}>"
        )
    warnings: list[str] = []
    pmml_path, cmml_path = _locate_roots(root, warnings)

    root, id_table, id_warnings = _assign_ids(root)
    warnings.extend(id_warnings)
    cmml_root = _follow(root, cmml_path)
    pmml_root = _follow(root, pmml_path) if pmml_path is not None else None

    pmml_ids = _subtree_ids(pmml_root) if pmml_root is not None else set()
    cmml_ids = _subtree_ids(cmml_root)

    xref_c2p: dict[str, str] = {}
    unresolved: set[str] = set()
    for el in _walk(cmml_root):
        target = el.attributes.get("xref")
        if target is None:
            continue
        cid = el.attributes["id"]
        if target not in pmml_ids:
            unresolved.add(cid)
            continue
        back = id_table[target].attributes.get("xref")
        if back is not None and back != cid:
            unresolved.add(cid)
            continue
        xref_c2p[cid] = target

    xref_p2c: dict[str, str] = {}
    if pmml_root is not None:
        for el in _walk(pmml_root):
            target = el.attributes.get("xref")
            if target is not None and target in cmml_ids:
                xref_p2c[el.attributes["id"]] = target

    return ParallelExpression(
        cmml_root=cmml_root,
        pmml_root=pmml_root,
        id_table=id_table,
        xref_c2p=xref_c2p,
        xref_p2c=xref_p2c,
        unresolved=frozenset(unresolved),
        warnings=tuple(warnings),
    )


def _locate_roots(
    root: XmlElement, warnings: list[str]
) -> tuple[list[int] | None, list[int]]:
    """Return child-index paths (from the math root) to the PMML and CMML roots."""
    semantics_idx = _first_child_index(root, lambda el: el.name == "semantics")
    if semantics_idx is None:
        # Content-only document: the first element child must be content markup.
        idx = _first_child_index(root, lambda el: True)
        if idx is None:
            raise NoContentMarkup("document contains no expression")
        child = root.children[idx]
        assert isinstance(child, XmlElement)
        if is_presentation_element(child.name):
            raise NoContentMarkup(
                "document holds presentation markup only; no content tree found"
            )
        return None, [idx]

    semantics = root.children[semantics_idx]
    assert isinstance(semantics, XmlElement)
    body_idx = _first_child_index(
        semantics, lambda el: el.name not in _ANNOTATION_NAMES
    )
    content_idxs = _annotation_indices(semantics, CONTENT_ENCODING)
    if len(content_idxs) > 1:
        warnings.append(
            "NestedSemantics: multiple content annotations; using the first"
        )

    if content_idxs:
        cmml_path = _into_annotation(root, semantics, semantics_idx, content_idxs[0])
        pmml_path = None
        if body_idx is not None:
            body = semantics.children[body_idx]
            assert isinstance(body, XmlElement)
            if is_presentation_element(body.name):
                pmml_path = [semantics_idx, body_idx]
        return pmml_path, cmml_path

    # No content annotation: accept a content-primary semantics body.
    if body_idx is not None:
        body = semantics.children[body_idx]
        assert isinstance(body, XmlElement)
        if not is_presentation_element(body.name):
            pres_idxs = _annotation_indices(semantics, PRESENTATION_ENCODING)
            pmml_path = None
            if pres_idxs:
                pmml_path = _into_annotation(
                    root, semantics, semantics_idx, pres_idxs[0]
                )
            return pmml_path, [semantics_idx, body_idx]
    raise NoContentMarkup("no content annotation or content body found")


def _into_annotation(
    root: XmlElement, semantics: XmlElement, semantics_idx: int, ann_idx: int
) -> list[int]:
    annotation = semantics.children[ann_idx]
    assert isinstance(annotation, XmlElement)
    inner = _first_child_index(annotation, lambda el: True)
    if inner is None:
        raise NoContentMarkup("annotation-xml carries no element content")
    return [semantics_idx, ann_idx, inner]


def _annotation_indices(semantics: XmlElement, encoding: str) -> list[int]:
    return [
        i
        for i, child in enumerate(semantics.children)
        if isinstance(child, XmlElement)
        and child.name == "annotation-xml"
        and child.attributes.get("encoding") == encoding
    ]


def _first_child_index(el: XmlElement, pred) -> int | None:
    for i, child in enumerate(el.children):
        if isinstance(child, XmlElement) and pred(child):
            return i
    return None


def _follow(root: XmlElement, path: list[int]) -> XmlElement:
    el = root
    for idx in path:
        child = el.children[idx]
        assert isinstance(child, XmlElement)
        el = child
    return el


def _assign_ids(
    root: XmlElement,
) -> tuple[XmlElement, dict[str, XmlElement], list[str]]:
    """Rebuild the tree so every element carries a document-unique id."""
    authored: set[str] = set()
    for el in _walk(root):
        value = el.attributes.get("id")
        if value is not None:
            authored.add(value)

    id_table: dict[str, XmlElement] = {}
    warnings: list[str] = []
    seen: set[str] = set()
    counter = [0]

    def synthesize(index: int) -> str:
        candidate = f"gen:{index}"
        bump = 0
        while candidate in authored or candidate in seen:
            bump += 1
            candidate = f"gen:{index}.{bump}"
        return candidate

    def rebuild(el: XmlElement) -> XmlElement:
        index = counter[0]
        counter[0] += 1
        eid = el.attributes.get("id")
        attributes = dict(el.attributes)
        if eid is None:
            eid = synthesize(index)
            attributes["id"] = eid
        elif eid in seen:
            warnings.append(f"DuplicateId: {eid!r} reassigned to a synthesized id")
            eid = synthesize(index)
            attributes["id"] = eid
        seen.add(eid)
        children = tuple(
            rebuild(c) if isinstance(c, XmlElement) else c for c in el.children
        )
        new_el = XmlElement(el.name, attributes, children, el.source_span)
        id_table[eid] = new_el
        return new_el

    new_root = rebuild(root)
    return new_root, id_table, warnings


def walk_elements(el: XmlElement):
    """Preorder traversal over an element and its element descendants."""
    yield el
    for child in el.children:
        if isinstance(child, XmlElement):
            yield from walk_elements(child)


_walk = walk_elements


def _subtree_ids(el: XmlElement) -> set[str]:
    return {e.attributes["id"] for e in _walk(el)}


def presentation_text(el: XmlElement) -> str:
    """Visible text of a presentation fragment (token text concatenation)."""
    parts: list[str] = []

    def gather(node: XmlElement) -> None:
        for child in node.children:
            if isinstance(child, str):
                stripped = child.strip()
                if stripped:
                    parts.append(stripped)
            else:
                gather(child)

    gather(el)
    return "".join(parts)
