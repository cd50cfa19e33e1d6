"""mextree: apply-free expression trees from parallel MathML.

Parse MathML, build expression trees whose labels come from the linked
presentation fragments, compare two expressions, merge them into a
combined tree, and render deterministic SVG or canonical tree JSON.
"""

from .errors import (
    ContentRootMissing,
    ConverterBadResponse,
    ConverterUnconfigured,
    ConverterUnreachable,
    EmptyApply,
    InvalidSpecJson,
    MalformedXml,
    MextreeError,
    NoContentMarkup,
    SpecViolationError,
    UnmappedPragmaticElement,
    UnsupportedEntity,
)
from .layout import Layout, LayoutNode, RenderOptions, Theme, layout
from .mathml import ParallelExpression, extract_parallel
from .merge import MergedNode, MergedTree, collapse_unmarked, merge
from .similarity import (
    CdMappingTable,
    SimilarityPair,
    SimilaritySpec,
    SpecProblem,
    default_cd_table,
    identical_pairs,
    spec_from_json,
    spec_to_json,
    taxonomic_pairs,
    to_strict,
    validate_spec,
)
from .svg import SvgDocument, to_svg
from .tree import (
    ExprNode,
    ExpressionTree,
    ShorthandTable,
    StrictSymbol,
    build_tree,
    default_shorthand_table,
    infix_overview,
    shorthand_lookup,
)
from .viewmodel import from_view_model, to_view_model
from .xmlparse import XmlElement, parse_document, serialize

__version__ = "0.1.0"

__all__ = [
    "CdMappingTable",
    "ContentRootMissing",
    "ConverterBadResponse",
    "ConverterUnconfigured",
    "ConverterUnreachable",
    "EmptyApply",
    "ExprNode",
    "ExpressionTree",
    "InvalidSpecJson",
    "Layout",
    "LayoutNode",
    "MalformedXml",
    "MergedNode",
    "MergedTree",
    "MextreeError",
    "NoContentMarkup",
    "ParallelExpression",
    "RenderOptions",
    "ShorthandTable",
    "SimilarityPair",
    "SimilaritySpec",
    "SpecProblem",
    "SpecViolationError",
    "StrictSymbol",
    "SvgDocument",
    "Theme",
    "UnmappedPragmaticElement",
    "UnsupportedEntity",
    "XmlElement",
    "build_tree",
    "collapse_unmarked",
    "default_cd_table",
    "default_shorthand_table",
    "extract_parallel",
    "from_view_model",
    "identical_pairs",
    "infix_overview",
    "layout",
    "merge",
    "parse_document",
    "serialize",
    "shorthand_lookup",
    "spec_from_json",
    "spec_to_json",
    "taxonomic_pairs",
    "to_strict",
    "to_svg",
    "to_view_model",
    "validate_spec",
]
