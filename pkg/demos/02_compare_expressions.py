"""Walkthrough: grading and merging two expressions.

Computes both shipped similarity measures for f(a+b) vs g(a+b), merges the
trees under the resulting spec, collapses the unmarked remainder, and
writes the combined rendering.
"""

from pathlib import Path

from mextree import (
    build_tree,
    collapse_unmarked,
    extract_parallel,
    identical_pairs,
    layout,
    merge,
    parse_document,
    spec_to_json,
    taxonomic_pairs,
    to_svg,
    to_view_model,
)

A = "<math><apply><ci>f</ci><apply><plus/><ci>a</ci><ci>b</ci></apply></apply></math>"
B = "<math><apply><ci>g</ci><apply><plus/><ci>a</ci><ci>b</ci></apply></apply></math>"

out_dir = Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

tree_a = build_tree(extract_parallel(parse_document(A)))
tree_b = build_tree(extract_parallel(parse_document(B)))
print(f"A: {tree_a.infix}")
print(f"B: {tree_b.infix}")
print()

# Maximal identical subtrees: the shared a+b argument.
identical = identical_pairs(tree_a, tree_b)
print(f"identical measure: {spec_to_json(identical)}")

# Dictionary-based grading: f and g are both identifiers, so their heads
# count as similar; the plus heads are outright identical.
taxonomic = taxonomic_pairs(tree_a, tree_b)
print(f"taxonomic measure: {spec_to_json(taxonomic)}")
print()

spec = type(identical)(identical.pairs + tuple(
    p for p in taxonomic.pairs if p.grade == "similar"
))
merged = collapse_unmarked(merge(tree_a, tree_b, spec))
for node in merged.walk():
    tag = f"origin={node.origin}"
    if node.grade:
        tag += f" grade={node.grade}"
    if node.is_stub:
        tag += f" ref->{node.ref}"
    print(f"  {node.key:12} {node.display!r:8} {tag}")

svg = to_svg(layout(merged))
(out_dir / "comparison.svg").write_text(svg.text)
(out_dir / "comparison.json").write_text(to_view_model(merged))
print()
print(f"wrote {out_dir / 'comparison.svg'}")
print(f"wrote {out_dir / 'comparison.json'}")
