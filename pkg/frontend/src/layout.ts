// Client-side tidy layout: leaves left to right, parents centered over the
// midpoint of their first and last child, subtrees shifted right to keep
// the horizontal gap.  Mirrors the service's layout so widget renderings
// and static exports agree.

import type { ExpressionNode, MergedNode } from "./types.js";

export const CHAR_WIDTH = 8;
export const BOX_PADDING = 16;
export const BOX_HEIGHT = 28;
export const MIN_BOX_WIDTH = 28;
export const LEVEL_GAP = 56;
export const NODE_GAP = 18;

export interface SceneNode {
  key: string;
  label: string;
  classes: string[];
  children: SceneNode[];
}

export interface LayoutBox {
  key: string;
  label: string;
  classes: string[];
  x: number; // box center
  y: number; // box top
  width: number;
  height: number;
  depth: number;
}

export interface LayoutResult {
  boxes: LayoutBox[];
  edges: [string, string][];
  width: number;
  height: number;
}

function labelOf(node: { display: string; glyph?: string }): string {
  return node.glyph ?? node.display;
}

export function expressionScene(
  node: ExpressionNode,
  collapsed: ReadonlySet<string>,
): SceneNode {
  const classes = ["node", node.ambiguous ? "ambiguous-dashed" : "normal"];
  const isCollapsed = collapsed.has(node.id) && node.children.length > 0;
  if (isCollapsed) classes.push("collapsed");
  return {
    key: node.id,
    label: labelOf(node),
    classes,
    children: isCollapsed
      ? []
      : node.children.map((c) => expressionScene(c, collapsed)),
  };
}

export function mergedScene(
  node: MergedNode,
  collapsed: ReadonlySet<string>,
): SceneNode {
  const classes = ["node"];
  if (node.ref !== undefined) {
    classes.push("ref-stub");
  } else if (node.origin === "both") {
    classes.push("unified");
  } else {
    classes.push(`origin-${node.origin}`);
    if (node.grade === "similar") classes.push("similar-highlight");
  }
  const isCollapsed =
    node.collapsed === true ||
    (collapsed.has(node.id) && node.children.length > 0);
  if (isCollapsed) classes.push("collapsed");
  return {
    key: node.id,
    label: labelOf(node),
    classes,
    children:
      isCollapsed && node.children.length > 0
        ? []
        : node.children.map((c) => mergedScene(c, collapsed)),
  };
}

export function boxWidth(label: string): number {
  return Math.max(MIN_BOX_WIDTH, label.length * CHAR_WIDTH + BOX_PADDING);
}

export function tidyLayout(roots: SceneNode[]): LayoutResult {
  const boxes: LayoutBox[] = [];
  const edges: [string, string][] = [];
  const cursors = new Map<number, number>();
  // floor keeps later roots fully right of earlier ones (side by side)
  let floor = 0;

  const cursorAt = (depth: number): number =>
    Math.max(cursors.get(depth) ?? 0, floor);

  const advance = (depth: number, right: number): void => {
    cursors.set(depth, Math.max(cursors.get(depth) ?? 0, right + NODE_GAP));
  };

  const place = (node: SceneNode, depth: number): [LayoutBox, LayoutBox[]] => {
    const width = boxWidth(node.label);
    const y = depth * LEVEL_GAP;
    if (node.children.length === 0) {
      const left = cursorAt(depth);
      const box: LayoutBox = {
        key: node.key,
        label: node.label,
        classes: node.classes,
        x: left + width / 2,
        y,
        width,
        height: BOX_HEIGHT,
        depth,
      };
      boxes.push(box);
      advance(depth, left + width);
      return [box, [box]];
    }

    const placedChildren: LayoutBox[] = [];
    const subtree: LayoutBox[] = [];
    for (const child of node.children) {
      const [childBox, childSubtree] = place(child, depth + 1);
      placedChildren.push(childBox);
      subtree.push(...childSubtree);
      edges.push([node.key, child.key]);
    }
    const first = placedChildren[0]!;
    const last = placedChildren[placedChildren.length - 1]!;
    let left = (first.x + last.x) / 2 - width / 2;
    const minLeft = cursorAt(depth);
    if (left < minLeft) {
      const delta = minLeft - left;
      left = minLeft;
      for (const moved of subtree) {
        moved.x += delta;
        advance(moved.depth, moved.x + moved.width / 2);
      }
    }
    const box: LayoutBox = {
      key: node.key,
      label: node.label,
      classes: node.classes,
      x: left + width / 2,
      y,
      width,
      height: BOX_HEIGHT,
      depth,
    };
    boxes.push(box);
    advance(depth, left + width);
    return [box, [box, ...subtree]];
  };

  for (const root of roots) {
    place(root, 0);
    for (const box of boxes) {
      floor = Math.max(floor, box.x + box.width / 2 + NODE_GAP);
    }
  }

  let width = 0;
  let height = 0;
  for (const box of boxes) {
    width = Math.max(width, box.x + box.width / 2);
    height = Math.max(height, box.y + box.height);
  }
  return { boxes, edges, width, height };
}
