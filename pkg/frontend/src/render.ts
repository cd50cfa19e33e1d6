// DOM construction: SVG scene graph and the infix overview strip.

import type { LayoutResult } from "./layout.js";
import type { ExpressionViewModel } from "./types.js";

export const SVG_NS = "http://www.w3.org/2000/svg";
const MARGIN = 16;

export const WIDGET_CSS = `
.mextree-widget{font-family:monospace;position:relative;}
.mextree-banner{background:#fdecea;color:#b71c1c;padding:6px 10px;border:1px solid #f5c6cb;}
.mextree-toolbar{display:flex;gap:6px;margin:4px 0;}
.mextree-infix{letter-spacing:1px;padding:4px 2px;white-space:pre;}
.mextree-infix span.highlight{background:#bfdbf7;}
.mextree-widget .edge{stroke:#8993a4;stroke-width:1.2;}
.mextree-widget .node rect{fill:#f8f9fb;stroke:#42526e;stroke-width:1.3;}
.mextree-widget .node text{fill:#172b4d;font-size:13px;text-anchor:middle;dominant-baseline:central;}
.mextree-widget .node.ambiguous-dashed rect{stroke:#c0392b;stroke-dasharray:5 3;}
.mextree-widget .node.origin-A rect{fill:#d6e9f8;}
.mextree-widget .node.origin-B rect{fill:#fbe3c8;}
.mextree-widget .node.unified rect{fill:#d3efd3;}
.mextree-widget .node.similar-highlight rect{stroke:#b45309;stroke-width:2.4;}
.mextree-widget .node.collapsed rect{fill:#e4e6ea;stroke-dasharray:2 2;}
.mextree-widget .node.ref-stub rect{fill:none;stroke:#7a869a;stroke-dasharray:2 2;}
.mextree-widget .node.highlight rect{stroke:#1d4ed8;stroke-width:2.6;}
.mextree-panel-a{background:#eef6fd;}
.mextree-panel-b{background:#fdf3e7;}
`;

let styleInjected = false;

export function ensureStyles(doc: Document): void {
  if (styleInjected && doc.getElementById("mextree-widget-style")) return;
  const style = doc.createElement("style");
  style.id = "mextree-widget-style";
  style.textContent = WIDGET_CSS;
  doc.head.appendChild(style);
  styleInjected = true;
}

export interface SceneDom {
  svg: SVGSVGElement;
  viewportGroup: SVGGElement;
  nodeGroups: Map<string, SVGGElement>;
}

/** Render a layout into a fresh <svg>; pan/zoom applies to the inner group. */
export function renderScene(doc: Document, layout: LayoutResult): SceneDom {
  const svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  const width = layout.width + 2 * MARGIN;
  const height = layout.height + 2 * MARGIN;
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));

  const viewportGroup = doc.createElementNS(SVG_NS, "g") as SVGGElement;
  viewportGroup.setAttribute("class", "viewport");
  svg.appendChild(viewportGroup);

  const byKey = new Map(layout.boxes.map((b) => [b.key, b]));
  const edgeGroup = doc.createElementNS(SVG_NS, "g");
  edgeGroup.setAttribute("class", "edges");
  for (const [parentKey, childKey] of layout.edges) {
    const parent = byKey.get(parentKey);
    const child = byKey.get(childKey);
    if (!parent || !child) continue;
    const line = doc.createElementNS(SVG_NS, "line");
    line.setAttribute("class", "edge");
    line.setAttribute("x1", String(parent.x + MARGIN));
    line.setAttribute("y1", String(parent.y + parent.height + MARGIN));
    line.setAttribute("x2", String(child.x + MARGIN));
    line.setAttribute("y2", String(child.y + MARGIN));
    edgeGroup.appendChild(line);
  }
  viewportGroup.appendChild(edgeGroup);

  const nodeGroups = new Map<string, SVGGElement>();
  const nodesGroup = doc.createElementNS(SVG_NS, "g");
  nodesGroup.setAttribute("class", "nodes");
  const ordered = [...layout.boxes].sort(
    (m, n) => m.depth - n.depth || m.x - n.x,
  );
  for (const box of ordered) {
    const group = doc.createElementNS(SVG_NS, "g") as SVGGElement;
    group.setAttribute("class", box.classes.join(" "));
    group.setAttribute("data-node-id", box.key);
    const rect = doc.createElementNS(SVG_NS, "rect");
    rect.setAttribute("x", String(box.x - box.width / 2 + MARGIN));
    rect.setAttribute("y", String(box.y + MARGIN));
    rect.setAttribute("width", String(box.width));
    rect.setAttribute("height", String(box.height));
    rect.setAttribute("rx", "6");
    const text = doc.createElementNS(SVG_NS, "text");
    text.setAttribute("x", String(box.x + MARGIN));
    text.setAttribute("y", String(box.y + box.height / 2 + MARGIN));
    text.textContent = box.label;
    group.appendChild(rect);
    group.appendChild(text);
    nodesGroup.appendChild(group);
    nodeGroups.set(box.key, group);
  }
  viewportGroup.appendChild(nodesGroup);
  return { svg, viewportGroup, nodeGroups };
}

export function applyViewport(
  dom: SceneDom,
  transform: { panX: number; panY: number; zoom: number },
): void {
  dom.viewportGroup.setAttribute(
    "transform",
    `translate(${transform.panX} ${transform.panY}) scale(${transform.zoom})`,
  );
}

export interface InfixStrip {
  element: HTMLElement;
  /** Character runs, each attributed to the deepest node covering it. */
  runs: { nodeId: string; span: HTMLSpanElement }[];
}

/** Build the hoverable infix overview; each run maps to its deepest node. */
export function renderInfixStrip(
  doc: Document,
  model: ExpressionViewModel,
): InfixStrip {
  const strip = doc.createElement("div");
  strip.className = "mextree-infix";
  const byChar: (string | null)[] = Array.from(model.infix, () => null);
  // widest spans first, so nested (narrower) spans overwrite their ancestors
  const entries = Object.entries(model.spans).sort(
    (a, b) => (b[1][1] - b[1][0]) - (a[1][1] - a[1][0]),
  );
  for (const [nodeId, [start, end]] of entries) {
    for (let i = start; i < end && i < byChar.length; i++) byChar[i] = nodeId;
  }
  const runs: { nodeId: string; span: HTMLSpanElement }[] = [];
  let i = 0;
  while (i < model.infix.length) {
    const nodeId = byChar[i] ?? null;
    let j = i;
    while (j < model.infix.length && (byChar[j] ?? null) === nodeId) j++;
    const span = doc.createElement("span");
    span.textContent = model.infix.slice(i, j);
    if (nodeId !== null) {
      span.dataset.nodeId = nodeId;
      runs.push({ nodeId, span });
    }
    strip.appendChild(span);
    i = j;
  }
  return { element: strip, runs };
}
