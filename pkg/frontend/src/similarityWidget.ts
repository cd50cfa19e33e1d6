// Two-tree similarity widget: both source trees on top, the combined tree
// below.  Hovering a combined node highlights its source subtree(s) in the
// upper panels; reference stubs resolve to the unified node they point at.

import { mergedScene, tidyLayout } from "./layout.js";
import { applyViewport, ensureStyles, renderScene, type SceneDom } from "./render.js";
import { initialState, reduce, collapsibleIds, type WidgetEvent, type WidgetState } from "./state.js";
import { mountTreeWidget, type TreeWidget } from "./treeWidget.js";
import {
  validateExpressionViewModel,
  validateMergedViewModel,
  type MergedNode,
  type MergedViewModel,
  type CompareResult,
} from "./types.js";

export interface SimilarityWidget {
  readonly state: WidgetState;
  panelA: TreeWidget;
  panelB: TreeWidget;
  dispatch(event: WidgetEvent): void;
  visibleMergedIds(): string[];
  destroy(): void;
}

export function mountSimilarityWidget(
  container: HTMLElement,
  payload: unknown,
): SimilarityWidget {
  const doc = container.ownerDocument;
  ensureStyles(doc);
  container.classList.add("mextree-widget");

  const problems = validatePayload(payload);
  if (problems.length > 0) {
    const banner = doc.createElement("div");
    banner.className = "mextree-banner";
    banner.textContent = `payload does not match the comparison schema: ${problems[0]}`;
    container.appendChild(banner);
    return inert(container);
  }
  const result = payload as CompareResult;

  const upper = doc.createElement("div");
  upper.style.display = "flex";
  const hostA = doc.createElement("div");
  hostA.className = "mextree-panel-a";
  const hostB = doc.createElement("div");
  hostB.className = "mextree-panel-b";
  upper.appendChild(hostA);
  upper.appendChild(hostB);
  container.appendChild(upper);

  const panelA = mountTreeWidget(hostA, result.treeA);
  const panelB = mountTreeWidget(hostB, result.treeB);

  const mergedHost = doc.createElement("div");
  mergedHost.className = "mextree-merged";
  container.appendChild(mergedHost);

  const sources = indexSources(result.merged);
  const collapsible = collapsibleIds(result.merged.roots);
  let state = initialState();
  let scene: SceneDom | null = null;
  let visible: string[] = [];

  function dispatch(event: WidgetEvent): void {
    state = reduce(state, event, collapsible);
    render();
  }

  function render(): void {
    const collapsed = new Set(state.collapsed);
    const layout = tidyLayout(
      result.merged.roots.map((root) => mergedScene(root, collapsed)),
    );
    visible = layout.boxes.map((b) => b.key);
    mergedHost.textContent = "";
    scene = renderScene(doc, layout);
    applyViewport(scene, state.viewport);
    for (const [key, group] of scene.nodeGroups) {
      group.addEventListener("mouseenter", () =>
        dispatch({ type: "hover-node", id: key }),
      );
      group.addEventListener("mouseleave", () =>
        dispatch({ type: "hover-node", id: null }),
      );
    }
    mergedHost.appendChild(scene.svg);
    applyCrossHighlight();
  }

  function applyCrossHighlight(): void {
    const hovered = state.hover?.type === "node" ? state.hover.id : null;
    const lookup = hovered === null ? null : sources.get(hovered) ?? null;
    panelA.dispatch({ type: "hover-node", id: lookup?.a ?? null });
    panelB.dispatch({ type: "hover-node", id: lookup?.b ?? null });
    if (scene && hovered !== null) {
      scene.nodeGroups.get(hovered)?.classList.add("highlight");
    }
  }

  render();

  return {
    get state() {
      return state;
    },
    panelA,
    panelB,
    dispatch,
    visibleMergedIds: () => visible,
    destroy: () => {
      panelA.destroy();
      panelB.destroy();
      container.textContent = "";
      container.classList.remove("mextree-widget");
    },
  };
}

function validatePayload(payload: unknown): string[] {
  if (typeof payload !== "object" || payload === null) {
    return ["payload: expected an object"];
  }
  const record = payload as Record<string, unknown>;
  return [
    ...validateExpressionViewModel(record.treeA).map((p) => `treeA.${p}`),
    ...validateExpressionViewModel(record.treeB).map((p) => `treeB.${p}`),
    ...validateMergedViewModel(record.merged).map((p) => `merged.${p}`),
  ];
}

interface SourceRefs {
  a: string | null;
  b: string | null;
}

function indexSources(merged: MergedViewModel): Map<string, SourceRefs> {
  const byId = new Map<string, MergedNode>();
  const visit = (node: MergedNode): void => {
    byId.set(node.id, node);
    node.children.forEach(visit);
  };
  merged.roots.forEach(visit);

  const index = new Map<string, SourceRefs>();
  for (const [id, node] of byId) {
    let target = node;
    if (node.ref !== undefined) {
      target = byId.get(node.ref) ?? node;
    }
    if (target.origin === "both") {
      index.set(id, { a: target.sourceIds[0] ?? null, b: target.sourceIds[1] ?? null });
    } else if (target.origin === "A") {
      index.set(id, { a: target.sourceIds[0] ?? null, b: null });
    } else {
      index.set(id, { a: null, b: target.sourceIds[0] ?? null });
    }
  }
  return index;
}

function inert(container: HTMLElement): SimilarityWidget {
  const empty = {
    state: initialState(),
    events: [] as WidgetEvent[],
    dispatch: () => undefined,
    visibleNodeIds: () => [] as string[],
    exportPng: () => Promise.reject(new Error("invalid payload")),
    destroy: () => undefined,
  };
  return {
    state: initialState(),
    panelA: empty,
    panelB: empty,
    dispatch: () => undefined,
    visibleMergedIds: () => [],
    destroy: () => {
      container.textContent = "";
    },
  };
}
