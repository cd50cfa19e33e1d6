// Single-tree inspection widget: tree drawing plus the infix overview
// strip, with expand/collapse, pan/zoom, hover synchronization, and PNG
// export of the current visible state.

import { exportPng, type PngExport } from "./export.js";
import { expressionScene, tidyLayout, type LayoutResult } from "./layout.js";
import {
  applyViewport,
  ensureStyles,
  renderInfixStrip,
  renderScene,
  type SceneDom,
} from "./render.js";
import {
  collapsibleIds,
  initialState,
  reduce,
  type WidgetEvent,
  type WidgetState,
} from "./state.js";
import {
  validateExpressionViewModel,
  type ExpressionNode,
  type ExpressionViewModel,
} from "./types.js";

export interface TreeWidget {
  readonly state: WidgetState;
  readonly events: readonly WidgetEvent[];
  dispatch(event: WidgetEvent): void;
  visibleNodeIds(): string[];
  exportPng(scale?: number): Promise<PngExport>;
  destroy(): void;
}

export function mountTreeWidget(
  container: HTMLElement,
  viewModel: unknown,
): TreeWidget {
  const doc = container.ownerDocument;
  ensureStyles(doc);
  container.classList.add("mextree-widget");

  const problems = validateExpressionViewModel(viewModel);
  if (problems.length > 0) {
    const banner = doc.createElement("div");
    banner.className = "mextree-banner";
    banner.textContent = `payload does not match the tree schema: ${problems[0]}`;
    container.appendChild(banner);
    return inertWidget(container);
  }
  const model = viewModel as ExpressionViewModel;
  const collapsible = collapsibleIds([model.root]);
  const subtreeIds = indexSubtrees(model.root);

  let state = initialState();
  const events: WidgetEvent[] = [];
  let scene: SceneDom | null = null;
  let currentLayout: LayoutResult | null = null;

  const toolbar = doc.createElement("div");
  toolbar.className = "mextree-toolbar";
  const expandAll = doc.createElement("button");
  expandAll.textContent = "expand all";
  expandAll.addEventListener("click", () => dispatch({ type: "expand-all" }));
  const reset = doc.createElement("button");
  reset.textContent = "reset view";
  reset.addEventListener("click", () => dispatch({ type: "reset-view" }));
  toolbar.appendChild(expandAll);
  toolbar.appendChild(reset);
  container.appendChild(toolbar);

  const strip = renderInfixStrip(doc, model);
  for (const run of strip.runs) {
    run.span.addEventListener("mouseenter", () =>
      dispatch({ type: "hover-span", id: run.nodeId }),
    );
    run.span.addEventListener("mouseleave", () =>
      dispatch({ type: "hover-span", id: null }),
    );
  }
  container.appendChild(strip.element);

  const svgHost = doc.createElement("div");
  container.appendChild(svgHost);

  function dispatch(event: WidgetEvent): void {
    state = reduce(state, event, collapsible);
    events.push(event);
    render();
  }

  function render(): void {
    const collapsed = new Set(state.collapsed);
    currentLayout = tidyLayout([expressionScene(model.root, collapsed)]);
    svgHost.textContent = "";
    scene = renderScene(doc, currentLayout);
    applyViewport(scene, state.viewport);
    for (const [key, group] of scene.nodeGroups) {
      group.addEventListener("mouseenter", () =>
        dispatch({ type: "hover-node", id: key }),
      );
      group.addEventListener("mouseleave", () =>
        dispatch({ type: "hover-node", id: null }),
      );
      group.addEventListener("click", () =>
        dispatch({ type: "toggle-node", id: key }),
      );
    }
    svgHost.appendChild(scene.svg);
    applyHighlight();
  }

  function applyHighlight(): void {
    const target =
      state.hover === null ? null : subtreeIds.get(state.hover.id) ?? null;
    if (scene) {
      for (const [key, group] of scene.nodeGroups) {
        group.classList.toggle("highlight", target !== null && target.has(key));
      }
    }
    for (const run of strip.runs) {
      run.span.classList.toggle(
        "highlight",
        target !== null && target.has(run.nodeId),
      );
    }
  }

  render();

  return {
    get state() {
      return state;
    },
    get events() {
      return events;
    },
    dispatch,
    visibleNodeIds: () =>
      currentLayout ? currentLayout.boxes.map((b) => b.key) : [],
    exportPng: (scale = 4) => {
      if (!currentLayout) throw new Error("widget not rendered");
      const svgText = scene
        ? new XMLSerializer().serializeToString(scene.svg)
        : undefined;
      return exportPng(currentLayout, state.viewport, scale, svgText, doc);
    },
    destroy: () => {
      container.textContent = "";
      container.classList.remove("mextree-widget");
    },
  };
}

function inertWidget(container: HTMLElement): TreeWidget {
  return {
    state: initialState(),
    events: [],
    dispatch: () => undefined,
    visibleNodeIds: () => [],
    exportPng: () => Promise.reject(new Error("invalid payload")),
    destroy: () => {
      container.textContent = "";
    },
  };
}

function indexSubtrees(root: ExpressionNode): Map<string, Set<string>> {
  const index = new Map<string, Set<string>>();
  const visit = (node: ExpressionNode): Set<string> => {
    const ids = new Set<string>([node.id]);
    for (const child of node.children) {
      for (const id of visit(child)) ids.add(id);
    }
    index.set(node.id, ids);
    return ids;
  };
  visit(root);
  return index;
}
