// Widget interaction state and its pure event reducer.
//
// Rendering is a function of (view model, state); replaying an event log
// against the same view model reproduces the exact view.  The view model
// itself is never mutated.

import type { ExpressionNode, MergedNode } from "./types.js";

export interface ViewportTransform {
  panX: number;
  panY: number;
  zoom: number;
}

export type HoverTarget =
  | { type: "node"; id: string }
  | { type: "span"; id: string }
  | null;

export interface WidgetState {
  collapsed: readonly string[];
  viewport: ViewportTransform;
  hover: HoverTarget;
}

export type WidgetEvent =
  | { type: "toggle-node"; id: string }
  | { type: "expand-all" }
  | { type: "pan"; dx: number; dy: number }
  | { type: "zoom"; factor: number }
  | { type: "reset-view" }
  | { type: "hover-node"; id: string | null }
  | { type: "hover-span"; id: string | null };

export const IDENTITY: ViewportTransform = { panX: 0, panY: 0, zoom: 1 };

const MIN_ZOOM = 0.05;
const MAX_ZOOM = 40;

export function initialState(): WidgetState {
  return { collapsed: [], viewport: IDENTITY, hover: null };
}

/** Node ids that may carry a collapse flag (only nodes with children). */
export function collapsibleIds(roots: (ExpressionNode | MergedNode)[]): Set<string> {
  const ids = new Set<string>();
  const visit = (node: ExpressionNode | MergedNode): void => {
    if (node.children.length > 0) ids.add(node.id);
    node.children.forEach(visit);
  };
  roots.forEach(visit);
  return ids;
}

export function reduce(
  state: WidgetState,
  event: WidgetEvent,
  collapsible: Set<string>,
): WidgetState {
  switch (event.type) {
    case "toggle-node": {
      if (!collapsible.has(event.id)) return state;
      const collapsed = state.collapsed.includes(event.id)
        ? state.collapsed.filter((id) => id !== event.id)
        : [...state.collapsed, event.id];
      return { ...state, collapsed };
    }
    case "expand-all":
      return { ...state, collapsed: [] };
    case "pan":
      return {
        ...state,
        viewport: {
          ...state.viewport,
          panX: state.viewport.panX + event.dx,
          panY: state.viewport.panY + event.dy,
        },
      };
    case "zoom": {
      const zoom = Math.min(
        MAX_ZOOM,
        Math.max(MIN_ZOOM, state.viewport.zoom * event.factor),
      );
      return { ...state, viewport: { ...state.viewport, zoom } };
    }
    case "reset-view":
      return { ...state, viewport: IDENTITY };
    case "hover-node":
      return { ...state, hover: event.id === null ? null : { type: "node", id: event.id } };
    case "hover-span":
      return { ...state, hover: event.id === null ? null : { type: "span", id: event.id } };
  }
}

export function replay(
  events: WidgetEvent[],
  collapsible: Set<string>,
): WidgetState {
  return events.reduce(
    (state, event) => reduce(state, event, collapsible),
    initialState(),
  );
}
