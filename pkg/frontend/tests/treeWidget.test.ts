import { beforeEach, describe, expect, it } from "vitest";

import { mountTreeWidget } from "../src/treeWidget.js";
import { expressionFixture, mountPoint } from "./helpers.js";

beforeEach(() => {
  document.body.textContent = "";
});

function visibleGroups(host: HTMLElement): Element[] {
  return [...host.querySelectorAll("g.node")];
}

describe("tree widget", () => {
  it("renders the fixture payload with four nodes and a dashed head", () => {
    const host = mountPoint();
    mountTreeWidget(host, expressionFixture());
    const groups = visibleGroups(host);
    expect(groups.length).toBe(4);
    const dashed = groups.filter((g) => g.classList.contains("ambiguous-dashed"));
    expect(dashed.length).toBe(1);
    expect(dashed[0]!.querySelector("text")!.textContent).toBe("f");
  });

  it("collapsing the plus node hides two nodes; expand-all restores them", () => {
    const host = mountPoint();
    const model = expressionFixture();
    const widget = mountTreeWidget(host, model);
    const plusId = model.root.children[0]!.id;

    widget.dispatch({ type: "toggle-node", id: plusId });
    expect(widget.visibleNodeIds().length).toBe(2);
    expect(visibleGroups(host).length).toBe(2);
    const collapsed = visibleGroups(host).find((g) =>
      g.classList.contains("collapsed"),
    );
    expect(collapsed?.getAttribute("data-node-id")).toBe(plusId);

    widget.dispatch({ type: "expand-all" });
    expect(widget.visibleNodeIds().length).toBe(4);
    expect(widget.state.collapsed).toEqual([]);
  });

  it("clicking a node toggles its collapse state", () => {
    const host = mountPoint();
    const model = expressionFixture();
    const widget = mountTreeWidget(host, model);
    const plusId = model.root.children[0]!.id;
    const group = host.querySelector(`g[data-node-id="${plusId}"]`)!;
    group.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(widget.state.collapsed).toEqual([plusId]);
  });

  it("renders the infix overview with hoverable spans", () => {
    const host = mountPoint();
    mountTreeWidget(host, expressionFixture());
    const strip = host.querySelector(".mextree-infix")!;
    expect(strip.textContent).toBe("f(a + b)");
  });

  it("hovering the plus span highlights the plus subtree", () => {
    const host = mountPoint();
    const model = expressionFixture();
    const widget = mountTreeWidget(host, model);
    const plusId = model.root.children[0]!.id;
    const span = host.querySelector(
      `.mextree-infix span[data-node-id="${plusId}"]`,
    )!;
    span.dispatchEvent(new MouseEvent("mouseenter", { bubbles: false }));

    expect(widget.state.hover).toEqual({ type: "span", id: plusId });
    const highlighted = visibleGroups(host)
      .filter((g) => g.classList.contains("highlight"))
      .map((g) => g.getAttribute("data-node-id"));
    const subtree = [plusId, ...model.root.children[0]!.children.map((c) => c.id)];
    expect(new Set(highlighted)).toEqual(new Set(subtree));
    const litSpans = [
      ...host.querySelectorAll(".mextree-infix span.highlight"),
    ].map((s) => s.textContent).join("");
    expect(litSpans).toBe("a + b");
  });

  it("hovering a node highlights its infix range", () => {
    const host = mountPoint();
    const model = expressionFixture();
    const widget = mountTreeWidget(host, model);
    widget.dispatch({ type: "hover-node", id: model.root.id });
    const lit = [...host.querySelectorAll(".mextree-infix span.highlight")]
      .map((s) => s.textContent)
      .join("");
    expect(lit).toBe("f(a + b)");
  });

  it("toolbar buttons expand all nodes and reset the viewport", () => {
    const host = mountPoint();
    const model = expressionFixture();
    const widget = mountTreeWidget(host, model);
    widget.dispatch({ type: "toggle-node", id: model.root.id });
    widget.dispatch({ type: "zoom", factor: 3 });
    widget.dispatch({ type: "pan", dx: 4, dy: 4 });

    const [expandAll, reset] = [...host.querySelectorAll("button")];
    expandAll!.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(widget.state.collapsed).toEqual([]);
    reset!.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    expect(widget.state.viewport).toEqual({ panX: 0, panY: 0, zoom: 1 });
    const transform = host.querySelector("g.viewport")!.getAttribute("transform");
    expect(transform).toBe("translate(0 0) scale(1)");
  });

  it("interactions never mutate the view model", () => {
    const model = expressionFixture();
    const frozen = JSON.stringify(model);
    const widget = mountTreeWidget(mountPoint(), model);
    widget.dispatch({ type: "toggle-node", id: model.root.children[0]!.id });
    widget.dispatch({ type: "zoom", factor: 2 });
    widget.dispatch({ type: "hover-node", id: model.root.id });
    expect(JSON.stringify(model)).toBe(frozen);
  });

  it("shows a schema banner for invalid payloads", () => {
    const host = mountPoint();
    const widget = mountTreeWidget(host, { nonsense: true });
    expect(host.querySelector(".mextree-banner")).not.toBeNull();
    expect(widget.visibleNodeIds()).toEqual([]);
  });
});
