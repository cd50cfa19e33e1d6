// UI smoke: the widget-level release criteria in one place.

import { beforeEach, describe, expect, it } from "vitest";

import { mountSimilarityWidget } from "../src/similarityWidget.js";
import { mountTreeWidget } from "../src/treeWidget.js";
import type { ExpressionViewModel } from "../src/types.js";
import {
  compareIdenticalFixture,
  compareTaxonomicFixture,
  expressionFixture,
  mountPoint,
} from "./helpers.js";

const PNG_SIGNATURE = [0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a];

beforeEach(() => {
  document.body.textContent = "";
});

describe("ui smoke", () => {
  it("tree widget: fixture mounts with 4 nodes and a dashed head", () => {
    const host = mountPoint();
    mountTreeWidget(host, expressionFixture());
    const groups = [...host.querySelectorAll("g.node")];
    expect(groups.length).toBe(4);
    const dashed = groups.filter((g) => g.classList.contains("ambiguous-dashed"));
    expect(dashed.length).toBe(1);
    expect(dashed[0]!.querySelector("text")!.textContent).toBe("f");
  });

  it("tree widget: single-leaf payload renders one node and a 1-char infix", () => {
    const host = mountPoint();
    const leaf: ExpressionViewModel = {
      root: { id: "gen:1", kind: "leaf_identifier", display: "x", children: [] },
      infix: "x",
      spans: { "gen:1": [0, 1] },
    };
    const widget = mountTreeWidget(host, leaf);
    expect(widget.visibleNodeIds()).toEqual(["gen:1"]);
    expect(host.querySelector(".mextree-infix")!.textContent).toBe("x");
  });

  it("collapsing the plus node hides 2 nodes; expand-all restores them", () => {
    const model = expressionFixture();
    const widget = mountTreeWidget(mountPoint(), model);
    const plusId = model.root.children[0]!.id;
    widget.dispatch({ type: "toggle-node", id: plusId });
    expect(widget.visibleNodeIds().length).toBe(2);
    widget.dispatch({ type: "expand-all" });
    expect(widget.visibleNodeIds().length).toBe(4);
  });

  it("hovering the plus infix span highlights the plus subtree", () => {
    const host = mountPoint();
    const model = expressionFixture();
    mountTreeWidget(host, model);
    const plusId = model.root.children[0]!.id;
    host
      .querySelector(`.mextree-infix span[data-node-id="${plusId}"]`)!
      .dispatchEvent(new MouseEvent("mouseenter"));
    const lit = [...host.querySelectorAll("g.node.highlight")].map((g) =>
      g.getAttribute("data-node-id"),
    );
    expect(new Set(lit)).toEqual(
      new Set([plusId, ...model.root.children[0]!.children.map((c) => c.id)]),
    );
  });

  it("similarity widget unifies identical pairs and highlights similar ones", () => {
    const host = mountPoint();
    mountSimilarityWidget(host, compareIdenticalFixture());
    expect(host.querySelectorAll(".mextree-merged g.node.unified").length).toBe(3);

    const hostTax = mountPoint();
    mountSimilarityWidget(hostTax, compareTaxonomicFixture());
    expect(
      hostTax.querySelectorAll(".mextree-merged g.node.similar-highlight").length,
    ).toBe(2);
  });

  it("png export yields a non-empty image at 4x scale", async () => {
    const widget = mountTreeWidget(mountPoint(), expressionFixture());
    const { bytes, meta } = await widget.exportPng(4);
    expect(meta.scale).toBe(4);
    expect(bytes.length).toBeGreaterThan(1000);
    expect([...bytes.slice(0, 8)]).toEqual(PNG_SIGNATURE);
  });
});
