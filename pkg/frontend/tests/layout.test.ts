import { describe, expect, it } from "vitest";

import {
  expressionScene,
  mergedScene,
  tidyLayout,
  NODE_GAP,
} from "../src/layout.js";
import {
  compareIdenticalFixture,
  expressionFixture,
} from "./helpers.js";

const model = expressionFixture();

describe("scene building", () => {
  it("keeps the full tree when nothing is collapsed", () => {
    const scene = expressionScene(model.root, new Set());
    const count = (n: typeof scene): number =>
      1 + n.children.reduce((acc, c) => acc + count(c), 0);
    expect(count(scene)).toBe(4);
  });

  it("drops children of collapsed nodes and tags the class", () => {
    const plusId = model.root.children[0]!.id;
    const scene = expressionScene(model.root, new Set([plusId]));
    expect(scene.children.length).toBe(1);
    const plus = scene.children[0]!;
    expect(plus.children).toEqual([]);
    expect(plus.classes).toContain("collapsed");
  });

  it("marks the dangling-xref node as dashed", () => {
    const scene = expressionScene(model.root, new Set());
    expect(scene.classes).toContain("ambiguous-dashed");
  });

  it("derives merged classes from origin and grade", () => {
    const merged = compareIdenticalFixture().merged;
    const scenes = merged.roots.map((r) => mergedScene(r, new Set()));
    const classes: string[][] = [];
    const visit = (n: (typeof scenes)[number]): void => {
      classes.push(n.classes);
      n.children.forEach(visit);
    };
    scenes.forEach(visit);
    expect(classes.filter((c) => c.includes("unified")).length).toBe(3);
    expect(classes.filter((c) => c.includes("ref-stub")).length).toBe(1);
  });
});

describe("tidy layout", () => {
  it("centers parents over the midpoint of their children", () => {
    const layout = tidyLayout([expressionScene(model.root, new Set())]);
    const byKey = new Map(layout.boxes.map((b) => [b.key, b]));
    const root = byKey.get(model.root.id)!;
    const plus = byKey.get(model.root.children[0]!.id)!;
    const [a, b] = model.root.children[0]!.children;
    expect(root.x).toBeCloseTo(plus.x);
    expect(plus.x).toBeCloseTo((byKey.get(a!.id)!.x + byKey.get(b!.id)!.x) / 2);
  });

  it("keeps boxes at the same depth separated by the gap", () => {
    const layout = tidyLayout([expressionScene(model.root, new Set())]);
    const byDepth = new Map<number, typeof layout.boxes>();
    for (const box of layout.boxes) {
      const bucket = byDepth.get(box.depth) ?? [];
      bucket.push(box);
      byDepth.set(box.depth, bucket);
    }
    for (const bucket of byDepth.values()) {
      bucket.sort((m, n) => m.x - n.x);
      for (let i = 1; i < bucket.length; i++) {
        const prev = bucket[i - 1]!;
        const next = bucket[i]!;
        expect(next.x - next.width / 2 - (prev.x + prev.width / 2))
          .toBeGreaterThanOrEqual(NODE_GAP - 1e-9);
      }
    }
  });

  it("lays two merged roots out side by side", () => {
    const merged = compareIdenticalFixture().merged;
    const layout = tidyLayout(merged.roots.map((r) => mergedScene(r, new Set())));
    const keysA = new Set<string>();
    const collect = (n: ReturnType<typeof mergedScene>): void => {
      keysA.add(n.key);
      n.children.forEach(collect);
    };
    collect(mergedScene(merged.roots[0]!, new Set()));
    const rightmostA = Math.max(
      ...layout.boxes.filter((b) => keysA.has(b.key)).map((b) => b.x + b.width / 2),
    );
    const leftmostB = Math.min(
      ...layout.boxes.filter((b) => !keysA.has(b.key)).map((b) => b.x - b.width / 2),
    );
    expect(leftmostB).toBeGreaterThan(rightmostA);
  });
});
