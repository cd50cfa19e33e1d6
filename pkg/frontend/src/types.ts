// View model types matching schemas/tree-view-model.schema.json.

export interface ExpressionNode {
  id: string;
  kind: string;
  display: string;
  glyph?: string;
  ambiguous?: boolean;
  qualifierRole?: string;
  children: ExpressionNode[];
}

export interface ExpressionViewModel {
  root: ExpressionNode;
  infix: string;
  spans: Record<string, [number, number]>;
}

export type Origin = "A" | "B" | "both";
export type Grade = "similar" | "identical";

export interface MergedNode {
  id: string;
  kind: string;
  display: string;
  glyph?: string;
  origin: Origin;
  grade?: Grade;
  collapsed?: boolean;
  hiddenCount?: number;
  sourceIds: string[];
  ref?: string;
  children: MergedNode[];
}

export interface MergedViewModel {
  roots: MergedNode[];
}

export interface CompareResult {
  treeA: ExpressionViewModel;
  treeB: ExpressionViewModel;
  merged: MergedViewModel;
  spec: { idA: string; idB: string; grade: Grade }[];
}

function isObject(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function checkExpressionNode(value: unknown, path: string, problems: string[]): void {
  if (!isObject(value)) {
    problems.push(`${path}: expected an object`);
    return;
  }
  for (const key of ["id", "kind", "display"] as const) {
    if (typeof value[key] !== "string") {
      problems.push(`${path}.${key}: expected a string`);
    }
  }
  if (!Array.isArray(value.children)) {
    problems.push(`${path}.children: expected an array`);
    return;
  }
  value.children.forEach((child, i) =>
    checkExpressionNode(child, `${path}.children[${i}]`, problems),
  );
}

export function validateExpressionViewModel(value: unknown): string[] {
  const problems: string[] = [];
  if (!isObject(value)) return ["payload: expected an object"];
  checkExpressionNode(value.root, "root", problems);
  if (typeof value.infix !== "string") problems.push("infix: expected a string");
  if (!isObject(value.spans)) {
    problems.push("spans: expected an object");
  } else {
    for (const [id, span] of Object.entries(value.spans)) {
      if (
        !Array.isArray(span) ||
        span.length !== 2 ||
        span.some((v) => typeof v !== "number")
      ) {
        problems.push(`spans[${id}]: expected [start, end]`);
      }
    }
  }
  return problems;
}

function checkMergedNode(value: unknown, path: string, problems: string[]): void {
  if (!isObject(value)) {
    problems.push(`${path}: expected an object`);
    return;
  }
  for (const key of ["id", "kind", "display"] as const) {
    if (typeof value[key] !== "string") {
      problems.push(`${path}.${key}: expected a string`);
    }
  }
  if (value.origin !== "A" && value.origin !== "B" && value.origin !== "both") {
    problems.push(`${path}.origin: expected "A", "B", or "both"`);
  }
  if (!Array.isArray(value.sourceIds) || value.sourceIds.some((s) => typeof s !== "string")) {
    problems.push(`${path}.sourceIds: expected an array of strings`);
  }
  if (!Array.isArray(value.children)) {
    problems.push(`${path}.children: expected an array`);
    return;
  }
  value.children.forEach((child, i) =>
    checkMergedNode(child, `${path}.children[${i}]`, problems),
  );
}

export function validateMergedViewModel(value: unknown): string[] {
  const problems: string[] = [];
  if (!isObject(value)) return ["payload: expected an object"];
  if (!Array.isArray(value.roots) || value.roots.length === 0) {
    return ["roots: expected a non-empty array"];
  }
  value.roots.forEach((root, i) => checkMergedNode(root, `roots[${i}]`, problems));
  return problems;
}
