import { readFileSync } from "node:fs";
import { join } from "node:path";

import type { CompareResult, ExpressionViewModel } from "../src/types.js";

export function loadFixture<T>(name: string): T {
  const path = join(process.cwd(), "tests", "fixtures", name);
  return JSON.parse(readFileSync(path, "utf-8")) as T;
}

export const expressionFixture = (): ExpressionViewModel =>
  loadFixture<ExpressionViewModel>("expression.json");

export const compareIdenticalFixture = (): CompareResult =>
  loadFixture<CompareResult>("compare_identical.json");

export const compareEmptySpecFixture = (): CompareResult =>
  loadFixture<CompareResult>("compare_empty_spec.json");

export const compareTaxonomicFixture = (): CompareResult =>
  loadFixture<CompareResult>("compare_taxonomic.json");

export function mountPoint(): HTMLElement {
  const host = document.createElement("div");
  document.body.appendChild(host);
  return host;
}
