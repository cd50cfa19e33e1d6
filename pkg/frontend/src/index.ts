export { ApiClient, ApiError } from "./api.js";
export { encodePng, exportPng, rasterizeScene } from "./export.js";
export {
  expressionScene,
  mergedScene,
  tidyLayout,
  type LayoutBox,
  type LayoutResult,
  type SceneNode,
} from "./layout.js";
export {
  collapsibleIds,
  initialState,
  reduce,
  replay,
  IDENTITY,
  type WidgetEvent,
  type WidgetState,
} from "./state.js";
export { mountSimilarityWidget, type SimilarityWidget } from "./similarityWidget.js";
export { mountTreeWidget, type TreeWidget } from "./treeWidget.js";
export {
  validateExpressionViewModel,
  validateMergedViewModel,
  type CompareResult,
  type ExpressionNode,
  type ExpressionViewModel,
  type MergedNode,
  type MergedViewModel,
} from "./types.js";

import { ApiClient } from "./api.js";
import { mountTreeWidget, type TreeWidget } from "./treeWidget.js";

/**
 * Mount a tree widget configured through data attributes on the host
 * element: `data-service-url` names the service base URL and
 * `data-mathml` holds the markup to request.
 */
export async function mountFromDataAttributes(
  container: HTMLElement,
): Promise<TreeWidget | null> {
  const serviceUrl = container.dataset.serviceUrl;
  const mathml = container.dataset.mathml;
  if (!serviceUrl || !mathml) {
    throw new Error("data-service-url and data-mathml are required");
  }
  const client = new ApiClient(serviceUrl);
  const model = await client.fetchTree(mathml);
  if (model === null) return null; // a newer request superseded this one
  return mountTreeWidget(container, model);
}
