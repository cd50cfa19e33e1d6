// Service client.  Responses arriving after a newer request for the same
// channel has been issued are discarded, keyed by request sequence number,
// so a slow older response can never clobber a fresh view.

import type { CompareResult, ExpressionViewModel, Grade } from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; text(): Promise<string> }>;

export interface CompareRequest {
  mathmlA: string;
  mathmlB: string;
  spec?: { idA: string; idB: string; grade: Grade }[];
  measure?: "identical" | "taxonomic";
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  private sequence = 0;
  private delivered = new Map<string, number>();

  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (...args) =>
      (globalThis.fetch as unknown as FetchLike)(...args),
  ) {}

  /** null means the response was stale and has been discarded. */
  private async request<T>(channel: string, url: string, init: {
    method: string;
    headers: Record<string, string>;
    body: string;
  }): Promise<T | null> {
    const seq = ++this.sequence;
    const response = await this.fetchFn(this.baseUrl + url, init);
    const text = await response.text();
    if ((this.delivered.get(channel) ?? 0) > seq) return null;
    this.delivered.set(channel, seq);
    if (!response.ok) throw new ApiError(response.status, text);
    return JSON.parse(text) as T;
  }

  fetchTree(mathml: string): Promise<ExpressionViewModel | null> {
    return this.request<ExpressionViewModel>("tree", "/v1/tree", {
      method: "POST",
      headers: { "Content-Type": "application/mathml+xml" },
      body: mathml,
    });
  }

  compare(body: CompareRequest): Promise<CompareResult | null> {
    return this.request<CompareResult>("compare", "/v1/compare", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async convertLatex(latex: string): Promise<string | null> {
    const seq = ++this.sequence;
    const response = await this.fetchFn(this.baseUrl + "/v1/convert", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ latex }),
    });
    const text = await response.text();
    if ((this.delivered.get("convert") ?? 0) > seq) return null;
    this.delivered.set("convert", seq);
    if (!response.ok) throw new ApiError(response.status, text);
    return text;
  }
}
