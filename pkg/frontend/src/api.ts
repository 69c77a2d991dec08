/**
 * Typed client for the rowtree service. One method per route, JSON in
 * and out. Failures surface as ApiError carrying the service's error
 * code (and the failing op index for rejected batches) so callers can
 * tell a bad gesture from a dead server.
 */

import type {
  AutoMatrixResult,
  DatasetInfo,
  LayoutDocument,
  Operation,
  PathsDocument,
  SearchResult,
  ServiceError,
  SessionEnvelope,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly opIndex?: number;

  constructor(status: number, body: ServiceError) {
    super(body.message || `request failed with status ${status}`);
    this.name = "ApiError";
    this.status = status;
    this.code = body.code || "unknown";
    if (typeof body.opIndex === "number") this.opIndex = body.opIndex;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base = "", fetchFn: FetchLike = (u, i) => fetch(u, i)) {
    // keep path joining predictable: base never ends with a slash
    this.base = base.replace(/\/+$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.base + path, init);
    if (!resp.ok) {
      let body: ServiceError;
      try {
        body = (await resp.json()) as ServiceError;
      } catch {
        body = { code: "unknown", message: `status ${resp.status}` };
      }
      throw new ApiError(resp.status, body);
    }
    return (await resp.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  listDatasets(): Promise<DatasetInfo[]> {
    return this.request<DatasetInfo[]>("/datasets");
  }

  search(dataset: string, query: string): Promise<SearchResult> {
    const q = encodeURIComponent(query);
    return this.request<SearchResult>(`/datasets/${encodeURIComponent(dataset)}/search?q=${q}`);
  }

  createSession(dataset: string): Promise<SessionEnvelope> {
    return this.post<SessionEnvelope>("/sessions", { dataset });
  }

  applyOps(sessionId: string, ops: Operation[]): Promise<SessionEnvelope> {
    return this.post<SessionEnvelope>(`/sessions/${encodeURIComponent(sessionId)}/ops`, ops);
  }

  fetchLayout(sessionId: string): Promise<LayoutDocument> {
    return this.request<LayoutDocument>(`/sessions/${encodeURIComponent(sessionId)}/layout`);
  }

  findPaths(sessionId: string, a: string, b: string): Promise<PathsDocument> {
    return this.post<PathsDocument>(`/sessions/${encodeURIComponent(sessionId)}/paths`, { a, b });
  }

  autoMatrix(sessionId: string, k?: number): Promise<AutoMatrixResult> {
    const suffix = k === undefined ? "" : `?k=${k}`;
    return this.request<AutoMatrixResult>(
      `/sessions/${encodeURIComponent(sessionId)}/matrix/auto${suffix}`,
    );
  }
}
