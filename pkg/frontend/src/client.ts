// API client for the cli-service endpoints.  One mutating request in
// flight at a time; the fetch function is injectable for tests.

import type { ApiError, GraphPayload, OrbitPayload } from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiClientError extends Error {
  status: number;
  code: string;

  constructor(status: number, payload: ApiError) {
    super(payload.error);
    this.status = status;
    this.code = payload.code;
  }
}

export class ApiClient {
  private base: string;
  private fetcher: FetchLike;
  private inFlight = false;

  constructor(base = "", fetcher?: FetchLike) {
    this.base = base;
    this.fetcher = fetcher ?? ((url, init) => fetch(url, init));
  }

  get busy(): boolean {
    return this.inFlight;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetcher(this.base + path, {
      method,
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiClientError(response.status, payload as ApiError);
    }
    return payload as T;
  }

  private async mutating<T>(method: string, path: string, body?: unknown): Promise<T> {
    if (this.inFlight) {
      throw new ApiClientError(409, {
        error: "another mutation is in flight",
        code: "busy",
      });
    }
    this.inFlight = true;
    try {
      return await this.request<T>(method, path, body);
    } finally {
      this.inFlight = false;
    }
  }

  graph(): Promise<GraphPayload> {
    return this.request<GraphPayload>("GET", "/graph");
  }

  mutate(label: number[]): Promise<GraphPayload> {
    return this.mutating<GraphPayload>("POST", "/mutate", { label });
  }

  reset(
    family: string,
    k: number,
    n: number,
    dihedral: { shift: number; reflected: boolean },
  ): Promise<GraphPayload> {
    return this.mutating<GraphPayload>("POST", "/reset", { family, k, n, dihedral });
  }

  orbit(): Promise<OrbitPayload> {
    return this.request<OrbitPayload>("GET", "/orbit");
  }
}
