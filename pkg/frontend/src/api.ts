// Thin typed client over the session API; fetch is injectable for tests.

import type {
  ApiErrorBody, CheckResult, SessionResponse, SessionState,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(public status: number, public body: ApiErrorBody) {
    super(body.message);
  }

  legalMoves(): string[] {
    const details = this.body.details as { legal_moves?: string[] } | undefined;
    return details?.legal_moves ?? [];
  }
}

export class ApiClient {
  constructor(
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
    private base: string = "",
  ) {}

  private async request<T>(method: string, url: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(this.base + url, init);
    if (response.status === 204) {
      return undefined as T;
    }
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiRequestError(response.status, payload as ApiErrorBody);
    }
    return payload as T;
  }

  check(proof: string, mode: string): Promise<CheckResult> {
    return this.request("POST", "/api/check", { proof, mode });
  }

  createSession(proof: string, mode: string,
                interpretation?: Record<string, boolean>): Promise<SessionResponse> {
    const body: Record<string, unknown> = { proof, mode };
    if (interpretation) {
      body.interpretation = interpretation;
    }
    return this.request("POST", "/api/sessions", body);
  }

  getSession(id: string): Promise<{ state: SessionState }> {
    return this.request("GET", `/api/sessions/${id}`);
  }

  move(id: string, move: string): Promise<{ state: SessionState }> {
    return this.request("POST", `/api/sessions/${id}/moves`, { move });
  }

  stop(id: string): Promise<{ state: SessionState }> {
    return this.request("POST", `/api/sessions/${id}/stop`);
  }

  remove(id: string): Promise<void> {
    return this.request("DELETE", `/api/sessions/${id}`);
  }
}
