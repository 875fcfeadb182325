// Thin typed client for the play service. Every rule decision stays on the
// server; this module only moves JSON around.

import type {
  HintResponse, NewGameRequest, SessionState, SolvableResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public payload: unknown) {
    super(`server returned ${status}`);
  }
}

export class ApiClient {
  constructor(private baseUrl: string = "") {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const payload = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      throw new ApiError(resp.status, payload);
    }
    return payload as T;
  }

  newSession(req: NewGameRequest): Promise<SessionState> {
    return this.request<SessionState>("POST", "/api/session", req);
  }

  getSession(id: string): Promise<SessionState> {
    return this.request<SessionState>("GET", `/api/session/${id}`);
  }

  move(id: string, label: number, to: string): Promise<SessionState> {
    return this.request<SessionState>("POST", `/api/session/${id}/move`, { label, to });
  }

  hint(id: string): Promise<HintResponse> {
    return this.request<HintResponse>("GET", `/api/session/${id}/hint`);
  }

  solvable(id: string): Promise<SolvableResponse> {
    return this.request<SolvableResponse>("GET", `/api/session/${id}/solvable`);
  }
}
