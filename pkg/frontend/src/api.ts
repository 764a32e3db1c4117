/** Typed client for the engine's /v1/ session endpoints.
 *
 * All mutation math happens server-side; the client only moves JSON.
 */

export interface QuiverEdge {
  from: number;
  to: number;
  val: [number, number];
}

export interface QuiverObj {
  n: number;
  edges: QuiverEdge[];
  symmetrizer?: number[];
  frozen?: number[];
}

export interface LoopWitness {
  sigma: number[];
  sigma_cycles: string;
  sign: number;
}

export interface LoopStatus {
  strict: boolean;
  symmetric: boolean;
  witness: LoopWitness | null;
}

export interface SessionState {
  id: string;
  n: number;
  mode: { kind: string; allow_sign: boolean };
  history: number[];
  cluster: string[];
  cluster_expanded: string[];
  quiver: Required<QuiverObj>;
  loop: LoopStatus;
}

export class ApiError extends Error {
  constructor(readonly status: number, readonly detail: string) {
    super(detail);
  }
}

async function request(url: string, init?: RequestInit): Promise<SessionState> {
  const resp = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const body = await resp.json();
  if (!resp.ok) {
    const detail = typeof body?.detail === "string" ? body.detail : resp.statusText;
    throw new ApiError(resp.status, detail);
  }
  return body as SessionState;
}

export class SessionApi {
  constructor(readonly baseUrl: string) {}

  createSession(quiver: QuiverObj, mode?: { kind: string; allow_sign?: boolean }) {
    return request(`${this.baseUrl}/v1/sessions`, {
      method: "POST",
      body: JSON.stringify(mode ? { quiver, mode } : { quiver }),
    });
  }

  getState(id: string) {
    return request(`${this.baseUrl}/v1/sessions/${id}`);
  }

  mutate(id: string, vertex: number) {
    return request(`${this.baseUrl}/v1/sessions/${id}/mutate`, {
      method: "POST",
      body: JSON.stringify({ vertex }),
    });
  }

  undo(id: string) {
    return request(`${this.baseUrl}/v1/sessions/${id}/undo`, { method: "POST" });
  }

  replayWord(id: string, word: number[]) {
    return request(`${this.baseUrl}/v1/sessions/${id}/word`, {
      method: "POST",
      body: JSON.stringify({ word }),
    });
  }
}
