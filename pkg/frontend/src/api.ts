// Typed client for the session HTTP API. Degrees travel as exact-rational
// strings; formulae as surface-syntax strings.

export interface Belief {
  formula: string;
  degree: string;
}

export interface RankingView {
  beliefs: Belief[];
  ordinal: string[][];
}

export interface BudgetView {
  depth: number;
  clauses: number;
  seconds: number;
}

export interface ConfigView {
  strategy: string;
  subsumption: boolean;
  recovery: boolean;
  half_life: string | null;
  seed: number;
  budget: BudgetView;
}

export interface SessionView {
  id: string;
  ranking: RankingView;
  config: ConfigView;
  placement: string;
  history_length: number;
}

export interface TraceRankView {
  threshold: string | null;
  candidates: string[];
  conflicts: string[][];
  removed: string[];
  regathered: string[];
  warnings: string[];
  phase: string;
}

export interface TraceView {
  strategy: string;
  protected: string | null;
  ranks: TraceRankView[];
  warnings: string[];
  final: string;
}

export interface OutcomeView {
  kind: string;
  incoming: Belief | null;
  removed: Belief[];
  recovered: Belief[];
  decay_applied: string | null;
  consistent: boolean;
  before: RankingView;
  after: RankingView;
  trace: TraceView;
}

export interface ExampleView {
  name: string;
  category: string;
  description: string;
  base: Belief[];
  incoming: string;
  degree: string;
  quick_seed: number;
  expected: Record<string, string[]>;
}

export interface ConfigPatch {
  strategy?: string;
  subsumption?: boolean;
  recovery?: boolean;
  half_life?: string;
  seed?: number;
}

export interface RevisePayload {
  formula: string;
  degree?: string;
  config?: ConfigPatch;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public category: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const resp = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  const text = await resp.text();
  const body = text ? JSON.parse(text) : null;
  if (!resp.ok) {
    const category = body?.error ?? body?.detail ?? "HttpError";
    const message = body?.message ?? JSON.stringify(body);
    throw new ApiError(resp.status, String(category), String(message));
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  createSession(
    ranking: Belief[],
    config?: ConfigPatch,
    placement?: string,
  ): Promise<SessionView> {
    return request(`${this.base}/sessions`, {
      method: "POST",
      body: JSON.stringify({ ranking, config, placement }),
    });
  }

  getSession(id: string): Promise<SessionView> {
    return request(`${this.base}/sessions/${id}`);
  }

  revise(id: string, payload: RevisePayload): Promise<OutcomeView> {
    return request(`${this.base}/sessions/${id}/revise`, {
      method: "POST",
      body: JSON.stringify(payload),
    });
  }

  whatIf(id: string, payload: RevisePayload): Promise<OutcomeView> {
    return request(`${this.base}/sessions/${id}/whatif`, {
      method: "POST",
      body: JSON.stringify(payload),
    });
  }

  extract(id: string, config?: ConfigPatch): Promise<OutcomeView> {
    return request(`${this.base}/sessions/${id}/extract`, {
      method: "POST",
      body: JSON.stringify({ config }),
    });
  }

  integrate(id: string, rankings: Belief[][], config?: ConfigPatch): Promise<OutcomeView> {
    return request(`${this.base}/sessions/${id}/integrate`, {
      method: "POST",
      body: JSON.stringify({ rankings, config }),
    });
  }

  degree(id: string, wff: string): Promise<{ wff: string; degree: string }> {
    const q = new URLSearchParams({ wff });
    return request(`${this.base}/sessions/${id}/degree?${q}`);
  }

  trace(id: string): Promise<{ trace: TraceView | null }> {
    return request(`${this.base}/sessions/${id}/trace`);
  }

  undo(id: string): Promise<SessionView> {
    return request(`${this.base}/sessions/${id}/undo`, { method: "POST" });
  }

  examples(): Promise<ExampleView[]> {
    return request(`${this.base}/examples`);
  }
}

export const STRATEGIES = [
  "standard",
  "maxi",
  "hybrid",
  "global",
  "linear",
  "quick",
] as const;
