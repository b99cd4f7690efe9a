// Session state machine. Optimistic UI is forbidden: the ranking shown is
// always the latest GET /sessions/{id} response, and every mutation is
// followed by a refresh before listeners re-render.

import {
  ApiClient,
  ApiError,
  Belief,
  ConfigPatch,
  ExampleView,
  OutcomeView,
  SessionView,
  STRATEGIES,
} from "./api";

export type RankingDisplay = "degrees" | "ordinal";

export interface InlineError {
  source: string; // which input the error belongs to
  category: string;
  message: string;
}

export interface AppState {
  session: SessionView | null;
  examples: ExampleView[];
  display: RankingDisplay;
  lastOutcome: OutcomeView | null;
  whatIfOutcome: OutcomeView | null;
  comparison: Record<string, OutcomeView | InlineError> | null;
  error: InlineError | null;
  busy: boolean;
}

type Listener = (state: AppState) => void;

export class SessionController {
  readonly state: AppState = {
    session: null,
    examples: [],
    display: "degrees",
    lastOutcome: null,
    whatIfOutcome: null,
    comparison: null,
    error: null,
    busy: false,
  };

  private listeners: Listener[] = [];

  constructor(readonly api: ApiClient) {}

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const l of this.listeners) l(this.state);
  }

  private fail(source: string, err: unknown): void {
    if (err instanceof ApiError) {
      this.state.error = { source, category: err.category, message: err.message };
    } else {
      this.state.error = {
        source,
        category: "ClientError",
        message: String(err),
      };
    }
  }

  /** Re-read the session from the server; the single source of truth. */
  async refresh(): Promise<void> {
    if (this.state.session) {
      this.state.session = await this.api.getSession(this.state.session.id);
    }
    this.notify();
  }

  private async run(source: string, op: () => Promise<void>): Promise<void> {
    this.state.busy = true;
    this.state.error = null;
    this.notify();
    try {
      await op();
    } catch (err) {
      this.fail(source, err);
    } finally {
      this.state.busy = false;
      try {
        await this.refresh();
      } catch (err) {
        this.fail("session", err);
        this.notify();
      }
    }
  }

  loadExamples(): Promise<void> {
    return this.run("examples", async () => {
      this.state.examples = await this.api.examples();
    });
  }

  startSession(beliefs: Belief[], config?: ConfigPatch): Promise<void> {
    return this.run("session", async () => {
      this.state.session = await this.api.createSession(beliefs, config);
      this.state.lastOutcome = null;
      this.state.whatIfOutcome = null;
      this.state.comparison = null;
    });
  }

  loadExample(name: string): Promise<void> {
    return this.run("examples", async () => {
      if (!this.state.examples.length) {
        this.state.examples = await this.api.examples();
      }
      const entry = this.state.examples.find((e) => e.name === name);
      if (!entry) throw new ApiError(404, "UnknownExample", name);
      this.state.session = await this.api.createSession(entry.base);
      this.state.lastOutcome = null;
      this.state.whatIfOutcome = null;
      this.state.comparison = null;
    });
  }

  setDisplay(display: RankingDisplay): void {
    this.state.display = display;
    this.notify();
  }

  private sessionId(): string {
    if (!this.state.session) throw new ApiError(0, "NoSession", "no session loaded");
    return this.state.session.id;
  }

  revise(formula: string, degree: string, config?: ConfigPatch): Promise<void> {
    return this.run("revision", async () => {
      const payload = { formula, degree: degree || undefined, config };
      this.state.lastOutcome = await this.api.revise(this.sessionId(), payload);
      this.state.whatIfOutcome = null;
      this.state.comparison = null;
    });
  }

  whatIf(formula: string, degree: string, config?: ConfigPatch): Promise<void> {
    return this.run("revision", async () => {
      const payload = { formula, degree: degree || undefined, config };
      this.state.whatIfOutcome = await this.api.whatIf(this.sessionId(), payload);
    });
  }

  /** Hypothetical revision under all six strategies, in parallel. */
  compareStrategies(formula: string, degree: string): Promise<void> {
    return this.run("revision", async () => {
      const id = this.sessionId();
      const results = await Promise.all(
        STRATEGIES.map(async (strategy) => {
          try {
            const out = await this.api.whatIf(id, {
              formula,
              degree: degree || undefined,
              config: { strategy },
            });
            return [strategy, out] as const;
          } catch (err) {
            const e =
              err instanceof ApiError
                ? { source: strategy, category: err.category, message: err.message }
                : { source: strategy, category: "ClientError", message: String(err) };
            return [strategy, e] as const;
          }
        }),
      );
      this.state.comparison = Object.fromEntries(results);
    });
  }

  extract(): Promise<void> {
    return this.run("revision", async () => {
      this.state.lastOutcome = await this.api.extract(this.sessionId());
    });
  }

  undo(): Promise<void> {
    return this.run("history", async () => {
      await this.api.undo(this.sessionId());
      this.state.lastOutcome = null;
    });
  }
}
