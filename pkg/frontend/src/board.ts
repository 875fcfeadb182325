// Board controller: a pure state machine between server snapshots and the
// view. It never computes legality itself; movable tokens and legal targets
// come verbatim from the server's legal_moves, so with no session nothing
// can move (fail-closed).

import { ApiClient, ApiError } from "./api.js";
import type { MoveJson, NewGameRequest, SessionState } from "./types.js";

export type BoardEvent =
  | { kind: "state"; state: SessionState }
  | { kind: "selected"; label: number | null }
  | { kind: "resync"; reason: string }
  | { kind: "hint"; move: MoveJson | null; remaining: number }
  | { kind: "solvable"; verdict: boolean | null }
  | { kind: "error"; message: string };

export class BoardController {
  state: SessionState | null = null;
  selected: number | null = null;
  busy = false;
  private listeners: Array<(e: BoardEvent) => void> = [];

  constructor(private api: ApiClient) {}

  onEvent(fn: (e: BoardEvent) => void): void {
    this.listeners.push(fn);
  }

  private emit(e: BoardEvent): void {
    for (const fn of this.listeners) {
      fn(e);
    }
  }

  private setState(state: SessionState): void {
    this.state = state;
    this.selected = null;
    this.emit({ kind: "state", state });
  }

  async newGame(req: NewGameRequest): Promise<SessionState> {
    const state = await this.api.newSession(req);
    this.setState(state);
    return state;
  }

  /** Labels that the server says have at least one move. */
  movableLabels(): Set<number> {
    const out = new Set<number>();
    for (const m of this.state?.legal_moves ?? []) {
      out.add(m.label);
    }
    return out;
  }

  /** Legal target vertex strings for one label, per the server. */
  targetsFor(label: number): Set<string> {
    const out = new Set<string>();
    for (const m of this.state?.legal_moves ?? []) {
      if (m.label === label) {
        out.add(m.to);
      }
    }
    return out;
  }

  stuckLabels(): Set<number> {
    return new Set(this.state?.stuck ?? []);
  }

  labelAt(vertex: string): number | null {
    const lab = this.state?.current.tokens[vertex];
    return lab === undefined ? null : lab;
  }

  /** Click flow: select a movable token, then click one of its targets. */
  async clickVertex(vertex: string): Promise<void> {
    if (!this.state || this.busy) {
      return;
    }
    const lab = this.labelAt(vertex);
    if (this.selected !== null && lab === null) {
      if (this.targetsFor(this.selected).has(vertex)) {
        await this.tryMove(this.selected, vertex);
        return;
      }
      this.selected = null;
      this.emit({ kind: "selected", label: null });
      return;
    }
    if (lab !== null && this.movableLabels().has(lab)) {
      this.selected = this.selected === lab ? null : lab;
      this.emit({ kind: "selected", label: this.selected });
    } else {
      this.selected = null;
      this.emit({ kind: "selected", label: null });
    }
  }

  /** POST one move; a 409 triggers a full resync, never a local guess. */
  async tryMove(label: number, to: string): Promise<boolean> {
    if (!this.state) {
      return false;
    }
    this.busy = true;
    try {
      const next = await this.api.move(this.state.id, label, to);
      this.setState(next);
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        const fresh = await this.api.getSession(this.state.id);
        this.setState(fresh);
        this.emit({ kind: "resync", reason: "illegal move rejected by server" });
        return false;
      }
      this.emit({ kind: "error", message: String(err) });
      return false;
    } finally {
      this.busy = false;
    }
  }

  async requestHint(): Promise<MoveJson | null> {
    if (!this.state) {
      return null;
    }
    try {
      const h = await this.api.hint(this.state.id);
      this.emit({ kind: "hint", move: h.move, remaining: h.remaining });
      return h.move;
    } catch (err) {
      if (err instanceof ApiError && err.status === 425) {
        this.emit({ kind: "error", message: "hint unknown (budget)" });
        return null;
      }
      if (err instanceof ApiError && err.status === 409) {
        this.emit({ kind: "solvable", verdict: false });
        return null;
      }
      throw err;
    }
  }

  async checkSolvable(): Promise<boolean | null> {
    if (!this.state) {
      return null;
    }
    try {
      const s = await this.api.solvable(this.state.id);
      this.emit({ kind: "solvable", verdict: s.solvable ?? null });
      return s.solvable ?? null;
    } catch (err) {
      if (err instanceof ApiError && err.status === 425) {
        this.emit({ kind: "solvable", verdict: null });
        return null;
      }
      throw err;
    }
  }

  async refresh(): Promise<void> {
    if (this.state) {
      this.setState(await this.api.getSession(this.state.id));
    }
  }
}
