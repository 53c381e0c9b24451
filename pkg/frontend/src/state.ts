import type { ApiClient } from "./api.js";
import type {
  AgentEvent,
  ConsoleState,
  DoneInfo,
  MessageView,
  SessionInfo,
  TablePayload,
} from "./types.js";

/** Every state change is one of these, and all of them carry nothing but
 * recorded server responses (or their failures). Replaying a log of
 * actions through `reduce` reproduces the exact view state. */
export type Action =
  | { kind: "uploaded"; session: SessionInfo }
  | { kind: "upload-failed"; error: string }
  | { kind: "run-started" }
  | { kind: "event"; event: AgentEvent }
  | { kind: "stream-dropped" }
  | { kind: "stream-resumed" }
  | { kind: "done"; done: DoneInfo }
  | { kind: "annotations"; annotations: Record<string, string> }
  | { kind: "override-set"; column: string; spec: string }
  | { kind: "preview"; table: TablePayload }
  | { kind: "banner"; message: string | null };

export function initialState(): ConsoleState {
  return {
    session: null,
    status: "idle",
    attempts: 0,
    messages: [],
    annotations: {},
    overrides: {},
    preview: null,
    banner: null,
  };
}

function withoutReconnectMarker(messages: MessageView[]): MessageView[] {
  return messages.filter((m) => m.kind !== "reconnecting");
}

export function reduce(state: ConsoleState, action: Action): ConsoleState {
  switch (action.kind) {
    case "uploaded":
      // a new upload replaces the whole session view
      return { ...initialState(), session: action.session };
    case "upload-failed":
      return { ...state, session: null, banner: action.error };
    case "run-started":
      return { ...state, status: "running", banner: null, preview: null };
    case "event": {
      const next = withoutReconnectMarker(state.messages);
      next.push({ kind: "message", ...action.event });
      return { ...state, status: "running", messages: next };
    }
    case "stream-dropped": {
      const next = [...state.messages];
      if (next.length === 0 || next[next.length - 1].kind !== "reconnecting") {
        next.push({
          kind: "reconnecting",
          seq: next.length ? next[next.length - 1].seq : -1,
          agent: "",
          step: 0,
          content: "reconnecting…",
        });
      }
      return { ...state, status: "reconnecting", messages: next };
    }
    case "stream-resumed":
      return { ...state, status: "running", messages: withoutReconnectMarker(state.messages) };
    case "done":
      return {
        ...state,
        status: action.done.status,
        attempts: action.done.attempts,
        messages: withoutReconnectMarker(state.messages),
      };
    case "annotations":
      return { ...state, annotations: action.annotations };
    case "override-set":
      return { ...state, overrides: { ...state.overrides, [action.column]: action.spec } };
    case "preview":
      return { ...state, preview: action.table };
    case "banner":
      return { ...state, banner: action.message };
  }
}

export function replay(actions: Action[]): ConsoleState {
  return actions.reduce(reduce, initialState());
}

export interface StoreOptions {
  /** delay between stream reconnect attempts (tests pass 0) */
  reconnectDelayMs?: number;
  maxStreamRetries?: number;
}

export class ConsoleStore {
  state: ConsoleState = initialState();
  /** every applied action, in order; replaying it rebuilds `state` */
  readonly log: Action[] = [];
  private listeners = new Set<(state: ConsoleState) => void>();
  private readonly reconnectDelayMs: number;
  private readonly maxStreamRetries: number;

  constructor(
    private readonly api: ApiClient,
    options: StoreOptions = {},
  ) {
    this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
    this.maxStreamRetries = options.maxStreamRetries ?? 3;
  }

  subscribe(listener: (state: ConsoleState) => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  apply(action: Action): void {
    this.state = reduce(this.state, action);
    this.log.push(action);
    for (const listener of this.listeners) listener(this.state);
  }

  private get sessionId(): string {
    if (!this.state.session) throw new Error("no active session");
    return this.state.session.id;
  }

  async upload(filename: string, payload: Blob | Uint8Array): Promise<void> {
    try {
      const session = await this.api.uploadCsv(filename, payload);
      this.apply({ kind: "uploaded", session });
    } catch (error) {
      this.apply({ kind: "upload-failed", error: `upload failed: ${describe(error)}` });
    }
  }

  async start(requirements?: string): Promise<void> {
    const id = this.sessionId;
    try {
      await this.api.start(id, requirements);
    } catch (error) {
      this.apply({ kind: "banner", message: `start failed: ${describe(error)}` });
      return;
    }
    this.apply({ kind: "run-started" });
    await this.streamUntilDone(id);
  }

  /** Follow the event stream to the terminal event, resuming from the last
   * seen seq if it drops. */
  private async streamUntilDone(id: string): Promise<void> {
    let drops = 0;
    for (;;) {
      const after = this.lastSeq();
      let sawEvent = false;
      try {
        const done: DoneInfo = await this.api.streamEvents(id, after, (event) => {
          if (!sawEvent && drops > 0) this.apply({ kind: "stream-resumed" });
          sawEvent = true;
          this.apply({ kind: "event", event });
        });
        this.apply({ kind: "done", done });
        await this.refreshAnnotations();
        return;
      } catch {
        drops += 1;
        this.apply({ kind: "stream-dropped" });
        if (drops > this.maxStreamRetries) {
          this.apply({
            kind: "banner",
            message: "event stream lost; check the server and start again",
          });
          return;
        }
        await sleep(this.reconnectDelayMs);
      }
    }
  }

  private lastSeq(): number {
    for (let i = this.state.messages.length - 1; i >= 0; i--) {
      if (this.state.messages[i].kind === "message") return this.state.messages[i].seq;
    }
    return -1;
  }

  async refreshAnnotations(): Promise<void> {
    try {
      const annotations = await this.api.getAnnotations(this.sessionId);
      this.apply({ kind: "annotations", annotations });
    } catch {
      // annotations are cosmetic; leave the last known set
    }
  }

  async showCleanedTable(): Promise<void> {
    try {
      const table = await this.api.getResultJson(this.sessionId);
      this.apply({ kind: "preview", table });
    } catch (error) {
      this.apply({ kind: "banner", message: `no result: ${describe(error)}` });
    }
  }

  async overrideColumn(column: string, spec: string): Promise<void> {
    try {
      await this.api.setOverrides(this.sessionId, { [column]: spec });
      this.apply({ kind: "override-set", column, spec });
    } catch (error) {
      this.apply({ kind: "banner", message: `override failed: ${describe(error)}` });
    }
  }

  async submitRequirement(text: string): Promise<void> {
    const id = this.sessionId;
    try {
      await this.api.submitRequirement(id, text);
    } catch (error) {
      this.apply({ kind: "banner", message: `requirement rejected: ${describe(error)}` });
      return;
    }
    this.apply({ kind: "run-started" });
    await this.streamUntilDone(id);
  }

  async downloadCsv(): Promise<Uint8Array> {
    return this.api.getResultCsv(this.sessionId);
  }
}

function describe(error: unknown): string {
  return error instanceof Error ? error.message : String(error);
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}
