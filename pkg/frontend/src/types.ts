export interface SessionInfo {
  id: string;
  rows: number;
  cols: number;
  columns: string[];
}

export interface AgentEvent {
  seq: number;
  agent: string;
  step: number; // workflow hop 1-6; 0 for session-level notes
  content: string;
}

export interface DoneInfo {
  status: "succeeded" | "failed";
  attempts: number;
}

export interface TablePayload {
  columns: string[];
  rows: (string | null)[][];
}

export type RunStatus = "idle" | "running" | "reconnecting" | "succeeded" | "failed";

/** A transcript line, or the marker shown while the stream reconnects. */
export interface MessageView {
  kind: "message" | "reconnecting";
  seq: number;
  agent: string;
  step: number;
  content: string;
}

/** Mirror of server truth plus pure view state; mutated only by applying
 * recorded server responses (see state.ts). */
export interface ConsoleState {
  session: SessionInfo | null;
  status: RunStatus;
  attempts: number;
  messages: MessageView[];
  annotations: Record<string, string>;
  overrides: Record<string, string>;
  preview: TablePayload | null;
  banner: string | null;
}

export const COLUMN_TYPES = [
  "date",
  "address",
  "phone_number",
  "location",
  "ip",
  "url",
  "duration",
  "temperature",
  "color",
  "name",
  "unknown",
] as const;
