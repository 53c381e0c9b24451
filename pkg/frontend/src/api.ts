import type { AgentEvent, DoneInfo, SessionInfo, TablePayload } from "./types.js";

/** Everything the console asks of the server. Tests stub this interface;
 * the browser uses the fetch-backed implementation below. */
export interface ApiClient {
  uploadCsv(filename: string, payload: Blob | Uint8Array): Promise<SessionInfo>;
  start(id: string, requirements?: string): Promise<void>;
  /** Resolves with the terminal status once the server sends the done
   * event; rejects if the stream drops first. */
  streamEvents(
    id: string,
    after: number,
    onEvent: (event: AgentEvent) => void,
  ): Promise<DoneInfo>;
  getAnnotations(id: string): Promise<Record<string, string>>;
  setOverrides(id: string, overrides: Record<string, string>): Promise<void>;
  submitRequirement(id: string, text: string): Promise<void>;
  getResultJson(id: string): Promise<TablePayload>;
  getResultCsv(id: string): Promise<Uint8Array>;
}

async function expectOk(response: Response): Promise<Response> {
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // keep the status code
    }
    throw new Error(detail);
  }
  return response;
}

export class HttpApiClient implements ApiClient {
  constructor(private readonly base: string = "") {}

  async uploadCsv(filename: string, payload: Blob | Uint8Array): Promise<SessionInfo> {
    const form = new FormData();
    const blob = payload instanceof Blob ? payload : new Blob([payload as BlobPart]);
    form.append("file", blob, filename);
    const response = await expectOk(
      await fetch(`${this.base}/api/sessions`, { method: "POST", body: form }),
    );
    return (await response.json()) as SessionInfo;
  }

  async start(id: string, requirements?: string): Promise<void> {
    await expectOk(
      await fetch(`${this.base}/api/sessions/${id}/start`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(requirements ? { requirements } : {}),
      }),
    );
  }

  async streamEvents(
    id: string,
    after: number,
    onEvent: (event: AgentEvent) => void,
  ): Promise<DoneInfo> {
    const response = await expectOk(
      await fetch(`${this.base}/api/sessions/${id}/events?after=${after}`),
    );
    if (!response.body) throw new Error("event stream has no body");
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    let buffer = "";
    let eventName = "message";
    for (;;) {
      const { value, done } = await reader.read();
      if (done) break;
      buffer += decoder.decode(value, { stream: true });
      let frameEnd;
      while ((frameEnd = buffer.indexOf("\n\n")) >= 0) {
        const frame = buffer.slice(0, frameEnd);
        buffer = buffer.slice(frameEnd + 2);
        let data = "";
        for (const line of frame.split("\n")) {
          if (line.startsWith("event: ")) eventName = line.slice(7).trim();
          else if (line.startsWith("data: ")) data += line.slice(6);
        }
        if (!data) continue;
        if (eventName === "done") {
          return JSON.parse(data) as DoneInfo;
        }
        onEvent(JSON.parse(data) as AgentEvent);
        eventName = "message";
      }
    }
    throw new Error("event stream dropped before completion");
  }

  async getAnnotations(id: string): Promise<Record<string, string>> {
    const response = await expectOk(await fetch(`${this.base}/api/sessions/${id}/annotations`));
    return (await response.json()) as Record<string, string>;
  }

  async setOverrides(id: string, overrides: Record<string, string>): Promise<void> {
    await expectOk(
      await fetch(`${this.base}/api/sessions/${id}/annotations`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(overrides),
      }),
    );
  }

  async submitRequirement(id: string, text: string): Promise<void> {
    await expectOk(
      await fetch(`${this.base}/api/sessions/${id}/requirements`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ text }),
      }),
    );
  }

  async getResultJson(id: string): Promise<TablePayload> {
    const response = await expectOk(
      await fetch(`${this.base}/api/sessions/${id}/result?format=json`),
    );
    return (await response.json()) as TablePayload;
  }

  async getResultCsv(id: string): Promise<Uint8Array> {
    const response = await expectOk(
      await fetch(`${this.base}/api/sessions/${id}/result?format=csv`),
    );
    return new Uint8Array(await response.arrayBuffer());
  }
}
