import type { ConsoleState, MessageView } from "./types.js";
import { COLUMN_TYPES } from "./types.js";

/** Pure renderers: view state in, HTML strings out. Cell values and
 * transcript content pass through verbatim (HTML-escaped, never
 * recomputed), so everything on screen is a server response. */

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;");
}

export function stepBadge(step: number): string {
  return step >= 1 && step <= 6 ? String.fromCodePoint(0x2460 + step - 1) : "";
}

const AGENT_LABELS: Record<string, string> = {
  chat_manager: "Chat Manager",
  column_type_annotator: "Column-type Annotator",
  plan_generator: "Plan Generator",
  plan_executor: "Plan Executor",
};

export function agentLabel(agent: string): string {
  return AGENT_LABELS[agent] ?? agent;
}

export function renderBanner(state: ConsoleState): string {
  if (!state.banner) return "";
  return `<div class="banner error">${escapeHtml(state.banner)}</div>`;
}

export function renderInfoCard(state: ConsoleState): string {
  if (!state.session) return "";
  const { rows, cols, columns } = state.session;
  const names = columns.map((c) => `<span class="col-name">${escapeHtml(c)}</span>`).join(", ");
  return [
    '<div class="info-card">',
    `<p>${rows} rows × ${cols} columns</p>`,
    `<p>${names}</p>`,
    "</div>",
  ].join("");
}

export function renderStatus(state: ConsoleState): string {
  switch (state.status) {
    case "succeeded":
      return `<p class="status ok">data standardization is completed (attempt ${state.attempts})</p>`;
    case "failed":
      return `<p class="status bad">standardization failed after ${state.attempts} attempt(s)</p>`;
    case "running":
      return '<p class="status live">agents are working…</p>';
    case "reconnecting":
      return '<p class="status live">reconnecting…</p>';
    default:
      return "";
  }
}

interface MessageGroup {
  agent: string;
  items: MessageView[];
}

function groupByAgent(messages: MessageView[]): MessageGroup[] {
  const groups: MessageGroup[] = [];
  for (const message of messages) {
    const last = groups[groups.length - 1];
    if (message.kind === "message" && last && last.agent === message.agent) {
      last.items.push(message);
    } else {
      groups.push({ agent: message.agent, items: [message] });
    }
  }
  return groups;
}

export function renderTranscript(state: ConsoleState): string {
  if (state.messages.length === 0) return "";
  const parts: string[] = ['<div class="transcript">'];
  for (const group of groupByAgent(state.messages)) {
    if (group.items[0].kind === "reconnecting") {
      parts.push('<div class="reconnect-marker">reconnecting…</div>');
      continue;
    }
    parts.push('<div class="agent-group">');
    parts.push(`<h3>${escapeHtml(agentLabel(group.agent))}</h3>`);
    for (const item of group.items) {
      parts.push(
        `<div class="message" data-seq="${item.seq}">` +
          `<span class="badge">${stepBadge(item.step)}</span>` +
          `<pre>${escapeHtml(item.content)}</pre>` +
          "</div>",
      );
    }
    parts.push("</div>");
  }
  parts.push("</div>");
  return parts.join("");
}

export function renderPreview(state: ConsoleState): string {
  if (!state.preview) return "";
  const { columns, rows } = state.preview;
  const head = columns.map((c) => `<th>${escapeHtml(c)}</th>`).join("");
  const body = rows
    .map(
      (row) =>
        "<tr>" +
        row
          .map((cell) =>
            cell === null ? '<td class="missing"></td>' : `<td>${escapeHtml(cell)}</td>`,
          )
          .join("") +
        "</tr>",
    )
    .join("");
  return `<table class="preview"><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

export function renderOverrides(state: ConsoleState): string {
  if (!state.session || Object.keys(state.annotations).length === 0) return "";
  const rows = state.session.columns
    .map((column) => {
      const current = state.overrides[column] ?? state.annotations[column] ?? "unknown";
      const options = COLUMN_TYPES.map(
        (t) =>
          `<option value="${t}"${t === current ? " selected" : ""}>${t}</option>`,
      ).join("");
      return (
        `<label class="override-row"><span>${escapeHtml(column)}</span>` +
        `<select data-column="${escapeHtml(column)}">${options}</select></label>`
      );
    })
    .join("");
  return `<div class="overrides">${rows}</div>`;
}

/** Whole-console snapshot used by tests; the browser updates the same
 * regions individually. */
export function renderApp(state: ConsoleState): string {
  return [
    renderBanner(state),
    renderInfoCard(state),
    renderStatus(state),
    renderTranscript(state),
    renderOverrides(state),
    renderPreview(state),
  ].join("\n");
}
