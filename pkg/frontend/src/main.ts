import { HttpApiClient } from "./api.js";
import {
  renderBanner,
  renderInfoCard,
  renderOverrides,
  renderPreview,
  renderStatus,
  renderTranscript,
} from "./render.js";
import { ConsoleStore } from "./state.js";

const store = new ConsoleStore(new HttpApiClient());

const regions: Record<string, (s: typeof store.state) => string> = {
  banner: renderBanner,
  "info-card": renderInfoCard,
  status: renderStatus,
  transcript: renderTranscript,
  overrides: renderOverrides,
  preview: renderPreview,
};

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing element #${id}`);
  return element as T;
}

function paint(): void {
  for (const [id, render] of Object.entries(regions)) {
    byId(id).innerHTML = render(store.state);
  }
  const hasSession = store.state.session !== null;
  const running = store.state.status === "running" || store.state.status === "reconnecting";
  byId<HTMLButtonElement>("start-button").disabled = !hasSession || running;
  byId<HTMLButtonElement>("show-table-button").disabled = store.state.status !== "succeeded";
  byId<HTMLButtonElement>("download-button").disabled = store.state.status !== "succeeded";
  byId<HTMLButtonElement>("requirement-button").disabled = !hasSession || running;
  const transcript = byId("transcript");
  transcript.scrollTop = transcript.scrollHeight;
}

store.subscribe(paint);

byId<HTMLButtonElement>("upload-button").addEventListener("click", async () => {
  const input = byId<HTMLInputElement>("file-input");
  const file = input.files?.[0];
  if (!file) {
    store.apply({ kind: "banner", message: "choose a CSV file first" });
    return;
  }
  await store.upload(file.name, file);
});

byId<HTMLButtonElement>("start-button").addEventListener("click", async () => {
  const requirements = byId<HTMLTextAreaElement>("requirements-input").value.trim();
  await store.start(requirements || undefined);
});

byId<HTMLButtonElement>("show-table-button").addEventListener("click", () => {
  void store.showCleanedTable();
});

byId<HTMLButtonElement>("download-button").addEventListener("click", async () => {
  const bytes = await store.downloadCsv();
  const blob = new Blob([bytes as BlobPart], { type: "text/csv" });
  const link = document.createElement("a");
  link.href = URL.createObjectURL(blob);
  link.download = "cleaned_data.csv";
  link.click();
  URL.revokeObjectURL(link.href);
});

byId<HTMLButtonElement>("requirement-button").addEventListener("click", async () => {
  const input = byId<HTMLTextAreaElement>("requirements-input");
  const text = input.value.trim();
  if (!text) {
    store.apply({ kind: "banner", message: "type a requirement first" });
    return;
  }
  input.value = "";
  await store.submitRequirement(text);
});

byId("overrides").addEventListener("change", (event) => {
  const target = event.target as HTMLSelectElement;
  const column = target.dataset.column;
  if (column) void store.overrideColumn(column, target.value);
});

paint();
