import { ApiClient } from "./api";
import { DocModal } from "./modal";
import { Store } from "./store";
import { SubjectsView } from "./subjects";
import { SummaryView } from "./summary";
import { Timeline } from "./timeline";

declare global {
  interface Window {
    NEWSCOPE_API_BASE?: string;
  }
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

export interface BootHandles {
  api: ApiClient;
  store: Store;
  timeline: Timeline;
  modal: DocModal;
}

export function boot(root: Document = document): BootHandles {
  const api = new ApiClient(window.NEWSCOPE_API_BASE ?? "");
  const store = new Store(api);
  const modal = new DocModal(api, root.body);

  const timeline = new Timeline(el("timeline"), {
    width: el("timeline").clientWidth || 860,
    onBrush: (s, e) => void store.setTimespan(s, e),
    onCommit: (s, e) => void store.setTimespan(s, e),
  });
  const subjects = new SubjectsView(el("subjects"), {
    onToggleFacet: (phrase) => void store.toggleFacet(phrase),
    onPage: (p) => void store.setSubjectsPage(p),
  });
  const summary = new SummaryView(el("summary"), {
    onOpenDoc: (docId, sentenceIndex) => {
      const s = store.getState();
      void modal.open(docId, s.query, s.facet, sentenceIndex);
    },
    onPage: (p) => void store.setSummaryPage(p),
  });

  const queryInput = el<HTMLInputElement>("query-input");
  const startInput = el<HTMLInputElement>("start-input");
  const endInput = el<HTMLInputElement>("end-input");
  const banner = el("error-banner");
  const status = el("status-line");
  const facetChip = el("facet-chip");

  el<HTMLFormElement>("query-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    if (queryInput.value.trim()) void store.setQuery(queryInput.value.trim());
  });
  const applyDates = () => {
    void store.setTimespan(startInput.value || null, endInput.value || null);
  };
  startInput.addEventListener("change", applyDates);
  endInput.addEventListener("change", applyDates);
  facetChip.addEventListener("click", () => {
    const facet = store.getState().facet;
    if (facet) void store.toggleFacet(facet);
  });

  store.subscribe((state) => {
    banner.classList.toggle("hidden", !state.error);
    banner.textContent = state.error ?? "";
    document.body.classList.toggle("pending", state.pending);
    facetChip.classList.toggle("hidden", !state.facet);
    facetChip.textContent = state.facet ? `F: ${state.facet} ×` : "";

    const r = state.response;
    if (!r) return;
    // all three views re-render from this one response object
    status.textContent = `${r.total_docs} documents · ${r.start} to ${r.end} · seed ${r.seed}`;
    timeline.render(r.timeseries_q, r.timeseries_qf, state.start, state.end);
    subjects.render(r.subjects, state.facet);
    summary.render(r.summary);
    startInput.value = state.start ?? "";
    endInput.value = state.end ?? "";
  });

  const params = new URLSearchParams(root.location?.search ?? "");
  const q = params.get("q");
  if (q) {
    queryInput.value = q;
    void store.setQuery(q);
  }
}

if (typeof document !== "undefined" && document.getElementById("query-form")) {
  boot();
}
