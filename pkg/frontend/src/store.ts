import { ApiClient } from "./api";
import type { StateResponse } from "./types";

export interface ViewState {
  query: string;
  facet: string | null;
  start: string | null; // null means the corpus span default
  end: string | null;
  subjectsPage: number;
  summaryPage: number;
  seed: number | null; // fixed per (query, facet); echoed back by the server
  pending: boolean;
  response: StateResponse | null; // most recently completed response
  error: string | null;
}

type Listener = (state: ViewState) => void;

/**
 * Holds the selection state and talks to /api/state.
 *
 * Requests are latest-wins: a token guards every response, and the previous
 * in-flight request is aborted when a new one starts, so rendered views only
 * ever reflect the most recently issued request that completed. All three
 * views re-render from the single response object kept here.
 */
export class Store {
  private state: ViewState = {
    query: "",
    facet: null,
    start: null,
    end: null,
    subjectsPage: 0,
    summaryPage: 0,
    seed: null,
    pending: false,
    response: null,
    error: null,
  };
  private listeners: Listener[] = [];
  private token = 0;
  private controller: AbortController | null = null;
  /** Total /api/state requests issued; exposed for tests and diagnostics. */
  requestsIssued = 0;

  constructor(private api: ApiClient) {}

  getState(): ViewState {
    return this.state;
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private notify(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  private patch(partial: Partial<ViewState>): void {
    this.state = { ...this.state, ...partial };
  }

  /** New query: fresh facet, pages and sample seed. */
  setQuery(query: string): Promise<void> {
    this.patch({ query, facet: null, subjectsPage: 0, summaryPage: 0, seed: null });
    return this.refresh();
  }

  /** Click a subject: select it as the facet, or clear it when re-clicked. */
  toggleFacet(phrase: string): Promise<void> {
    const facet = this.state.facet === phrase ? null : phrase;
    this.patch({ facet, summaryPage: 0, subjectsPage: this.state.subjectsPage, seed: null });
    return this.refresh();
  }

  /** Brush or datepicker change; the sample seed survives timespan changes. */
  setTimespan(start: string | null, end: string | null): Promise<void> {
    this.patch({ start, end, subjectsPage: 0, summaryPage: 0 });
    return this.refresh();
  }

  setSubjectsPage(page: number): Promise<void> {
    this.patch({ subjectsPage: Math.max(0, page) });
    return this.refresh();
  }

  setSummaryPage(page: number): Promise<void> {
    this.patch({ summaryPage: Math.max(0, page) });
    return this.refresh();
  }

  async refresh(): Promise<void> {
    if (!this.state.query.trim()) return;
    const token = ++this.token;
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    this.patch({ pending: true });
    this.notify();
    this.requestsIssued += 1;
    try {
      const response = await this.api.fetchState({
        q: this.state.query,
        f: this.state.facet,
        start: this.state.start,
        end: this.state.end,
        subjectsPage: this.state.subjectsPage,
        summaryPage: this.state.summaryPage,
        seed: this.state.seed,
      }, controller.signal);
      if (token !== this.token) return; // stale response; a newer request won
      this.patch({ response, pending: false, error: null, seed: response.seed });
      this.notify();
    } catch (err) {
      if (token !== this.token) return; // stale failure (includes aborts)
      if ((err as Error).name === "AbortError") return;
      this.patch({ pending: false, error: (err as Error).message });
      this.notify();
    }
  }
}
