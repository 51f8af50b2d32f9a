import type { BaselineItem, DocResponse, Paged, StateParams, StateResponse } from "./types";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

async function getJson<T>(url: string, signal?: AbortSignal): Promise<T> {
  const resp = await fetch(url, { signal });
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && typeof body.detail === "string") detail = body.detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  stateUrl(params: StateParams): string {
    const search = new URLSearchParams({ q: params.q });
    if (params.f) search.set("f", params.f);
    if (params.start) search.set("start", params.start);
    if (params.end) search.set("end", params.end);
    if (params.subjectsPage) search.set("subjects_page", String(params.subjectsPage));
    if (params.summaryPage) search.set("summary_page", String(params.summaryPage));
    if (params.seed !== null) search.set("seed", String(params.seed));
    return `${this.baseUrl}/api/state?${search}`;
  }

  fetchState(params: StateParams, signal?: AbortSignal): Promise<StateResponse> {
    return getJson<StateResponse>(this.stateUrl(params), signal);
  }

  fetchDoc(id: string, q: string | null, f: string | null): Promise<DocResponse> {
    const search = new URLSearchParams();
    if (q) search.set("q", q);
    if (f) search.set("f", f);
    const qs = search.toString();
    return getJson<DocResponse>(`${this.baseUrl}/api/doc/${encodeURIComponent(id)}${qs ? "?" + qs : ""}`);
  }

  fetchBaseline(q: string, start: string | null, end: string | null,
                page: number): Promise<Paged<BaselineItem>> {
    const search = new URLSearchParams({ q });
    if (start) search.set("start", start);
    if (end) search.set("end", end);
    if (page) search.set("page", String(page));
    return getJson<Paged<BaselineItem>>(`${this.baseUrl}/api/baseline?${search}`);
  }
}
