// Minimal comparison page: ranked documents with "..."-joined fragments.
import { ApiClient } from "./api";
import { renderHighlighted } from "./highlight";
import type { HighlightSpan } from "./types";

export function bootBaseline(root: Document = document): void {
  const api = new ApiClient(window.NEWSCOPE_API_BASE ?? "");
  const form = root.getElementById("baseline-form") as HTMLFormElement;
  const input = root.getElementById("baseline-query") as HTMLInputElement;
  const startInput = root.getElementById("baseline-start") as HTMLInputElement;
  const endInput = root.getElementById("baseline-end") as HTMLInputElement;
  const results = root.getElementById("baseline-results") as HTMLElement;
  let page = 0;

  async function run(): Promise<void> {
    const q = input.value.trim();
    if (!q) return;
    try {
      const body = await api.fetchBaseline(q, startInput.value || null,
                                           endInput.value || null, page);
      results.textContent = "";
      for (const item of body.items) {
        const article = document.createElement("article");
        const heading = document.createElement("h3");
        heading.textContent = `${item.title || item.doc_id} (${item.date})`;
        article.appendChild(heading);
        const p = document.createElement("p");
        item.fragments.forEach((frag, i) => {
          if (i > 0) p.appendChild(document.createTextNode(" ... "));
          const spans: HighlightSpan[] = frag.highlights.map(
            ([start, end]) => ({ start, end, kind: "q" }));
          p.appendChild(renderHighlighted(frag.text, spans));
        });
        article.appendChild(p);
        results.appendChild(article);
      }
      const nav = document.createElement("p");
      nav.textContent = `${body.total} documents, page ${body.page + 1}`;
      results.appendChild(nav);
    } catch (err) {
      results.textContent = `Error: ${(err as Error).message}`;
    }
  }

  form.addEventListener("submit", (ev) => {
    ev.preventDefault();
    page = 0;
    void run();
  });
}

if (typeof document !== "undefined" && document.getElementById("baseline-form")) {
  bootBaseline();
}
