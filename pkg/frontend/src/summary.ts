import { renderHighlighted } from "./highlight";
import { pager } from "./subjects";
import type { Paged, SummaryItem } from "./types";

export interface SummaryCallbacks {
  onOpenDoc: (docId: string, sentenceIndex: number) => void;
  onPage: (page: number) => void;
}

/** Sampled sentence list; clicking a sentence opens the source document. */
export class SummaryView {
  constructor(private container: HTMLElement, private callbacks: SummaryCallbacks) {}

  render(summary: Paged<SummaryItem>): void {
    this.container.textContent = "";
    const list = document.createElement("ul");
    list.className = "summary-list";
    for (const item of summary.items) {
      const li = document.createElement("li");
      li.className = `summary-sentence tier-${item.tier}`;
      li.dataset.docId = item.doc_id;
      li.dataset.sentenceIndex = String(item.sentence_index);
      const meta = document.createElement("span");
      meta.className = "summary-date";
      meta.textContent = item.date;
      li.appendChild(meta);
      li.appendChild(renderHighlighted(item.text, item.highlights));
      li.addEventListener("click", () =>
        this.callbacks.onOpenDoc(item.doc_id, item.sentence_index));
      list.appendChild(li);
    }
    this.container.appendChild(list);
    this.container.appendChild(pager("sentences", summary, this.callbacks.onPage));
  }
}
