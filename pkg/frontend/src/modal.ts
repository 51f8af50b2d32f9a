import { ApiClient } from "./api";
import { renderHighlighted } from "./highlight";
import type { DocResponse, HighlightSpan } from "./types";

/** Full-document dialog with highlight spans and sentence anchors. */
export class DocModal {
  private backdrop: HTMLElement;
  private body: HTMLElement;
  /** /api/doc fetches made; exposed for tests. */
  fetchCount = 0;

  constructor(private api: ApiClient, root: HTMLElement) {
    this.backdrop = document.createElement("div");
    this.backdrop.className = "modal-backdrop hidden";
    const dialog = document.createElement("div");
    dialog.className = "modal-dialog";
    const close = document.createElement("button");
    close.type = "button";
    close.className = "modal-close";
    close.textContent = "×";
    close.addEventListener("click", () => this.close());
    this.body = document.createElement("div");
    this.body.className = "modal-body";
    dialog.append(close, this.body);
    this.backdrop.appendChild(dialog);
    this.backdrop.addEventListener("click", (ev) => {
      if (ev.target === this.backdrop) this.close();
    });
    root.appendChild(this.backdrop);
  }

  isOpen(): boolean {
    return !this.backdrop.classList.contains("hidden");
  }

  close(): void {
    this.backdrop.classList.add("hidden");
    this.body.textContent = "";
  }

  async open(docId: string, q: string | null, f: string | null,
             scrollToSentence: number | null = null): Promise<void> {
    this.backdrop.classList.remove("hidden");
    this.body.textContent = "Loading…";
    this.fetchCount += 1;
    let doc: DocResponse;
    try {
      doc = await this.api.fetchDoc(docId, q, f);
    } catch (err) {
      this.body.textContent = "";
      const banner = document.createElement("p");
      banner.className = "error-banner";
      banner.textContent = `Could not load document: ${(err as Error).message}`;
      this.body.appendChild(banner);
      return;
    }
    this.renderDoc(doc, scrollToSentence);
  }

  private renderDoc(doc: DocResponse, scrollToSentence: number | null): void {
    this.body.textContent = "";
    const heading = document.createElement("h2");
    heading.textContent = doc.title || doc.id;
    const date = document.createElement("p");
    date.className = "modal-date";
    date.textContent = doc.date;
    const text = document.createElement("div");
    text.className = "modal-text";

    let cursor = 0;
    for (const sentence of doc.sentences) {
      if (sentence.start > cursor) {
        text.appendChild(document.createTextNode(doc.text.slice(cursor, sentence.start)));
      }
      const piece = doc.text.slice(sentence.start, sentence.end);
      const local: HighlightSpan[] = doc.highlights
        .filter((h) => h.start >= sentence.start && h.end <= sentence.end)
        .map((h) => ({ ...h, start: h.start - sentence.start, end: h.end - sentence.start }));
      const span = renderHighlighted(piece, local);
      span.className = "doc-sentence";
      span.dataset.sentenceIndex = String(sentence.index);
      text.appendChild(span);
      cursor = sentence.end;
    }
    if (cursor < doc.text.length) {
      text.appendChild(document.createTextNode(doc.text.slice(cursor)));
    }

    this.body.append(heading, date, text);
    if (scrollToSentence !== null) {
      const target = text.querySelector<HTMLElement>(
        `[data-sentence-index="${scrollToSentence}"]`);
      if (target) {
        target.classList.add("focused-sentence");
        target.scrollIntoView?.({ block: "center" });
      }
    }
  }
}
