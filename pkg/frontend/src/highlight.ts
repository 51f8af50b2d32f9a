import type { HighlightSpan } from "./types";

/**
 * Render text with query/facet highlight spans into non-overlapping styled
 * segments. Query spans get .hl-q (blue, bold), facet spans .hl-f (red,
 * bold); where they overlap, both classes apply.
 */
export function renderHighlighted(text: string, spans: HighlightSpan[],
                                  into?: HTMLElement): HTMLElement {
  const el = into ?? document.createElement("span");
  el.textContent = "";
  const cuts = new Set<number>([0, text.length]);
  const clipped = spans
    .map((s) => ({ ...s, start: Math.max(0, s.start), end: Math.min(text.length, s.end) }))
    .filter((s) => s.start < s.end);
  for (const s of clipped) {
    cuts.add(s.start);
    cuts.add(s.end);
  }
  const points = [...cuts].sort((a, b) => a - b);
  for (let i = 0; i + 1 < points.length; i++) {
    const [a, b] = [points[i], points[i + 1]];
    const piece = text.slice(a, b);
    const kinds = new Set(clipped.filter((s) => s.start <= a && b <= s.end)
                                 .map((s) => s.kind));
    if (kinds.size === 0) {
      el.appendChild(document.createTextNode(piece));
    } else {
      const span = document.createElement("span");
      span.className = [...kinds].sort().map((k) => `hl-${k}`).join(" ");
      span.textContent = piece;
      el.appendChild(span);
    }
  }
  return el;
}
