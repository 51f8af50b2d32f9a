import type { Paged, SubjectItem, TimeSeries } from "./types";

export interface SubjectsCallbacks {
  onToggleFacet: (phrase: string) => void;
  onPage: (page: number) => void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function sparklineSvg(series: TimeSeries, width = 120, height = 22): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.setAttribute("class", "sparkline");
  const max = Math.max(1, ...series.bins.map((b) => b.count));
  const step = width / Math.max(1, series.bins.length);
  const points = series.bins.map((b, i) => {
    const x = (i + 0.5) * step;
    const y = 2 + (height - 4) * (1 - b.count / max);
    return `${x.toFixed(1)},${y.toFixed(1)}`;
  });
  const line = document.createElementNS(SVG_NS, "polyline");
  line.setAttribute("points", points.join(" "));
  line.setAttribute("fill", "none");
  svg.appendChild(line);
  return svg;
}

/** Ranked subject list; clicking a phrase selects or clears the facet. */
export class SubjectsView {
  constructor(private container: HTMLElement, private callbacks: SubjectsCallbacks) {}

  render(subjects: Paged<SubjectItem>, activeFacet: string | null): void {
    this.container.textContent = "";
    const list = document.createElement("ol");
    list.className = "subject-list";
    list.start = subjects.page * subjects.page_size + 1;
    for (const item of subjects.items) {
      const li = document.createElement("li");
      const button = document.createElement("button");
      button.type = "button";
      button.className = "subject-phrase" + (item.phrase === activeFacet ? " active-facet" : "");
      button.textContent = item.phrase;
      button.addEventListener("click", () => this.callbacks.onToggleFacet(item.phrase));
      li.appendChild(button);
      if (item.sparkline) li.appendChild(sparklineSvg(item.sparkline));
      const counts = document.createElement("span");
      counts.className = "subject-counts";
      counts.textContent = `${item.qf} in selection / ${item.df} docs`;
      li.appendChild(counts);
      list.appendChild(li);
    }
    this.container.appendChild(list);
    this.container.appendChild(pager("subjects", subjects, this.callbacks.onPage));
  }
}

export function pager(label: string, page: Paged<unknown>,
                      onPage: (page: number) => void): HTMLElement {
  const nav = document.createElement("nav");
  nav.className = "pager";
  const pages = Math.max(1, Math.ceil(page.total / page.page_size));
  const prev = document.createElement("button");
  prev.type = "button";
  prev.textContent = "‹ prev";
  prev.disabled = page.page <= 0;
  prev.addEventListener("click", () => onPage(page.page - 1));
  const next = document.createElement("button");
  next.type = "button";
  next.textContent = "next ›";
  next.disabled = page.page >= pages - 1;
  next.addEventListener("click", () => onPage(page.page + 1));
  const status = document.createElement("span");
  status.textContent = ` ${label} ${page.page + 1}/${pages} (${page.total}) `;
  nav.append(prev, status, next);
  return nav;
}
