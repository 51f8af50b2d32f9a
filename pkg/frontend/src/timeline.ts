import { debounce, type Debounced } from "./debounce";
import type { TimeSeries } from "./types";

export interface TimelineOptions {
  width?: number;
  height?: number;
  debounceMs?: number;
  /** Fired (debounced) while the timebox is being dragged. */
  onBrush: (start: string | null, end: string | null) => void;
  /** Fired once on release with the month-snapped range. */
  onCommit: (start: string | null, end: string | null) => void;
}

const SVG_NS = "http://www.w3.org/2000/svg";
const PAD = { left: 34, right: 10, top: 8, bottom: 18 };
const HANDLE_PX = 6;

function lastDayOfMonth(month: string): string {
  const [y, m] = month.split("-").map(Number);
  const last = new Date(Date.UTC(y, m, 0)).getUTCDate();
  return `${month}-${String(last).padStart(2, "0")}`;
}

type DragMode = "create" | "move" | "resize-left" | "resize-right";

/**
 * Monthly line chart (query line blue, query+facet line red) with a
 * draggable, resizable timebox. Dragging emits debounced brush events in
 * month units; releasing commits the snapped range. Selecting the whole
 * span reports null bounds so requests fall back to the corpus default.
 */
export class Timeline {
  private svg: SVGSVGElement;
  private months: string[] = [];
  private sel: [number, number] | null = null; // inclusive month indexes
  private drag: { mode: DragMode; anchor: number; startSel: [number, number] | null } | null = null;
  private brush: Debounced<[string | null, string | null]>;
  private width: number;
  private height: number;
  private series: { q: TimeSeries; qf: TimeSeries | null } | null = null;

  constructor(private container: HTMLElement, private opts: TimelineOptions) {
    this.width = opts.width ?? 640;
    this.height = opts.height ?? 120;
    this.brush = debounce((s, e) => opts.onBrush(s, e), opts.debounceMs ?? 150);
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "timeline");
    this.svg.setAttribute("width", String(this.width));
    this.svg.setAttribute("height", String(this.height));
    container.appendChild(this.svg);
    this.svg.addEventListener("mousedown", this.onMouseDown);
    window.addEventListener("mousemove", this.onMouseMove);
    window.addEventListener("mouseup", this.onMouseUp);
  }

  dispose(): void {
    window.removeEventListener("mousemove", this.onMouseMove);
    window.removeEventListener("mouseup", this.onMouseUp);
    this.container.removeChild(this.svg);
  }

  render(q: TimeSeries, qf: TimeSeries | null,
         start: string | null, end: string | null): void {
    this.series = { q, qf };
    this.months = q.bins.map((b) => b.month);
    if (start && end && this.months.length) {
      const i0 = this.monthIndexOf(start.slice(0, 7));
      const i1 = this.monthIndexOf(end.slice(0, 7));
      this.sel = i0 === 0 && i1 === this.months.length - 1 ? null : [i0, i1];
    } else {
      this.sel = null;
    }
    this.draw();
  }

  // -- geometry ----------------------------------------------------------

  private get plotWidth(): number {
    return this.width - PAD.left - PAD.right;
  }

  private get plotHeight(): number {
    return this.height - PAD.top - PAD.bottom;
  }

  private monthWidth(): number {
    return this.plotWidth / Math.max(1, this.months.length);
  }

  private monthIndexOf(month: string): number {
    const i = this.months.indexOf(month);
    if (i >= 0) return i;
    return month < this.months[0] ? 0 : this.months.length - 1;
  }

  private monthAtX(x: number): number {
    const rel = (x - PAD.left) / this.monthWidth();
    return Math.max(0, Math.min(this.months.length - 1, Math.floor(rel)));
  }

  private xOfMonth(index: number): number {
    return PAD.left + index * this.monthWidth();
  }

  private rangeOf(sel: [number, number] | null): [string | null, string | null] {
    if (!sel || !this.months.length) return [null, null];
    const [a, b] = sel;
    if (a === 0 && b === this.months.length - 1) return [null, null];
    return [`${this.months[a]}-01`, lastDayOfMonth(this.months[b])];
  }

  /** Current selection as request bounds (month-snapped). */
  currentRange(): [string | null, string | null] {
    return this.rangeOf(this.sel);
  }

  // -- drawing -----------------------------------------------------------

  private path(series: TimeSeries, max: number, cls: string): SVGElement {
    const mw = this.monthWidth();
    const points = series.bins.map((b, i) => {
      const x = PAD.left + (i + 0.5) * mw;
      const y = PAD.top + this.plotHeight * (1 - (max ? b.count / max : 0));
      return `${x.toFixed(1)},${y.toFixed(1)}`;
    });
    const line = document.createElementNS(SVG_NS, "polyline");
    line.setAttribute("points", points.join(" "));
    line.setAttribute("class", cls);
    line.setAttribute("fill", "none");
    return line;
  }

  private draw(): void {
    if (!this.series) return;
    this.svg.textContent = "";
    const { q, qf } = this.series;
    const max = Math.max(1, ...q.bins.map((b) => b.count));

    const frame = document.createElementNS(SVG_NS, "rect");
    frame.setAttribute("x", String(PAD.left));
    frame.setAttribute("y", String(PAD.top));
    frame.setAttribute("width", String(this.plotWidth));
    frame.setAttribute("height", String(this.plotHeight));
    frame.setAttribute("class", "timeline-frame");
    this.svg.appendChild(frame);

    // year ticks, thinned to at most ~8 labels
    const years = this.months
      .map((m, i) => ({ m, i }))
      .filter(({ m }) => m.endsWith("-01"));
    const step = Math.max(1, Math.ceil(years.length / 8));
    years.filter((_, k) => k % step === 0).forEach(({ m, i }) => {
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String(this.xOfMonth(i)));
      label.setAttribute("y", String(this.height - 4));
      label.setAttribute("class", "timeline-tick");
      label.textContent = m.slice(0, 4);
      this.svg.appendChild(label);
    });

    const maxLabel = document.createElementNS(SVG_NS, "text");
    maxLabel.setAttribute("x", "2");
    maxLabel.setAttribute("y", String(PAD.top + 10));
    maxLabel.setAttribute("class", "timeline-tick");
    maxLabel.textContent = String(max);
    this.svg.appendChild(maxLabel);

    if (this.sel) {
      const [a, b] = this.sel;
      const box = document.createElementNS(SVG_NS, "rect");
      box.setAttribute("x", String(this.xOfMonth(a)));
      box.setAttribute("y", String(PAD.top));
      box.setAttribute("width", String((b - a + 1) * this.monthWidth()));
      box.setAttribute("height", String(this.plotHeight));
      box.setAttribute("class", "timebox");
      this.svg.appendChild(box);
    }

    this.svg.appendChild(this.path(q, max, "line-q"));
    if (qf) this.svg.appendChild(this.path(qf, max, "line-f"));
  }

  // -- brushing ----------------------------------------------------------

  private eventX(ev: MouseEvent): number {
    const rect = this.svg.getBoundingClientRect();
    return ev.clientX - rect.left;
  }

  private onMouseDown = (ev: MouseEvent): void => {
    if (!this.months.length) return;
    const x = this.eventX(ev);
    const month = this.monthAtX(x);
    let mode: DragMode = "create";
    if (this.sel) {
      const [a, b] = this.sel;
      const left = this.xOfMonth(a);
      const right = this.xOfMonth(b) + this.monthWidth();
      if (Math.abs(x - left) <= HANDLE_PX) mode = "resize-left";
      else if (Math.abs(x - right) <= HANDLE_PX) mode = "resize-right";
      else if (x > left && x < right) mode = "move";
    }
    this.drag = { mode, anchor: month, startSel: this.sel ? [...this.sel] : null };
    if (mode === "create") this.sel = [month, month];
    ev.preventDefault();
  };

  private onMouseMove = (ev: MouseEvent): void => {
    if (!this.drag) return;
    const month = this.monthAtX(this.eventX(ev));
    const { mode, anchor, startSel } = this.drag;
    if (mode === "create") {
      this.sel = [Math.min(anchor, month), Math.max(anchor, month)];
    } else if (mode === "move" && startSel) {
      const span = startSel[1] - startSel[0];
      let a = startSel[0] + (month - anchor);
      a = Math.max(0, Math.min(this.months.length - 1 - span, a));
      this.sel = [a, a + span];
    } else if (mode === "resize-left" && startSel) {
      this.sel = [Math.min(month, startSel[1]), startSel[1]];
    } else if (mode === "resize-right" && startSel) {
      this.sel = [startSel[0], Math.max(month, startSel[0])];
    }
    this.draw();
    const [s, e] = this.rangeOf(this.sel);
    this.brush(s, e);
  };

  private onMouseUp = (): void => {
    if (!this.drag) return;
    this.drag = null;
    this.brush.cancel(); // the commit below supersedes any pending brush
    const [s, e] = this.rangeOf(this.sel);
    this.opts.onCommit(s, e);
  };
}
