// Wire types for the engine's JSON API.

export interface TimeSeriesBin {
  month: string; // "YYYY-MM"
  count: number;
}

export interface TimeSeries {
  bins: TimeSeriesBin[];
}

export interface HighlightSpan {
  start: number;
  end: number;
  kind: "q" | "f";
}

export interface SubjectItem {
  phrase: string;
  qf: number;
  df: number;
  score: number;
  sparkline: TimeSeries | null;
}

export interface SummaryItem {
  doc_id: string;
  sentence_index: number;
  tier: number;
  date: string;
  text: string;
  highlights: HighlightSpan[];
}

export interface Paged<T> {
  items: T[];
  page: number;
  page_size: number;
  total: number;
}

export interface StateResponse {
  query: string;
  facet: string | null;
  start: string;
  end: string;
  seed: number;
  total_docs: number;
  timeseries_q: TimeSeries;
  timeseries_qf: TimeSeries | null;
  subjects: Paged<SubjectItem>;
  summary: Paged<SummaryItem>;
}

export interface DocSentence {
  index: number;
  start: number;
  end: number;
}

export interface DocResponse {
  id: string;
  date: string;
  title: string;
  text: string;
  sentences: DocSentence[];
  highlights: HighlightSpan[];
}

export interface BaselineFragment {
  text: string;
  highlights: [number, number][];
}

export interface BaselineItem {
  doc_id: string;
  date: string;
  title: string;
  fragments: BaselineFragment[];
  rendered: string;
}

export interface StateParams {
  q: string;
  f: string | null;
  start: string | null;
  end: string | null;
  subjectsPage: number;
  summaryPage: number;
  seed: number | null;
}
