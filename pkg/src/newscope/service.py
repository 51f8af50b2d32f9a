"""HTTP facade and view assembly.

One /api/state request computes all three linked views from a single query
match so they can never disagree: the timeline over the full corpus span,
subjects over (Q, T), and the sentence summary over (Q, F, T). The engine
below is also what the CLI uses, so the HTTP layer stays thin. A small LRU
keyed by the normalized query caches match results: the bundle is immutable,
so cached selections are pure derived data, and brushing T stays cheap.
"""
from __future__ import annotations

import secrets
import threading
from collections import OrderedDict
from dataclasses import dataclass
from datetime import date

import numpy as np

from .baseline import BaselineConfig, make_snippet, rank_documents_baseline
from .config import EngineConfig
from .errors import EmptyQueryError
from .facets import dedup_subjects, score_subjects, subject_sparkline
from .index import (DocumentSelection, IndexBundle, SelectionState, facet_terms,
                    filter_by_dates, filter_by_facet, match_query_docs, query_terms)
from .summarize import _candidate_for_doc, ordered_doc_choices
from .timeseries import TimeSeries, series_for_indices


class _LRU:
    def __init__(self, capacity: int = 128):
        self._data: OrderedDict = OrderedDict()
        self._capacity = capacity
        self._lock = threading.Lock()

    def get(self, key):
        with self._lock:
            if key in self._data:
                self._data.move_to_end(key)
                return self._data[key]
        return None

    def put(self, key, value):
        with self._lock:
            self._data[key] = value
            self._data.move_to_end(key)
            if len(self._data) > self._capacity:
                self._data.popitem(last=False)


@dataclass
class StateResult:
    state: SelectionState
    seed: int
    total_docs: int
    timeseries_q: TimeSeries
    timeseries_qf: TimeSeries | None
    subjects: list            # SubjectScore page, sparklines attached
    subjects_page: int
    subjects_total: int
    summary: list             # SentenceCandidate page
    summary_page: int
    summary_total: int
    page_size: int = 10


class QueryEngine:
    """All view computation over one loaded bundle."""

    def __init__(self, bundle: IndexBundle, config: EngineConfig = EngineConfig()):
        self.bundle = bundle
        self.config = config
        self._q_cache = _LRU()
        self._qf_cache = _LRU()

    def _query_docs(self, query: str) -> np.ndarray:
        key = " ".join(query_terms(query))
        if not key:
            raise EmptyQueryError("empty query")
        hit = self._q_cache.get(key)
        if hit is None:
            hit = match_query_docs(self.bundle, query)
            self._q_cache.put(key, hit)
        return hit

    def _query_facet_docs(self, query: str, facet: str) -> np.ndarray:
        key = (" ".join(query_terms(query)), " ".join(facet_terms(facet)))
        hit = self._qf_cache.get(key)
        if hit is None:
            hit = filter_by_facet(self.bundle, self._query_docs(query), facet)
            self._qf_cache.put(key, hit)
        return hit

    def state(self, query: str, facet: str | None = None,
              start: date | None = None, end: date | None = None,
              subjects_page: int = 0, summary_page: int = 0,
              seed: int | None = None) -> StateResult:
        """Assemble the full linked-views response for one selection state."""
        bundle = self.bundle
        st = bundle.make_state(query, facet, start, end)
        if subjects_page < 0 or summary_page < 0:
            raise ValueError("page must be non-negative")
        if seed is None:
            seed = secrets.randbits(63)
        elif seed < 0:
            raise ValueError("seed must be non-negative")

        q_all = self._query_docs(st.query)
        series_q = series_for_indices(bundle, q_all)
        if st.facet is not None:
            qf_all = self._query_facet_docs(st.query, st.facet)
            series_qf = series_for_indices(bundle, qf_all)
            final_all = qf_all
        else:
            series_qf = None
            final_all = q_all

        q_t = filter_by_dates(bundle, q_all, st.start, st.end)
        qt_selection = DocumentSelection(SelectionState(st.query, None, st.start, st.end),
                                         [bundle.doc_ids[int(i)] for i in q_t], q_t)
        ranked = score_subjects(bundle, qt_selection)
        subjects = dedup_subjects(ranked, self.config.dedup_levenshtein_sim,
                                  self.config.dedup_jaccard, limit=self.config.subjects_max)
        ps = self.config.page_size
        subject_page_items = subjects[subjects_page * ps:(subjects_page + 1) * ps]
        q_span_selection = DocumentSelection(
            SelectionState(st.query, None, *bundle.corpus_span),
            [], q_all)
        for s in subject_page_items:
            s.sparkline = subject_sparkline(bundle, s.phrase, q_span_selection)

        final_t = filter_by_dates(bundle, final_all, st.start, st.end)
        q_ids = [bundle.term_ids.get(t) for t in query_terms(st.query)]
        f_ids = ([bundle.term_ids.get(t) for t in facet_terms(st.facet)]
                 if st.facet is not None else None)
        ordered = ordered_doc_choices(bundle, final_t, q_ids, f_ids, seed)
        summary_total = len(ordered)
        summary_items = [_candidate_for_doc(bundle, idx, q_ids, f_ids)
                         for idx, _, _ in ordered[summary_page * ps:(summary_page + 1) * ps]]

        return StateResult(
            state=st, seed=seed, total_docs=int(len(final_t)),
            timeseries_q=series_q, timeseries_qf=series_qf,
            subjects=subject_page_items, subjects_page=subjects_page,
            subjects_total=len(subjects),
            summary=summary_items, summary_page=summary_page,
            summary_total=summary_total, page_size=ps,
        )

    def document_view(self, doc_id: str, query: str | None = None,
                      facet: str | None = None) -> dict:
        """Full document payload with absolute highlight spans."""
        bundle = self.bundle
        idx = bundle.id_to_index.get(doc_id)
        if idx is None:
            raise KeyError(doc_id)
        t0, t1 = bundle.doc_token_slice(idx)
        tok_ids = bundle.tok_term[t0:t1]
        highlights: list[dict] = []
        if query:
            tids = {bundle.term_ids.get(t) for t in query_terms(query)}
            tids.discard(None)
            for k in np.nonzero(np.isin(tok_ids, list(tids)))[0] if tids else []:
                off = int(bundle.tok_off[t0 + int(k)])
                highlights.append({"start": off,
                                   "end": off + int(bundle.tok_len[t0 + int(k)]),
                                   "kind": "q"})
        if facet:
            f_ids = [bundle.term_ids.get(t) for t in facet_terms(facet)]
            if f_ids and all(i is not None for i in f_ids):
                k = len(f_ids)
                n = len(tok_ids)
                if n >= k:
                    m = tok_ids[:n - k + 1] == f_ids[0]
                    for j in range(1, k):
                        m = m & (tok_ids[j:n - k + 1 + j] == f_ids[j])
                    for s in np.nonzero(m)[0]:
                        off = int(bundle.tok_off[t0 + int(s)])
                        last = t0 + int(s) + k - 1
                        highlights.append({"start": off,
                                           "end": int(bundle.tok_off[last]) + int(bundle.tok_len[last]),
                                           "kind": "f"})
        highlights.sort(key=lambda h: (h["start"], h["kind"]))
        s0, s1 = bundle.doc_sentence_slice(idx)
        return {
            "id": doc_id,
            "date": bundle.doc_date(idx).isoformat(),
            "title": bundle.titles[idx],
            "text": bundle.texts[idx],
            "sentences": [{"index": i - s0,
                           "start": int(bundle.sent_char[i, 0]),
                           "end": int(bundle.sent_char[i, 1])}
                          for i in range(s0, s1)],
            "highlights": highlights,
        }

    def baseline_page(self, query: str, start: date | None = None,
                      end: date | None = None, page: int = 0) -> dict:
        """Ranked doc+snippet page for the comparison interface."""
        if page < 0:
            raise ValueError("page must be non-negative")
        bundle = self.bundle
        st = bundle.make_state(query, None, start, end)
        ranked = rank_documents_baseline(bundle, st)
        ps = self.config.page_size
        cfg = BaselineConfig()
        items = []
        for doc_id in ranked[page * ps:(page + 1) * ps]:
            doc = bundle.document(doc_id)
            snippet = make_snippet(doc, query, cfg)
            items.append({
                "doc_id": doc_id,
                "date": doc.date.isoformat(),
                "title": doc.title,
                "fragments": [{"text": f.text,
                               "highlights": [[a, b] for a, b in f.highlights]}
                              for f in snippet.fragments],
                "rendered": snippet.rendered(),
            })
        return {"items": items, "page": page, "page_size": ps, "total": len(ranked)}


# -- JSON shaping -------------------------------------------------------------


def _series_json(series: TimeSeries | None) -> dict | None:
    if series is None:
        return None
    return {"bins": [{"month": m, "count": c} for m, c in series.bins]}


def state_json(result: StateResult) -> dict:
    st = result.state
    return {
        "query": st.query,
        "facet": st.facet,
        "start": st.start.isoformat(),
        "end": st.end.isoformat(),
        "seed": result.seed,
        "total_docs": result.total_docs,
        "timeseries_q": _series_json(result.timeseries_q),
        "timeseries_qf": _series_json(result.timeseries_qf),
        "subjects": {
            "items": [{
                "phrase": s.phrase,
                "qf": s.qf,
                "df": s.df,
                "score": s.score,
                "sparkline": _series_json(s.sparkline),
            } for s in result.subjects],
            "page": result.subjects_page,
            "page_size": result.page_size,
            "total": result.subjects_total,
        },
        "summary": {
            "items": [{
                "doc_id": c.doc_id,
                "sentence_index": c.sentence_index,
                "tier": c.tier,
                "date": c.date.isoformat(),
                "text": c.text,
                "highlights": [{"start": h.start, "end": h.end, "kind": h.kind}
                               for h in c.highlight_spans],
            } for c in result.summary],
            "page": result.summary_page,
            "page_size": result.page_size,
            "total": result.summary_total,
        },
    }


# -- FastAPI app ---------------------------------------------------------------


def create_app(bundle: IndexBundle, config: EngineConfig = EngineConfig(),
               ui_dir: str | None = None):
    from fastapi import FastAPI, HTTPException, Query
    from fastapi.middleware.cors import CORSMiddleware

    engine = QueryEngine(bundle, config)
    app = FastAPI(title="newscope", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    app.state.engine = engine

    def _parse_date(value: str | None, name: str) -> date | None:
        if value is None or value == "":
            return None
        try:
            return date.fromisoformat(value)
        except ValueError:
            raise HTTPException(400, f"invalid {name} date: {value!r}")

    @app.get("/api/state")
    def api_state(q: str | None = None, f: str | None = None,
                  start: str | None = None, end: str | None = None,
                  subjects_page: int = Query(0), summary_page: int = Query(0),
                  seed: int | None = None):
        if not q or not q.strip():
            raise HTTPException(400, "missing or empty query")
        try:
            result = engine.state(q, f or None, _parse_date(start, "start"),
                                  _parse_date(end, "end"), subjects_page,
                                  summary_page, seed)
        except EmptyQueryError as e:
            raise HTTPException(400, str(e))
        except ValueError as e:
            raise HTTPException(400, str(e))
        return state_json(result)

    @app.get("/api/doc/{doc_id}")
    def api_doc(doc_id: str, q: str | None = None, f: str | None = None):
        try:
            return engine.document_view(doc_id, q, f)
        except KeyError:
            raise HTTPException(404, f"unknown document id {doc_id!r}")

    @app.get("/api/baseline")
    def api_baseline(q: str | None = None, start: str | None = None,
                     end: str | None = None, page: int = Query(0)):
        if not q or not q.strip():
            raise HTTPException(400, "missing or empty query")
        try:
            return engine.baseline_page(q, _parse_date(start, "start"),
                                        _parse_date(end, "end"), page)
        except EmptyQueryError as e:
            raise HTTPException(400, str(e))
        except ValueError as e:
            raise HTTPException(400, str(e))

    if ui_dir:
        from pathlib import Path

        from fastapi.staticfiles import StaticFiles
        if Path(ui_dir).is_dir():
            app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
