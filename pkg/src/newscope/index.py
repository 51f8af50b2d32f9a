"""Immutable index bundle: term postings, phrase postings, month bins.

Documents are held in canonical order (ascending date, then id), so every
selection is a sorted array of document indexes and ordering invariants fall
out of array order. Token, sentence and postings tables use flat CSR-style
arrays; per-document views are zero-copy slices. The bundle never mutates
after build, which makes concurrent read-only queries safe.

On disk an index is a directory: ``manifest.json`` (normative layout),
``docs.jsonl``, ``strings.json`` and ``arrays.npz``.
"""
from __future__ import annotations

import json
import sys
import zipfile
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import numpy as np

from .corpus import POS_CODES, POS_TAGS, PUNCT, Document, Sentence, Token, tokenize
from .errors import EmptyQueryError, IndexPersistError, IndexVersionError
from .phrases import extract_noun_phrases

FORMAT_VERSION = 1
MIN_PHRASE_COUNT = 5

_PUNCT_CODE = POS_CODES[PUNCT]

_ARRAY_FIELDS = (
    "dates", "months",
    "tok_term", "tok_off", "tok_len", "tok_sent", "tok_pos", "doc_tok",
    "sent_char", "sent_tok", "doc_sent",
    "term_docs", "term_tf", "term_ptr",
    "phrase_df", "phrase_docs", "phrase_counts", "phrase_ptr",
    "doc_phrase_ids", "doc_phrase_counts", "doc_phrase_ptr",
)


@dataclass(frozen=True)
class SelectionState:
    """The (query, facet, timespan) triple that drives every view."""
    query: str
    facet: str | None
    start: date
    end: date


@dataclass
class DocumentSelection:
    selection: SelectionState
    doc_ids: list[str]
    indices: np.ndarray  # int32, ascending canonical order


@dataclass
class IndexBundle:
    doc_ids: list[str]
    titles: list[str]
    texts: list[str]
    dates: np.ndarray       # int32 date ordinals, per doc
    months: np.ndarray      # int32 month bin index, per doc
    # token table, CSR over documents
    tok_term: np.ndarray
    tok_off: np.ndarray
    tok_len: np.ndarray
    tok_sent: np.ndarray
    tok_pos: np.ndarray
    doc_tok: np.ndarray
    # sentence table, CSR over documents; char/token spans as (n, 2) arrays
    sent_char: np.ndarray
    sent_tok: np.ndarray
    doc_sent: np.ndarray
    # term index
    vocab: list[str]
    term_docs: np.ndarray
    term_tf: np.ndarray
    term_ptr: np.ndarray
    # phrase index (phrases sorted lexicographically, so id order == lexicographic)
    phrases: list[str]
    phrase_df: np.ndarray
    phrase_docs: np.ndarray
    phrase_counts: np.ndarray
    phrase_ptr: np.ndarray
    doc_phrase_ids: np.ndarray
    doc_phrase_counts: np.ndarray
    doc_phrase_ptr: np.ndarray

    id_to_index: dict[str, int] = field(repr=False, default_factory=dict)
    term_ids: dict[str, int] = field(repr=False, default_factory=dict)
    phrase_ids: dict[str, int] = field(repr=False, default_factory=dict)
    month_labels: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.id_to_index:
            self.id_to_index = {d: i for i, d in enumerate(self.doc_ids)}
        if not self.term_ids:
            self.term_ids = {t: i for i, t in enumerate(self.vocab)}
        if not self.phrase_ids:
            self.phrase_ids = {p: i for i, p in enumerate(self.phrases)}
        if not self.month_labels:
            self.month_labels = _month_labels(self.corpus_span)

    # -- basic stats -------------------------------------------------------

    @property
    def n_docs(self) -> int:
        return len(self.doc_ids)

    @property
    def n_months(self) -> int:
        return len(self.month_labels)

    @property
    def corpus_span(self) -> tuple[date, date]:
        return (date.fromordinal(int(self.dates[0])), date.fromordinal(int(self.dates[-1])))

    def doc_date(self, idx: int) -> date:
        return date.fromordinal(int(self.dates[idx]))

    # -- term / phrase access ----------------------------------------------

    def term_postings(self, term: str) -> list[tuple[str, int]]:
        tid = self.term_ids.get(term)
        if tid is None:
            return []
        lo, hi = self.term_ptr[tid], self.term_ptr[tid + 1]
        return [(self.doc_ids[int(d)], int(tf))
                for d, tf in zip(self.term_docs[lo:hi], self.term_tf[lo:hi])]

    def phrase_postings(self, phrase: str) -> list[tuple[str, int]]:
        pid = self.phrase_ids.get(phrase)
        if pid is None:
            return []
        lo, hi = self.phrase_ptr[pid], self.phrase_ptr[pid + 1]
        return [(self.doc_ids[int(d)], int(c))
                for d, c in zip(self.phrase_docs[lo:hi], self.phrase_counts[lo:hi])]

    def phrase_doc_indices(self, pid: int) -> np.ndarray:
        lo, hi = self.phrase_ptr[pid], self.phrase_ptr[pid + 1]
        return self.phrase_docs[lo:hi]

    # -- document access -----------------------------------------------------

    def doc_token_slice(self, idx: int) -> tuple[int, int]:
        return int(self.doc_tok[idx]), int(self.doc_tok[idx + 1])

    def doc_sentence_slice(self, idx: int) -> tuple[int, int]:
        return int(self.doc_sent[idx]), int(self.doc_sent[idx + 1])

    def document(self, doc_id: str) -> Document:
        """Materialize the stored document, tokens and sentences included."""
        idx = self.id_to_index[doc_id]
        text = self.texts[idx]
        t0, t1 = self.doc_token_slice(idx)
        tokens = []
        for k in range(t0, t1):
            off = int(self.tok_off[k])
            surface = text[off:off + int(self.tok_len[k])]
            tokens.append(Token(surface, self.vocab[int(self.tok_term[k])],
                                POS_TAGS[int(self.tok_pos[k])], off, int(self.tok_sent[k])))
        s0, s1 = self.doc_sentence_slice(idx)
        sentences = [
            Sentence(i - s0,
                     (int(self.sent_char[i, 0]), int(self.sent_char[i, 1])),
                     (int(self.sent_tok[i, 0]), int(self.sent_tok[i, 1])))
            for i in range(s0, s1)
        ]
        return Document(doc_id, self.doc_date(idx), self.titles[idx], text, sentences, tokens)

    # -- selection helpers ---------------------------------------------------

    def make_state(self, query: str, facet: str | None = None,
                   start: date | None = None, end: date | None = None) -> SelectionState:
        """Build a selection state, defaulting and clipping T to the corpus span."""
        span0, span1 = self.corpus_span
        s = span0 if start is None else max(start, span0)
        e = span1 if end is None else min(end, span1)
        if s > e:
            raise ValueError(f"empty timespan [{s}, {e}]")
        facet = facet or None
        return SelectionState(query, facet, s, e)


def _month_index(d: date, origin: date) -> int:
    return (d.year - origin.year) * 12 + (d.month - origin.month)


def _month_labels(span: tuple[date, date]) -> list[str]:
    labels = []
    y, m = span[0].year, span[0].month
    while (y, m) <= (span[1].year, span[1].month):
        labels.append(f"{y:04d}-{m:02d}")
        m += 1
        if m > 12:
            y, m = y + 1, 1
    return labels


def query_terms(query: str) -> list[str]:
    """Normalized, deduplicated search terms of a free-text query."""
    terms: list[str] = []
    seen = set()
    for t in tokenize(query):
        if not any(ch.isalnum() for ch in t.surface):
            continue
        if t.normalized not in seen:
            seen.add(t.normalized)
            terms.append(t.normalized)
    return terms


def facet_terms(facet: str) -> list[str]:
    """Normalized token sequence a facet must match contiguously."""
    return [t.normalized for t in tokenize(facet)]


def normalize_phrase_text(text: str) -> str:
    """Case-folded, space-joined form of free text, for phrase comparison."""
    return " ".join(t.normalized for t in tokenize(text)
                    if any(ch.isalnum() for ch in t.surface))


# -- build ------------------------------------------------------------------


def build_index(docs: list[Document]) -> IndexBundle:
    """Build the full bundle from analyzed documents in one pass.

    Documents are re-ordered canonically (date, then id). Phrases occurring
    fewer than MIN_PHRASE_COUNT times across the corpus are dropped from the
    phrase index; the term index keeps every non-punctuation token.
    """
    if not docs:
        raise ValueError("cannot build an index from an empty corpus")
    ids = [d.id for d in docs]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate document ids in corpus")

    order = sorted(range(len(docs)), key=lambda i: (docs[i].date.toordinal(), docs[i].id))
    docs = [docs[i] for i in order]

    doc_ids = [d.id for d in docs]
    titles = [d.title for d in docs]
    texts = [d.text for d in docs]
    dates = np.array([d.date.toordinal() for d in docs], dtype=np.int32)
    origin = docs[0].date
    months = np.array([_month_index(d.date, origin) for d in docs], dtype=np.int32)

    vocab: list[str] = []
    term_ids: dict[str, int] = {}

    tok_term_parts, tok_off_parts, tok_len_parts = [], [], []
    tok_sent_parts, tok_pos_parts = [], []
    doc_tok = np.zeros(len(docs) + 1, dtype=np.int64)
    sent_char_rows, sent_tok_rows = [], []
    doc_sent = np.zeros(len(docs) + 1, dtype=np.int64)

    post_terms, post_docs, post_tf = [], [], []
    phrase_totals: dict[str, int] = {}
    doc_phrase_counters: list[dict[str, int]] = []
    intern = sys.intern

    for di, doc in enumerate(docs):
        n_tok = len(doc.tokens)
        t_ids = np.empty(n_tok, dtype=np.int32)
        t_off = np.empty(n_tok, dtype=np.int32)
        t_len = np.empty(n_tok, dtype=np.int32)
        t_sent = np.empty(n_tok, dtype=np.int32)
        t_pos = np.empty(n_tok, dtype=np.int8)
        for k, tok in enumerate(doc.tokens):
            tid = term_ids.get(tok.normalized)
            if tid is None:
                tid = len(vocab)
                w = intern(tok.normalized)
                term_ids[w] = tid
                vocab.append(w)
            t_ids[k] = tid
            t_off[k] = tok.char_offset
            t_len[k] = len(tok.surface)
            t_sent[k] = tok.sentence_index
            t_pos[k] = POS_CODES[tok.pos]
        tok_term_parts.append(t_ids)
        tok_off_parts.append(t_off)
        tok_len_parts.append(t_len)
        tok_sent_parts.append(t_sent)
        tok_pos_parts.append(t_pos)
        doc_tok[di + 1] = doc_tok[di] + n_tok

        for s in doc.sentences:
            sent_char_rows.append(s.char_span)
            sent_tok_rows.append(s.token_span)
        doc_sent[di + 1] = doc_sent[di] + len(doc.sentences)

        word_ids = t_ids[t_pos != _PUNCT_CODE]
        uniq, counts = np.unique(word_ids, return_counts=True)
        post_terms.append(uniq)
        post_docs.append(np.full(len(uniq), di, dtype=np.int32))
        post_tf.append(counts.astype(np.int32))

        counter: dict[str, int] = {}
        for span in extract_noun_phrases(doc):
            counter[span.normalized] = counter.get(span.normalized, 0) + 1
        doc_phrase_counters.append(counter)
        for p, c in counter.items():
            phrase_totals[p] = phrase_totals.get(p, 0) + c

    tok_term = np.concatenate(tok_term_parts) if tok_term_parts else np.empty(0, np.int32)
    tok_off = np.concatenate(tok_off_parts)
    tok_len = np.concatenate(tok_len_parts)
    tok_sent = np.concatenate(tok_sent_parts)
    tok_pos = np.concatenate(tok_pos_parts)
    sent_char = np.array(sent_char_rows, dtype=np.int32).reshape(-1, 2)
    sent_tok = np.array(sent_tok_rows, dtype=np.int32).reshape(-1, 2)

    # term postings: doc-major triples sorted stably by term id
    all_terms = np.concatenate(post_terms)
    all_docs = np.concatenate(post_docs)
    all_tf = np.concatenate(post_tf)
    by_term = np.argsort(all_terms, kind="stable")
    term_docs = all_docs[by_term]
    term_tf = all_tf[by_term]
    term_ptr = np.zeros(len(vocab) + 1, dtype=np.int64)
    np.cumsum(np.bincount(all_terms, minlength=len(vocab)), out=term_ptr[1:])

    phrases = sorted(p for p, c in phrase_totals.items() if c >= MIN_PHRASE_COUNT)
    phrase_id_map = {p: i for i, p in enumerate(phrases)}

    dp_ids_parts, dp_counts_parts = [], []
    doc_phrase_ptr = np.zeros(len(docs) + 1, dtype=np.int64)
    pp_phr, pp_doc, pp_count = [], [], []
    for di, counter in enumerate(doc_phrase_counters):
        pids = sorted(phrase_id_map[p] for p in counter if p in phrase_id_map)
        cnts = [counter[phrases[pid]] for pid in pids]
        dp_ids_parts.append(np.array(pids, dtype=np.int32))
        dp_counts_parts.append(np.array(cnts, dtype=np.int32))
        doc_phrase_ptr[di + 1] = doc_phrase_ptr[di] + len(pids)
        pp_phr.append(np.array(pids, dtype=np.int32))
        pp_doc.append(np.full(len(pids), di, dtype=np.int32))
        pp_count.append(np.array(cnts, dtype=np.int32))

    doc_phrase_ids = np.concatenate(dp_ids_parts) if dp_ids_parts else np.empty(0, np.int32)
    doc_phrase_counts = np.concatenate(dp_counts_parts) if dp_counts_parts else np.empty(0, np.int32)
    all_pp = np.concatenate(pp_phr) if pp_phr else np.empty(0, np.int32)
    all_pd = np.concatenate(pp_doc) if pp_doc else np.empty(0, np.int32)
    all_pc = np.concatenate(pp_count) if pp_count else np.empty(0, np.int32)
    by_phrase = np.argsort(all_pp, kind="stable")
    phrase_docs = all_pd[by_phrase]
    phrase_counts = all_pc[by_phrase]
    phrase_ptr = np.zeros(len(phrases) + 1, dtype=np.int64)
    np.cumsum(np.bincount(all_pp, minlength=len(phrases)), out=phrase_ptr[1:])
    phrase_df = np.diff(phrase_ptr).astype(np.int32)

    return IndexBundle(
        doc_ids=doc_ids, titles=titles, texts=texts, dates=dates, months=months,
        tok_term=tok_term, tok_off=tok_off, tok_len=tok_len, tok_sent=tok_sent,
        tok_pos=tok_pos, doc_tok=doc_tok,
        sent_char=sent_char, sent_tok=sent_tok, doc_sent=doc_sent,
        vocab=vocab, term_docs=term_docs, term_tf=term_tf, term_ptr=term_ptr,
        phrases=phrases, phrase_df=phrase_df, phrase_docs=phrase_docs,
        phrase_counts=phrase_counts, phrase_ptr=phrase_ptr,
        doc_phrase_ids=doc_phrase_ids, doc_phrase_counts=doc_phrase_counts,
        doc_phrase_ptr=doc_phrase_ptr,
        term_ids=term_ids, phrase_ids=phrase_id_map,
    )


# -- matching ----------------------------------------------------------------


def _term_doc_indices(bundle: IndexBundle, term: str) -> np.ndarray:
    tid = bundle.term_ids.get(term)
    if tid is None:
        return np.empty(0, dtype=np.int32)
    lo, hi = bundle.term_ptr[tid], bundle.term_ptr[tid + 1]
    return bundle.term_docs[lo:hi]


def match_query_docs(bundle: IndexBundle, query: str) -> np.ndarray:
    """Doc indices containing ALL query terms (conjunctive match)."""
    terms = query_terms(query)
    if not terms:
        raise EmptyQueryError("empty query")
    postings = [_term_doc_indices(bundle, t) for t in terms]
    postings.sort(key=len)
    cand = postings[0]
    for p in postings[1:]:
        if len(cand) == 0:
            break
        cand = np.intersect1d(cand, p, assume_unique=True)
    return cand.astype(np.int32)


def filter_by_dates(bundle: IndexBundle, indices: np.ndarray,
                    start: date, end: date) -> np.ndarray:
    if len(indices) == 0:
        return indices
    d = bundle.dates[indices]
    return indices[(d >= start.toordinal()) & (d <= end.toordinal())]


def filter_by_facet(bundle: IndexBundle, indices: np.ndarray, facet: str) -> np.ndarray:
    """Keep docs containing the facet as a contiguous normalized token run."""
    f_terms = facet_terms(facet)
    if not f_terms:
        raise EmptyQueryError("empty facet")
    f_ids = [bundle.term_ids.get(t) for t in f_terms]
    if any(i is None for i in f_ids):
        return np.empty(0, dtype=np.int32)
    k = len(f_ids)
    keep = []
    for idx in indices:
        lo, hi = bundle.doc_token_slice(int(idx))
        ids = bundle.tok_term[lo:hi]
        n = hi - lo
        if n < k:
            continue
        m = ids[:n - k + 1] == f_ids[0]
        ok = m.any()
        for j in range(1, k):
            if not ok:
                break
            m = m & (ids[j:n - k + 1 + j] == f_ids[j])
            ok = m.any()
        if ok:
            keep.append(int(idx))
    return np.array(keep, dtype=np.int32)


def match_documents(bundle: IndexBundle, state: SelectionState) -> DocumentSelection:
    """Select documents matching the full (query, facet, timespan) state.

    A document matches when it contains all query terms, its date lies in
    the timespan, and (facet set) it contains the facet token sequence
    contiguously. Results ascend by (date, id).
    """
    cand = match_query_docs(bundle, state.query)
    cand = filter_by_dates(bundle, cand, state.start, state.end)
    if state.facet is not None:
        cand = filter_by_facet(bundle, cand, state.facet)
    return DocumentSelection(state, [bundle.doc_ids[int(i)] for i in cand], cand)


# -- persistence --------------------------------------------------------------


def save_index(bundle: IndexBundle, path: str | Path) -> None:
    """Write the bundle to a directory (manifest, docs, strings, arrays)."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    span = bundle.corpus_span
    manifest = {
        "format_version": FORMAT_VERSION,
        "n_docs": bundle.n_docs,
        "n_terms": len(bundle.vocab),
        "n_phrases": len(bundle.phrases),
        "corpus_span": [span[0].isoformat(), span[1].isoformat()],
    }
    (path / "manifest.json").write_text(json.dumps(manifest, indent=2), encoding="utf-8")
    with open(path / "docs.jsonl", "w", encoding="utf-8") as fh:
        for i, doc_id in enumerate(bundle.doc_ids):
            fh.write(json.dumps({
                "id": doc_id,
                "date": bundle.doc_date(i).isoformat(),
                "title": bundle.titles[i],
                "text": bundle.texts[i],
            }, ensure_ascii=False) + "\n")
    (path / "strings.json").write_text(
        json.dumps({"vocab": bundle.vocab, "phrases": bundle.phrases}, ensure_ascii=False),
        encoding="utf-8")
    arrays = {name: getattr(bundle, name) for name in _ARRAY_FIELDS}
    np.savez_compressed(path / "arrays.npz", **arrays)


def load_index(path: str | Path) -> IndexBundle:
    """Load a bundle saved by save_index; validates the format version."""
    path = Path(path)
    manifest_path = path / "manifest.json"
    if not manifest_path.exists():
        raise IndexPersistError(f"no manifest.json in {path}")
    try:
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise IndexPersistError(f"corrupt manifest.json: {e.msg}") from None
    version = manifest.get("format_version")
    if version != FORMAT_VERSION:
        raise IndexVersionError(
            f"index format version {version} is not supported by reader version {FORMAT_VERSION}")
    try:
        strings = json.loads((path / "strings.json").read_text(encoding="utf-8"))
        with np.load(path / "arrays.npz") as npz:
            arrays = {name: npz[name] for name in _ARRAY_FIELDS}
        doc_ids, titles, texts = [], [], []
        with open(path / "docs.jsonl", encoding="utf-8") as fh:
            for line in fh:
                obj = json.loads(line)
                doc_ids.append(obj["id"])
                titles.append(obj["title"])
                texts.append(obj["text"])
    except (OSError, KeyError, ValueError, zipfile.BadZipFile) as e:
        raise IndexPersistError(f"corrupt index directory {path}: {e}") from None
    if len(doc_ids) != manifest["n_docs"]:
        raise IndexPersistError(
            f"docs.jsonl holds {len(doc_ids)} documents, manifest says {manifest['n_docs']}")
    return IndexBundle(doc_ids=doc_ids, titles=titles, texts=texts,
                       vocab=strings["vocab"], phrases=strings["phrases"], **arrays)
