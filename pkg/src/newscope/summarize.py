"""Sentence summary: one candidate per document, tiered, temporally sampled.

Every selected document contributes exactly one sentence, the one with the
lowest (tier, sentence_index) key. Tier 0 sentences contain the query terms
and the facet, tier 1 exactly one of the two, tier 2 neither; with no facet
set, tiers collapse to contains-query / does-not. The sampler then orders
each tier stratum at random: picking a month bin with probability
proportional to its remaining candidates and then picking uniformly inside
the bin gives every remaining candidate the same probability, so a single
seeded shuffle per tier realizes exactly that distribution in O(n). The
generator is numpy's PCG64, seeded per request, so orderings replay
bit-for-bit for a given (pool, seed).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date

import numpy as np

from .corpus import Document
from .index import (IndexBundle, SelectionState, facet_terms, match_documents,
                    query_terms)


@dataclass(frozen=True)
class HighlightSpan:
    start: int
    end: int
    kind: str  # "q" or "f"


@dataclass
class SentenceCandidate:
    doc_id: str
    sentence_index: int
    tier: int
    date: date
    text: str
    highlight_spans: list[HighlightSpan] = field(default_factory=list)


@dataclass
class SentencePool:
    selection: SelectionState
    candidates: list[SentenceCandidate]


def _sentence_flags(tok_ids: np.ndarray, tok_sent: np.ndarray, n_sentences: int,
                    q_ids: list[int | None], f_ids: list[int | None] | None,
                    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-sentence query / facet containment plus facet run starts."""
    q_ok = np.ones(n_sentences, dtype=bool)
    for tid in q_ids:
        present = np.zeros(n_sentences, dtype=bool)
        if tid is not None:
            present[tok_sent[tok_ids == tid]] = True
        q_ok &= present

    f_ok = np.zeros(n_sentences, dtype=bool)
    starts = np.empty(0, dtype=np.int64)
    if f_ids and all(i is not None for i in f_ids):
        k = len(f_ids)
        n = len(tok_ids)
        if n >= k:
            m = tok_ids[:n - k + 1] == f_ids[0]
            for j in range(1, k):
                m = m & (tok_ids[j:n - k + 1 + j] == f_ids[j])
            starts = np.nonzero(m)[0]
            if len(starts) and k > 1:
                starts = starts[tok_sent[starts] == tok_sent[starts + k - 1]]
            f_ok[tok_sent[starts]] = True
    return q_ok, f_ok, starts


def _choose(q_ok: np.ndarray, f_ok: np.ndarray, has_facet: bool) -> tuple[int, int]:
    """Lowest (tier, sentence_index) pair over the flag vectors."""
    if has_facet:
        both = q_ok & f_ok
        if both.any():
            return 0, int(both.argmax())
        one = q_ok ^ f_ok
        if one.any():
            return 1, int(one.argmax())
        return 2, 0
    if q_ok.any():
        return 1, int(q_ok.argmax())
    return 2, 0


def _doc_choice(bundle: IndexBundle, idx: int, q_ids: list[int | None],
                f_ids: list[int | None] | None) -> tuple[int, int]:
    """(tier, sentence_index) for one document, no text materialization."""
    t0, t1 = bundle.doc_token_slice(idx)
    s0, s1 = bundle.doc_sentence_slice(idx)
    q_ok, f_ok, _ = _sentence_flags(bundle.tok_term[t0:t1], bundle.tok_sent[t0:t1],
                                    s1 - s0, q_ids, f_ids)
    return _choose(q_ok, f_ok, f_ids is not None)


def _candidate_for_doc(bundle: IndexBundle, idx: int,
                       q_ids: list[int | None],
                       f_ids: list[int | None] | None) -> SentenceCandidate:
    t0, t1 = bundle.doc_token_slice(idx)
    s0, s1 = bundle.doc_sentence_slice(idx)
    tok_ids = bundle.tok_term[t0:t1]
    tok_sent = bundle.tok_sent[t0:t1]
    q_ok, f_ok, f_starts = _sentence_flags(tok_ids, tok_sent, s1 - s0, q_ids, f_ids)
    tier, sent_idx = _choose(q_ok, f_ok, f_ids is not None)

    text = bundle.texts[idx]
    c0, c1 = int(bundle.sent_char[s0 + sent_idx, 0]), int(bundle.sent_char[s0 + sent_idx, 1])
    spans: list[HighlightSpan] = []
    st0, st1 = int(bundle.sent_tok[s0 + sent_idx, 0]), int(bundle.sent_tok[s0 + sent_idx, 1])
    q_set = {i for i in q_ids if i is not None}
    for k in range(st0, st1):
        if int(tok_ids[k]) in q_set:
            off = int(bundle.tok_off[t0 + k])
            spans.append(HighlightSpan(off - c0, off - c0 + int(bundle.tok_len[t0 + k]), "q"))
    if f_ids:
        k = len(f_ids)
        for s in f_starts:
            if st0 <= int(s) < st1:
                off = int(bundle.tok_off[t0 + int(s)])
                end_tok = t0 + int(s) + k - 1
                end = int(bundle.tok_off[end_tok]) + int(bundle.tok_len[end_tok])
                spans.append(HighlightSpan(off - c0, end - c0, "f"))
    spans.sort(key=lambda h: (h.start, h.kind))
    return SentenceCandidate(bundle.doc_ids[idx], sent_idx, tier,
                             bundle.doc_date(idx), text[c0:c1], spans)


def select_document_sentence(doc: Document, query: str,
                             facet: str | None) -> SentenceCandidate:
    """Pick the document's best sentence by the (tier, index) key.

    Standalone form over a materialized document; the pool builder runs the
    same logic against the index arrays.
    """
    local: dict[str, int] = {}
    for t in doc.tokens:
        local.setdefault(t.normalized, len(local))
    tok_ids = np.array([local[t.normalized] for t in doc.tokens], dtype=np.int64)
    tok_sent = np.array([t.sentence_index for t in doc.tokens], dtype=np.int64)
    q_ids = [local.get(t) for t in query_terms(query)]
    f_ids = [local.get(t) for t in facet_terms(facet)] if facet is not None else None
    q_ok, f_ok, f_starts = _sentence_flags(tok_ids, tok_sent, len(doc.sentences),
                                           q_ids, f_ids)
    tier, sent_idx = _choose(q_ok, f_ok, f_ids is not None)

    sent = doc.sentences[sent_idx]
    c0, c1 = sent.char_span
    q_set = {i for i in q_ids if i is not None}
    spans: list[HighlightSpan] = []
    for k in range(sent.token_span[0], sent.token_span[1]):
        tok = doc.tokens[k]
        if local[tok.normalized] in q_set:
            spans.append(HighlightSpan(tok.char_offset - c0,
                                       tok.char_offset - c0 + len(tok.surface), "q"))
    if f_ids:
        klen = len(f_ids)
        for s in f_starts:
            s = int(s)
            if sent.token_span[0] <= s < sent.token_span[1]:
                last = doc.tokens[s + klen - 1]
                spans.append(HighlightSpan(doc.tokens[s].char_offset - c0,
                                           last.char_offset + len(last.surface) - c0, "f"))
    spans.sort(key=lambda h: (h.start, h.kind))
    return SentenceCandidate(doc.id, sent_idx, tier, doc.date, doc.text[c0:c1], spans)


def build_sentence_pool(bundle: IndexBundle, state: SelectionState) -> SentencePool:
    """One candidate per matching document, in (date, id) order."""
    selection = match_documents(bundle, state)
    q_ids = [bundle.term_ids.get(t) for t in query_terms(state.query)]
    f_ids = ([bundle.term_ids.get(t) for t in facet_terms(state.facet)]
             if state.facet is not None else None)
    candidates = [_candidate_for_doc(bundle, int(i), q_ids, f_ids)
                  for i in selection.indices]
    return SentencePool(state, candidates)


def sample_summary(pool: SentencePool, seed: int) -> list[SentenceCandidate]:
    """Total ordering of the pool: tiers ascending, each tier shuffled.

    Deterministic for a given (pool, seed); draws are without replacement,
    so paging eventually enumerates the whole pool.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    ordered: list[SentenceCandidate] = []
    for tier in (0, 1, 2):
        group = [c for c in pool.candidates if c.tier == tier]
        if not group:
            continue
        for i in rng.permutation(len(group)):
            ordered.append(group[int(i)])
    return ordered


def ordered_doc_choices(bundle: IndexBundle, indices, q_ids, f_ids,
                        seed: int) -> list[tuple[int, int, int]]:
    """Summary ordering as light (doc_index, tier, sentence_index) triples.

    Consumes the PRNG exactly like sample_summary over the pool built from
    the same indices, so a page materialized from these triples equals the
    corresponding slice of the full candidate ordering.
    """
    choices = [(int(i),) + _doc_choice(bundle, int(i), q_ids, f_ids)
               for i in indices]
    rng = np.random.Generator(np.random.PCG64(seed))
    ordered: list[tuple[int, int, int]] = []
    for tier in (0, 1, 2):
        group = [c for c in choices if c[1] == tier]
        if not group:
            continue
        for i in rng.permutation(len(group)):
            ordered.append(group[int(i)])
    return ordered


def paginate_summary(ordered: list[SentenceCandidate], page: int,
                     page_size: int = 10) -> tuple[list[SentenceCandidate], int]:
    """Stable page slice plus the total count; pages past the end are empty."""
    if page < 0:
        raise ValueError("page must be non-negative")
    if page_size < 1:
        raise ValueError("page_size must be positive")
    lo = page * page_size
    return ordered[lo:lo + page_size], len(ordered)
