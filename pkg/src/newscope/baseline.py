"""Traditional search-result snippets for the comparison interface.

Fragments are windows of text around query-term hits, snapped outward to
whitespace, merged when they overlap, ranked by how many distinct query
terms (then hits) they contain, and rendered joined by "...". Document
ranking is a plain tf-idf sum, newest first on ties.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import Document
from .index import IndexBundle, SelectionState, match_documents, query_terms


@dataclass(frozen=True)
class BaselineConfig:
    surround: int = 50
    top: int = 2

    def __post_init__(self) -> None:
        if self.surround < 1:
            raise ValueError("surround must be >= 1")
        if self.top < 1:
            raise ValueError("top must be >= 1")


@dataclass
class Fragment:
    text: str
    start: int                      # char offset into the document
    highlights: list[tuple[int, int]] = field(default_factory=list)  # relative to text


@dataclass
class Snippet:
    doc_id: str
    fragments: list[Fragment]

    def rendered(self) -> str:
        return " ... ".join(f.text for f in self.fragments)


def make_snippet(doc: Document, query: str, config: BaselineConfig = BaselineConfig()) -> Snippet:
    """Highlighted fragments around query-term hits in one document."""
    terms = set(query_terms(query))
    text = doc.text
    n = len(text)
    hits = [(t.char_offset, t.char_offset + len(t.surface), t.normalized)
            for t in doc.tokens if t.normalized in terms]
    if not hits:
        raise ValueError(f"document {doc.id!r} contains no query term")

    windows: list[list] = []  # [start, end, hit list]
    for h0, h1, term in hits:
        start = max(0, h0 - config.surround)
        end = min(n, h1 + config.surround)
        while start > 0 and not text[start - 1].isspace():
            start -= 1
        while end < n and not text[end].isspace():
            end += 1
        if windows and start <= windows[-1][1]:
            windows[-1][1] = max(windows[-1][1], end)
            windows[-1][2].append((h0, h1, term))
        else:
            windows.append([start, end, [(h0, h1, term)]])

    ranked = sorted(windows,
                    key=lambda w: (-len({t for _, _, t in w[2]}), -len(w[2]), w[0]))
    chosen = sorted(ranked[:config.top], key=lambda w: w[0])
    fragments = [
        Fragment(text[start:end], start, [(h0 - start, h1 - start) for h0, h1, _ in hl])
        for start, end, hl in chosen
    ]
    return Snippet(doc.id, fragments)


def rank_documents_baseline(bundle: IndexBundle, state: SelectionState) -> list[str]:
    """Matching doc ids ordered by tf-idf over query terms, ties by recency.

    idf is ln(1 + N/df), strictly positive so extra occurrences always help
    even for terms present in every document.
    """
    selection = match_documents(bundle, SelectionState(state.query, None, state.start, state.end))
    cand = selection.indices
    if len(cand) == 0:
        return []
    scores = np.zeros(len(cand), dtype=np.float64)
    n_docs = bundle.n_docs
    for term in query_terms(state.query):
        tid = bundle.term_ids.get(term)
        if tid is None:
            continue
        lo, hi = bundle.term_ptr[tid], bundle.term_ptr[tid + 1]
        p_docs = bundle.term_docs[lo:hi]
        p_tf = bundle.term_tf[lo:hi]
        pos = np.searchsorted(p_docs, cand)
        # every candidate contains every term (conjunctive match)
        scores += p_tf[pos] * math.log(1.0 + n_docs / (hi - lo))
    order = np.lexsort((cand, -bundle.dates[cand], -scores))
    return [bundle.doc_ids[int(cand[i])] for i in order]
