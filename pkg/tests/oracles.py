"""Independent brute-force reference implementations used by the tests.

Everything here recomputes results from Document objects with plain Python
data structures, deliberately avoiding the index/postings machinery under
test.
"""
from __future__ import annotations

from collections import Counter

from newscope.corpus import Document, PUNCT, tokenize
from newscope.index import SelectionState, facet_terms, query_terms
from newscope.phrases import extract_noun_phrases

MIN_COUNT = 5


def doc_word_set(doc: Document) -> set[str]:
    return {t.normalized for t in doc.tokens if t.pos != PUNCT}


def contains_contiguous(tokens: list[str], needle: list[str]) -> bool:
    k = len(needle)
    return any(tokens[i:i + k] == needle for i in range(len(tokens) - k + 1))


def oracle_match(docs: list[Document], state: SelectionState) -> list[str]:
    """Linear re-implementation of the match predicate; ids in (date, id) order."""
    terms = query_terms(state.query)
    f_seq = facet_terms(state.facet) if state.facet is not None else None
    out = []
    for doc in docs:
        if not (state.start <= doc.date <= state.end):
            continue
        words = doc_word_set(doc)
        if not all(t in words for t in terms):
            continue
        if f_seq is not None:
            seq = [t.normalized for t in doc.tokens]
            if not contains_contiguous(seq, f_seq):
                continue
        out.append((doc.date, doc.id))
    return [i for _, i in sorted(out)]


def phrase_counts_per_doc(docs: list[Document]) -> dict[str, Counter]:
    return {doc.id: Counter(s.normalized for s in extract_noun_phrases(doc))
            for doc in docs}


def oracle_subject_scores(docs: list[Document], selected_ids: list[str],
                          query: str) -> dict[str, tuple[int, int, float]]:
    """Recount qf, df and score for every eligible phrase in the selection."""
    per_doc = phrase_counts_per_doc(docs)
    totals: Counter = Counter()
    df: Counter = Counter()
    for counts in per_doc.values():
        totals.update(counts)
        df.update(counts.keys())
    selected = set(selected_ids)
    qf: Counter = Counter()
    for doc_id in selected:
        qf.update(per_doc[doc_id])
    query_phrase = " ".join(tok.normalized for tok in tokenize(query)
                            if any(ch.isalnum() for ch in tok.surface))
    out = {}
    for phrase, q in qf.items():
        if totals[phrase] < MIN_COUNT or phrase == query_phrase:
            continue
        out[phrase] = (q, df[phrase], q / df[phrase])
    return out


def np_pattern_accepts(tags: str) -> bool:
    """Independent acceptance check for the noun-phrase tag pattern."""
    def core(t: str) -> bool:
        return len(t) >= 1 and all(c in "ANPM" for c in t) and t[-1] in "NP"

    if "I" in tags:
        if tags.count("I") != 1:
            return False
        k = tags.index("I")
        left, right = tags[:k], tags[k + 1:]
        if right.startswith("D"):
            right = right[1:]
        return core(left) and core(right)
    if "D" in tags:
        return False
    return core(tags)


def oracle_best_sentence(doc: Document, query: str, facet: str | None) -> tuple[int, int]:
    """Brute-force per-document scan for the minimal (tier, index) sentence."""
    terms = query_terms(query)
    f_seq = facet_terms(facet) if facet is not None else None
    best = (2, 0)
    for sent in doc.sentences:
        lo, hi = sent.token_span
        words = {doc.tokens[k].normalized for k in range(lo, hi)}
        has_q = all(t in words for t in terms)
        if f_seq is not None:
            seq = [doc.tokens[k].normalized for k in range(lo, hi)]
            has_f = contains_contiguous(seq, f_seq)
            tier = 0 if (has_q and has_f) else 1 if (has_q or has_f) else 2
        else:
            tier = 1 if has_q else 2
        if (tier, sent.index) < best:
            best = (tier, sent.index)
        if tier == 0:
            break
    return best
