"""Subject ranking for the current selection, with near-duplicate collapse.

Each phrase occurring in the selected documents gets score = qf / df, where
qf counts its occurrences inside the selection and df counts the documents
containing it anywhere in the corpus. High scores mean "frequent here, rare
overall". Overlapping name variants produced by sub-span extraction are then
collapsed by greedy string-similarity dedup in rank order.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import UnknownPhraseError
from .index import DocumentSelection, IndexBundle, normalize_phrase_text
from .timeseries import TimeSeries, series_for_indices

DEFAULT_LEVENSHTEIN_SIM = 0.80
DEFAULT_JACCARD = 0.50


@dataclass
class SubjectScore:
    phrase: str
    qf: int
    df: int
    score: float
    sparkline: TimeSeries | None = field(default=None, compare=False)


def score_subjects(bundle: IndexBundle, selection: DocumentSelection) -> list[SubjectScore]:
    """Rank every phrase occurring in the selection by qf/df.

    Sorted by score descending, ties by higher qf then phrase string.
    Phrases equal to the normalized query are dropped. Empty selection
    yields an empty list.
    """
    if len(selection.indices) == 0:
        return []
    parts_ids = []
    parts_counts = []
    for idx in selection.indices:
        lo, hi = bundle.doc_phrase_ptr[idx], bundle.doc_phrase_ptr[idx + 1]
        parts_ids.append(bundle.doc_phrase_ids[lo:hi])
        parts_counts.append(bundle.doc_phrase_counts[lo:hi])
    all_ids = np.concatenate(parts_ids)
    if len(all_ids) == 0:
        return []
    all_counts = np.concatenate(parts_counts)
    qf = np.bincount(all_ids, weights=all_counts, minlength=len(bundle.phrases)).astype(np.int64)

    query_phrase = normalize_phrase_text(selection.selection.query)
    qid = bundle.phrase_ids.get(query_phrase)
    if qid is not None:
        qf[qid] = 0

    pids = np.nonzero(qf)[0]
    scores = qf[pids] / bundle.phrase_df[pids]
    # lexsort: last key is primary; phrase ids are in lexicographic order
    order = np.lexsort((pids, -qf[pids], -scores))
    return [
        SubjectScore(bundle.phrases[int(pids[i])], int(qf[pids[i]]),
                     int(bundle.phrase_df[pids[i]]), float(scores[i]))
        for i in order
    ]


def levenshtein(a: str, b: str) -> int:
    if a == b:
        return 0
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return la or lb
    prev = list(range(lb + 1))
    for i, ca in enumerate(a, 1):
        cur = [i] + [0] * lb
        for j, cb in enumerate(b, 1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
        prev = cur
    return prev[lb]


def _bag_distance_bound(a_counts: Counter, b_counts: Counter, la: int, lb: int) -> int:
    # edit distance is at least max(len) minus the shared character multiset
    common = sum(min(c, b_counts[ch]) for ch, c in a_counts.items() if ch in b_counts)
    return max(la, lb) - common


def _distance_within(a: str, b: str, cap: int) -> int | None:
    """Exact edit distance if it is <= cap, else None (banded early exit)."""
    la, lb = len(a), len(b)
    if abs(la - lb) > cap:
        return None
    prev = list(range(lb + 1))
    for i, ca in enumerate(a, 1):
        cur = [i] + [0] * lb
        lo = max(1, i - cap)
        hi = min(lb, i + cap)
        if lo > 1:
            cur[lo - 1] = cap + 1
        for j in range(lo, hi + 1):
            cb = b[j - 1]
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb))
        for j in range(hi + 1, lb + 1):
            cur[j] = cap + 1
        if min(cur[lo:hi + 1]) > cap:
            return None
        prev = cur
    d = prev[lb]
    return d if d <= cap else None


def levenshtein_similarity(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


def token_jaccard(a: set[str], b: set[str]) -> float:
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


def _near_duplicate(a: str, a_tokens: set[str], a_counts: Counter,
                    b: str, b_tokens: set[str], b_counts: Counter,
                    lev_threshold: float, jaccard_threshold: float) -> bool:
    if a_tokens <= b_tokens or b_tokens <= a_tokens:
        return True
    if token_jaccard(a_tokens, b_tokens) >= jaccard_threshold:
        return True
    # cheap lower bounds before the edit-distance DP; cap overshoots by one
    # so float slop can never flip a borderline pair
    longest = max(len(a), len(b))
    cap = int((1.0 - lev_threshold) * longest) + 1
    if abs(len(a) - len(b)) > cap:
        return False
    if _bag_distance_bound(a_counts, b_counts, len(a), len(b)) > cap:
        return False
    d = _distance_within(a, b, cap)
    if d is None:
        return False
    return 1.0 - d / longest >= lev_threshold


def dedup_subjects(ranked: list[SubjectScore],
                   lev_threshold: float = DEFAULT_LEVENSHTEIN_SIM,
                   jaccard_threshold: float = DEFAULT_JACCARD,
                   limit: int | None = None) -> list[SubjectScore]:
    """Greedy near-duplicate suppression in rank order.

    A candidate is dropped when, against any already-kept subject, one token
    set contains the other, token Jaccard reaches jaccard_threshold, or
    normalized edit similarity reaches lev_threshold. Kept subjects preserve
    their relative order; idempotent. ``limit`` stops the scan early once
    that many subjects are kept (the prefix equals the unlimited result).
    """
    kept: list[SubjectScore] = []
    kept_keys: list[tuple[set[str], Counter]] = []
    for subject in ranked:
        tokens = set(subject.phrase.split())
        counts = Counter(subject.phrase)
        if any(_near_duplicate(subject.phrase, tokens, counts, k.phrase, kt, kc,
                               lev_threshold, jaccard_threshold)
               for k, (kt, kc) in zip(kept, kept_keys)):
            continue
        kept.append(subject)
        kept_keys.append((tokens, counts))
        if limit is not None and len(kept) >= limit:
            break
    return kept


def subject_sparkline(bundle: IndexBundle, phrase: str,
                      q_selection: DocumentSelection) -> TimeSeries:
    """Monthly counts of query-matching documents containing the phrase."""
    pid = bundle.phrase_ids.get(phrase)
    if pid is None:
        raise UnknownPhraseError(phrase)
    docs = bundle.phrase_doc_indices(pid)
    overlap = np.intersect1d(docs, q_selection.indices, assume_unique=True)
    return series_for_indices(bundle, overlap)
