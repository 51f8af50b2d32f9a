"""Exploratory search over dated news archives.

A (query, facet, timespan) selection state drives three linked views: a
monthly timeline, a ranked subject list and a temporally diverse sentence
summary, all served over HTTP at interactive speed.
"""
from .baseline import BaselineConfig, Snippet, make_snippet, rank_documents_baseline
from .config import EngineConfig
from .corpus import Document, Sentence, Token, parse_corpus
from .facets import SubjectScore, dedup_subjects, score_subjects, subject_sparkline
from .index import (IndexBundle, SelectionState, build_index, load_index,
                    match_documents, save_index)
from .phrases import PhraseSpan, extract_noun_phrases, normalize_phrase
from .service import QueryEngine, create_app
from .summarize import (SentenceCandidate, SentencePool, build_sentence_pool,
                        paginate_summary, sample_summary, select_document_sentence)
from .timeseries import TimeSeries, count_by_month, count_by_month_qf

__version__ = "0.1.0"

__all__ = [
    "BaselineConfig", "Document", "EngineConfig", "IndexBundle", "PhraseSpan",
    "QueryEngine", "SelectionState", "Sentence", "SentenceCandidate",
    "SentencePool", "Snippet", "SubjectScore", "TimeSeries", "Token",
    "build_index", "build_sentence_pool", "count_by_month", "count_by_month_qf",
    "create_app", "dedup_subjects", "extract_noun_phrases", "load_index",
    "make_snippet", "match_documents", "normalize_phrase", "paginate_summary",
    "parse_corpus", "rank_documents_baseline", "sample_summary", "save_index",
    "score_subjects", "select_document_sentence", "subject_sparkline",
]
