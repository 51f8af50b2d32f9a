from __future__ import annotations

import json
import random
from datetime import date, timedelta

import pytest

from newscope.errors import EmptyQueryError, IndexPersistError, IndexVersionError
from newscope.index import (FORMAT_VERSION, SelectionState, build_index,
                            load_index, match_documents, save_index)

from conftest import TOY_QUERIES
from oracles import oracle_match


def state(bundle, q, f=None, start=None, end=None):
    return bundle.make_state(q, f, start, end)


# -- build ---------------------------------------------------------------------

def test_term_postings_length(toy_bundle):
    assert len(toy_bundle.term_postings("haiti")) == 3


def test_phrase_below_min_count_absent(toy_bundle):
    # four occurrences across the corpus is one short of the threshold
    assert "rare earth" not in toy_bundle.phrase_ids
    assert toy_bundle.phrase_postings("rare earth") == []


def test_phrase_at_min_count_present(toy_bundle):
    assert "king abdullah ii" in toy_bundle.phrase_ids
    assert int(toy_bundle.phrase_df[toy_bundle.phrase_ids["king abdullah ii"]]) == 6


def test_phrase_df_equals_distinct_docs(toy_bundle):
    for phrase, pid in toy_bundle.phrase_ids.items():
        postings = toy_bundle.phrase_postings(phrase)
        assert len({d for d, _ in postings}) == int(toy_bundle.phrase_df[pid])


def test_single_document_corpus_span():
    docs = __import__("newscope.corpus", fromlist=["parse_corpus"]).parse_corpus(
        [json.dumps({"id": "only", "date": "1999-07-04", "text": "One doc."})])
    bundle = build_index(docs)
    assert bundle.corpus_span == (date(1999, 7, 4), date(1999, 7, 4))


def test_empty_corpus_rejected():
    with pytest.raises(ValueError):
        build_index([])


def test_corpus_span_brackets_every_date(toy_bundle):
    lo, hi = toy_bundle.corpus_span
    for i in range(toy_bundle.n_docs):
        assert lo <= toy_bundle.doc_date(i) <= hi


def test_document_materialization_matches_parse(toy_docs, toy_bundle):
    for doc in toy_docs:
        rebuilt = toy_bundle.document(doc.id)
        assert rebuilt.tokens == doc.tokens
        assert rebuilt.sentences == doc.sentences
        assert rebuilt.text == doc.text
        assert rebuilt.date == doc.date


# -- match ----------------------------------------------------------------------

def test_conjunctive_match_anywhere(toy_bundle):
    sel = match_documents(toy_bundle, state(toy_bundle, "Bashar al-Assad"))
    assert sel.doc_ids == ["s1", "s2", "s3", "s4"]


def test_facet_requires_contiguity(toy_bundle):
    # s3 contains "president"? no; s2 contains both words adjacent; craft a
    # query where words appear non-adjacently: "syria transition" are in s1
    # but not adjacent, so the facet match must fail while the terms match.
    sel = match_documents(toy_bundle, state(toy_bundle, "syria", "syria transition"))
    assert sel.doc_ids == []
    sel2 = match_documents(toy_bundle, state(toy_bundle, "syria", "president assad"))
    assert set(sel2.doc_ids) == {"s1", "s2", "s4"}


def test_date_bounds_inclusive_exclusive(toy_bundle):
    sel = match_documents(toy_bundle, state(
        toy_bundle, "haiti", start=date(2001, 1, 1), end=date(2001, 12, 31)))
    assert sel.doc_ids == []
    sel2 = match_documents(toy_bundle, state(
        toy_bundle, "haiti", start=date(1994, 9, 15), end=date(1994, 11, 3)))
    assert sel2.doc_ids == ["h1", "h2"]


def test_empty_query_rejected(toy_bundle):
    with pytest.raises(EmptyQueryError, match="empty query"):
        match_documents(toy_bundle, SelectionState("...", None, *toy_bundle.corpus_span))


def test_unknown_term_matches_nothing(toy_bundle):
    sel = match_documents(toy_bundle, state(toy_bundle, "zebra"))
    assert sel.doc_ids == []


def test_ordering_ascending_date_then_id(toy_bundle):
    sel = match_documents(toy_bundle, state(toy_bundle, "the"))
    dates = [toy_bundle.doc_date(int(i)) for i in sel.indices]
    assert dates == sorted(dates)
    pairs = [(d, i) for d, i in zip(dates, sel.doc_ids)]
    assert pairs == sorted(pairs)


def _random_states(bundle, n, seed):
    rng = random.Random(seed)
    lo, hi = bundle.corpus_span
    span_days = (hi - lo).days
    for _ in range(n):
        q = rng.choice(TOY_QUERIES)
        f = rng.choice([None, "king abdullah ii", "president assad", "coffee harvest",
                        "peace accord", "abdullah ii"])
        if rng.random() < 0.4:
            start, end = lo, hi
        else:
            a = lo + timedelta(days=rng.randrange(span_days + 1))
            b = lo + timedelta(days=rng.randrange(span_days + 1))
            start, end = min(a, b), max(a, b)
        yield SelectionState(q, f, start, end)


def test_match_agrees_with_bruteforce_oracle(toy_docs, toy_bundle):
    for st in _random_states(toy_bundle, 150, seed=7):
        got = match_documents(toy_bundle, st).doc_ids
        assert got == oracle_match(toy_docs, st), st


def test_monotone_filtering(toy_bundle):
    full = toy_bundle.corpus_span
    for st in _random_states(toy_bundle, 60, seed=11):
        with_f = set(match_documents(toy_bundle, st).doc_ids)
        no_f = set(match_documents(
            toy_bundle, SelectionState(st.query, None, st.start, st.end)).doc_ids)
        no_t = set(match_documents(
            toy_bundle, SelectionState(st.query, None, *full)).doc_ids)
        assert with_f <= no_f <= no_t


def test_shrinking_timespan_never_adds(toy_bundle):
    for st in _random_states(toy_bundle, 40, seed=13):
        wide = set(match_documents(toy_bundle, st).doc_ids)
        mid = st.start + (st.end - st.start) / 2
        narrow = set(match_documents(
            toy_bundle, SelectionState(st.query, st.facet, st.start, mid)).doc_ids)
        assert narrow <= wide


def test_random_small_corpora_against_oracle():
    from newscope.corpus import parse_corpus
    rng = random.Random(42)
    words = ["accord", "border", "crisis", "envoy", "famine", "guard", "harbor",
             "treaty", "union", "voters"]
    for trial in range(5):
        n = rng.randint(2, 20)
        lines = []
        for i in range(n):
            sents = []
            for _ in range(rng.randint(1, 4)):
                picks = rng.sample(words, rng.randint(2, 4))
                sents.append(" ".join(picks).capitalize() + ".")
            d = date(1990 + rng.randrange(10), rng.randrange(1, 13), rng.randrange(1, 28))
            lines.append(json.dumps({"id": f"t{trial}-{i}", "date": d.isoformat(),
                                     "text": " ".join(sents)}))
        docs = parse_corpus(lines)
        bundle = build_index(docs)
        for _ in range(30):
            q = " ".join(rng.sample(words, rng.randint(1, 2)))
            f = rng.choice([None, rng.choice(words)])
            st = SelectionState(q, f, *bundle.corpus_span)
            assert match_documents(bundle, st).doc_ids == oracle_match(docs, st)


# -- persistence -------------------------------------------------------------------

def test_save_load_round_trip(toy_bundle, tmp_path):
    save_index(toy_bundle, tmp_path / "idx")
    loaded = load_index(tmp_path / "idx")
    assert loaded.doc_ids == toy_bundle.doc_ids
    assert loaded.phrases == toy_bundle.phrases
    for st in _random_states(toy_bundle, 40, seed=3):
        assert (match_documents(loaded, st).doc_ids
                == match_documents(toy_bundle, st).doc_ids)


def test_manifest_contents(toy_bundle, tmp_path):
    save_index(toy_bundle, tmp_path / "idx")
    manifest = json.loads((tmp_path / "idx" / "manifest.json").read_text())
    assert manifest["format_version"] == FORMAT_VERSION
    assert manifest["n_docs"] == toy_bundle.n_docs
    assert manifest["n_terms"] == len(toy_bundle.vocab)
    assert manifest["n_phrases"] == len(toy_bundle.phrases)
    span = toy_bundle.corpus_span
    assert manifest["corpus_span"] == [span[0].isoformat(), span[1].isoformat()]


def test_load_missing_manifest(tmp_path):
    with pytest.raises(IndexPersistError, match="manifest"):
        load_index(tmp_path)


def test_load_version_mismatch(toy_bundle, tmp_path):
    save_index(toy_bundle, tmp_path / "idx")
    path = tmp_path / "idx" / "manifest.json"
    manifest = json.loads(path.read_text())
    manifest["format_version"] = FORMAT_VERSION + 1
    path.write_text(json.dumps(manifest))
    with pytest.raises(IndexVersionError) as err:
        load_index(tmp_path / "idx")
    assert str(FORMAT_VERSION + 1) in str(err.value)
    assert str(FORMAT_VERSION) in str(err.value)


def test_load_corrupt_arrays(toy_bundle, tmp_path):
    save_index(toy_bundle, tmp_path / "idx")
    (tmp_path / "idx" / "arrays.npz").write_bytes(b"garbage")
    with pytest.raises(IndexPersistError):
        load_index(tmp_path / "idx")
