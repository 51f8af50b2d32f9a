from __future__ import annotations

from datetime import date

import pytest

from newscope.errors import EmptyQueryError
from newscope.index import SelectionState, match_documents
from newscope.timeseries import count_by_month, count_by_month_qf


def test_bins_cover_corpus_span_contiguously(toy_bundle):
    series = count_by_month(toy_bundle, toy_bundle.make_state("jordan"))
    months = series.months()
    assert months[0] == "1992-04"
    assert months[-1] == "2004-06"
    assert len(months) == len(set(months))
    assert months == sorted(months)
    assert len(months) == toy_bundle.n_months


def test_bin_sum_equals_match_count(toy_bundle):
    for q in ("jordan", "haiti", "the", "bashar al-assad"):
        state = toy_bundle.make_state(q)
        series = count_by_month(toy_bundle, state)
        assert series.total() == len(match_documents(toy_bundle, state).doc_ids)


def test_single_month_corpus_concentration(toy_bundle):
    series = count_by_month(toy_bundle, toy_bundle.make_state("coffee"))
    nonzero = [(m, c) for m, c in series.bins if c]
    assert nonzero == [("1994-09", 1)]


def test_no_match_gives_all_zero_series(toy_bundle):
    series = count_by_month(toy_bundle, toy_bundle.make_state("zebra"))
    assert series.total() == 0
    assert len(series.bins) == toy_bundle.n_months


def test_timespan_never_clips_series(toy_bundle):
    narrow = toy_bundle.make_state("jordan", start=date(2001, 1, 1), end=date(2001, 2, 1))
    full = toy_bundle.make_state("jordan")
    assert count_by_month(toy_bundle, narrow) == count_by_month(toy_bundle, full)


def test_empty_query_raises(toy_bundle):
    with pytest.raises(EmptyQueryError):
        count_by_month(toy_bundle, SelectionState("..", None, *toy_bundle.corpus_span))


def test_qf_series_pointwise_dominated(toy_bundle):
    state = toy_bundle.make_state("bashar al-assad", "president assad")
    q = count_by_month(toy_bundle, state)
    qf = count_by_month_qf(toy_bundle, state)
    assert all(a <= b for a, b in zip(qf.counts(), q.counts()))
    assert qf.total() == 3  # s1, s2, s4


def test_qf_identical_when_facet_everywhere(toy_bundle):
    state = toy_bundle.make_state("coffee", "coffee harvest")
    assert count_by_month_qf(toy_bundle, state) == count_by_month(toy_bundle, state)


def test_qf_zero_when_facet_nowhere(toy_bundle):
    state = toy_bundle.make_state("jordan", "coffee harvest")
    assert count_by_month_qf(toy_bundle, state).total() == 0


def test_qf_requires_facet(toy_bundle):
    with pytest.raises(ValueError):
        count_by_month_qf(toy_bundle, toy_bundle.make_state("jordan"))
