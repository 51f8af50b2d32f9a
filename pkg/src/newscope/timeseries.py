"""Monthly document-count series for the timeline view.

Series always cover the whole corpus span regardless of the selected
timespan: the timeline is the instrument that sets T, so the full curve must
stay visible while brushing. Bins are calendar months, zero-filled.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .index import IndexBundle, SelectionState, filter_by_facet, match_query_docs


@dataclass(frozen=True)
class TimeSeries:
    bins: tuple[tuple[str, int], ...]

    def total(self) -> int:
        return sum(c for _, c in self.bins)

    def counts(self) -> list[int]:
        return [c for _, c in self.bins]

    def months(self) -> list[str]:
        return [m for m, _ in self.bins]


def series_for_indices(bundle: IndexBundle, indices: np.ndarray) -> TimeSeries:
    """Bin a set of document indices into monthly counts over the corpus span."""
    counts = np.bincount(bundle.months[indices], minlength=bundle.n_months)
    return TimeSeries(tuple(zip(bundle.month_labels, (int(c) for c in counts))))


def count_by_month(bundle: IndexBundle, state: SelectionState) -> TimeSeries:
    """Monthly counts of documents matching the query alone.

    The facet and timespan of the state are deliberately ignored; T never
    clips this series.
    """
    return series_for_indices(bundle, match_query_docs(bundle, state.query))


def count_by_month_qf(bundle: IndexBundle, state: SelectionState) -> TimeSeries:
    """Monthly counts of documents matching both query and facet."""
    if state.facet is None:
        raise ValueError("state has no facet")
    q_docs = match_query_docs(bundle, state.query)
    return series_for_indices(bundle, filter_by_facet(bundle, q_docs, state.facet))
