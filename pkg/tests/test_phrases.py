from __future__ import annotations

from datetime import date

import pytest
from hypothesis import given, strategies as st

from newscope.corpus import (ADJ, ADP, DET, NOUN, NUM, OTHER, PROPN, PUNCT, VERB,
                             Document, Sentence, Token, analyze_document)
from newscope.errors import CorpusError
from newscope.phrases import (MAX_PHRASE_LEN, MAX_SPANS_PER_MATCH, TAG_CHARS,
                              extract_noun_phrases, normalize_phrase)

from oracles import np_pattern_accepts


def doc_from_tags(tags: list[str]) -> Document:
    """Synthetic one-sentence document with the given tag sequence."""
    tokens = []
    offset = 0
    for i, tag in enumerate(tags):
        surface = f"w{i}"
        tokens.append(Token(surface, surface, tag, offset, 0))
        offset += len(surface) + 1
    text = " ".join(t.surface for t in tokens)
    sent = Sentence(0, (0, len(text)), (0, len(tokens)))
    return Document("d", date(2000, 1, 1), "", text, [sent], tokens)


def normals(doc: Document) -> set[str]:
    return {s.normalized for s in extract_noun_phrases(doc)}


def test_two_proper_nouns_yield_three_spans():
    doc = analyze_document("d", date(2000, 1, 1), "", "He met President Assad")
    assert {"president assad", "president", "assad"} <= normals(doc)


def test_lone_determiner_yields_nothing():
    assert extract_noun_phrases(doc_from_tags([DET])) == []


def test_adj_noun_family():
    doc = analyze_document("d", date(2000, 1, 1), "", "He saw the eldest son")
    assert normals(doc) == {"eldest son", "son"}


def test_prepositional_attachment():
    doc = doc_from_tags([NOUN, ADP, DET, NOUN])
    assert "w0 w1 w2 w3" in normals(doc)


def test_untagged_document_rejected():
    doc = doc_from_tags([NOUN])
    doc.tokens[0].pos = ""
    with pytest.raises(CorpusError):
        extract_noun_phrases(doc)


def test_span_length_capped():
    doc = doc_from_tags([NOUN] * 10)
    spans = extract_noun_phrases(doc)
    assert spans
    assert all(s.token_span[1] - s.token_span[0] <= MAX_PHRASE_LEN for s in spans)


def test_subspan_cap_per_match():
    doc = doc_from_tags([NOUN] * 12)
    assert len(extract_noun_phrases(doc)) == MAX_SPANS_PER_MATCH


def test_deterministic_order_by_start_then_end():
    doc = doc_from_tags([ADJ, NOUN, NOUN])
    spans = extract_noun_phrases(doc)
    keys = [s.token_span for s in spans]
    assert keys == sorted(keys)
    assert extract_noun_phrases(doc) == spans


def test_spans_never_cross_sentences():
    doc = analyze_document("d", date(2000, 1, 1), "",
                           "The border opened. Trade resumed quickly.")
    for span in extract_noun_phrases(doc):
        lo, hi = span.token_span
        assert {doc.tokens[k].sentence_index for k in range(lo, hi)} == {span.sentence_index}


TAG_STRATEGY = st.lists(st.sampled_from([NOUN, PROPN, ADJ, DET, ADP, VERB, NUM, PUNCT, OTHER]),
                        min_size=1, max_size=12)


@given(TAG_STRATEGY)
def test_every_emitted_span_is_accepted_by_independent_oracle(tags):
    doc = doc_from_tags(tags)
    for span in extract_noun_phrases(doc):
        lo, hi = span.token_span
        seq = "".join(TAG_CHARS[doc.tokens[k].pos] for k in range(lo, hi))
        assert np_pattern_accepts(seq)
        assert not any(doc.tokens[k].pos in (PUNCT, VERB, OTHER) for k in range(lo, hi))


@given(st.lists(st.sampled_from([NOUN, PROPN, ADJ, NUM, DET, ADP]), min_size=1, max_size=5))
def test_small_regions_enumerate_all_accepted_subspans(tags):
    # Below the per-match cap and max length, every accepted sub-span of a
    # short document must be emitted (5 tokens yield at most 15 sub-spans).
    doc = doc_from_tags(tags)
    got = {s.token_span for s in extract_noun_phrases(doc)}
    chars = "".join(TAG_CHARS[t] for t in tags)
    expected = {(i, j)
                for i in range(len(tags))
                for j in range(i + 1, min(i + MAX_PHRASE_LEN, len(tags)) + 1)
                if np_pattern_accepts(chars[i:j])}
    assert got == expected


# -- normalize_phrase -----------------------------------------------------------

def test_normalize_simple():
    toks = [Token("President", "president", PROPN, 0, 0),
            Token("Assad", "assad", PROPN, 10, 0)]
    assert normalize_phrase(toks) == "president assad"


def test_normalize_number():
    toks = [Token("30", "30", NUM, 0, 0), Token("years", "years", NOUN, 3, 0)]
    assert normalize_phrase(toks) == "30 years"


def test_normalize_drops_trailing_punct():
    toks = [Token("U.S.", "u.s.", PROPN, 0, 0), Token(",", ",", PUNCT, 4, 0)]
    assert normalize_phrase(toks) == "u.s."


def test_normalize_rejects_all_punct():
    with pytest.raises(CorpusError):
        normalize_phrase([Token(",", ",", PUNCT, 0, 0)])
