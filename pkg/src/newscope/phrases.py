"""Noun-phrase candidate extraction over tagged token streams.

A finite-state pattern over coarse POS tags accepts a base noun phrase with
an optional trailing prepositional attachment. Every maximal match is
emitted together with every internal sub-span that the pattern also accepts
(so a three-word name yields its two-word variants too), which is what lets
the facet dedup stage later collapse the overlapping family.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .corpus import ADJ, ADP, DET, NOUN, NUM, OTHER, PROPN, PUNCT, VERB, Document, Token
from .errors import CorpusError

MAX_PHRASE_LEN = 6
MAX_SPANS_PER_MATCH = 20

# One character per tag keeps the automaton a plain regex over tag strings.
TAG_CHARS: dict[str, str] = {
    NOUN: "N", PROPN: "P", ADJ: "A", NUM: "M",
    ADP: "I", DET: "D", VERB: "V", PUNCT: "U", OTHER: "O",
}

# (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN) (ADP DET? (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN))?
NP_PATTERN = re.compile(r"[ANPM]*[NP](?:ID?[ANPM]*[NP])?")


@dataclass(slots=True, frozen=True)
class PhraseSpan:
    doc_id: str
    token_span: tuple[int, int]
    sentence_index: int
    normalized: str


def normalize_phrase(tokens: list[Token]) -> str:
    """Join case-folded token surfaces with single spaces, dropping trailing
    punctuation. Raises on an all-punctuation slice."""
    end = len(tokens)
    while end > 0 and _is_punct(tokens[end - 1]):
        end -= 1
    if end == 0:
        raise CorpusError("phrase contains only punctuation")
    return " ".join(t.normalized for t in tokens[:end])


def _is_punct(token: Token) -> bool:
    if token.pos:
        return token.pos == PUNCT
    return not any(ch.isalnum() for ch in token.surface)


def extract_noun_phrases(doc: Document) -> list[PhraseSpan]:
    """Emit every pattern match and accepted sub-span, by (start, end).

    Spans never cross sentence boundaries, never exceed MAX_PHRASE_LEN
    tokens, and each maximal match contributes at most MAX_SPANS_PER_MATCH
    sub-spans.
    """
    if any(not t.pos for t in doc.tokens):
        raise CorpusError(f"document {doc.id!r} is not tagged")
    spans: list[PhraseSpan] = []
    for sent in doc.sentences:
        lo, hi = sent.token_span
        tags = "".join(TAG_CHARS[doc.tokens[k].pos] for k in range(lo, hi))
        for m in NP_PATTERN.finditer(tags):
            a, b = m.span()
            emitted = 0
            for i in range(a, b):
                if emitted >= MAX_SPANS_PER_MATCH:
                    break
                for j in range(i + 1, min(i + MAX_PHRASE_LEN, b) + 1):
                    if NP_PATTERN.fullmatch(tags, i, j):
                        spans.append(PhraseSpan(
                            doc.id, (lo + i, lo + j), sent.index,
                            normalize_phrase(doc.tokens[lo + i:lo + j])))
                        emitted += 1
                        if emitted >= MAX_SPANS_PER_MATCH:
                            break
    return spans
