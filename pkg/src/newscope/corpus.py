"""Corpus ingestion: tokenization, sentence segmentation and POS tagging.

Everything here is deterministic and rule-based so that downstream behavior
is reproducible across runs and machines. Documents may also arrive
pre-tokenized and pre-tagged (the ``tokens`` key in the corpus JSONL), which
lets a higher-quality external tagger feed the same pipeline.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, replace
from datetime import date
from typing import Iterable

from .errors import CorpusError

# Coarse tagset. Codes are stable and used for compact int8 storage.
NOUN = "NOUN"
PROPN = "PROPN"
ADJ = "ADJ"
DET = "DET"
ADP = "ADP"
VERB = "VERB"
NUM = "NUM"
PUNCT = "PUNCT"
OTHER = "OTHER"

POS_TAGS: tuple[str, ...] = (NOUN, PROPN, ADJ, DET, ADP, VERB, NUM, PUNCT, OTHER)
POS_CODES: dict[str, int] = {tag: i for i, tag in enumerate(POS_TAGS)}

# Guard list shared by the tokenizer and the sentence segmenter: these
# period-bearing forms stay one token and never end a sentence.
ABBREVIATIONS: tuple[str, ...] = ("Mr.", "Mrs.", "Dr.", "U.S.", "Sept.", "e.g.", "i.e.")

_ABBREV_ALT = "|".join(re.escape(a) for a in ABBREVIATIONS)
# Order matters: abbreviations beat the generic word pattern, and a lone
# non-space character catches every punctuation mark so that tokens tile
# all non-whitespace text.
_TOKEN_RE = re.compile(rf"(?:{_ABBREV_ALT})(?!\w)|\w+(?:['’-]\w+)*|\S")
_POSSESSIVE = ("'s", "'S", "’s", "’S")

_TERMINATORS = frozenset(".!?")
_CLOSERS = frozenset("\"'”’)]}")
_OPENERS = "\"'“”‘’([{"

_NUM_RE = re.compile(r"\d+(?:[.,:/\-]\d+)*")
_ADJ_SUFFIXES = ("ous", "ful", "ive", "al")


@dataclass(slots=True)
class Token:
    surface: str
    normalized: str
    pos: str = ""
    char_offset: int = -1
    sentence_index: int = -1


@dataclass(slots=True)
class Sentence:
    index: int
    char_span: tuple[int, int]
    token_span: tuple[int, int] = (0, 0)


@dataclass(slots=True)
class Document:
    id: str
    date: date
    title: str
    text: str
    sentences: list[Sentence]
    tokens: list[Token]


def _words(tag: str, text: str) -> dict[str, str]:
    return {w: tag for w in text.split()}


# Closed-class lexicon. Lookup happens on the case-folded form and wins over
# every heuristic below; keep the classes disjoint.
_LEXICON: dict[str, str] = {}
_LEXICON.update(_words(DET, """
    the a an this that these those each every either neither some any no
    another both all several many much few most more my your his her its our
    their whose
"""))
_LEXICON.update(_words(ADP, """
    of in on at by for with from to into onto over under about above after
    before between during against among through without within toward towards
    upon across behind beyond near since until amid despite via per
"""))
_LEXICON.update(_words(VERB, """
    is are was were be been being am has have had do does did done will would
    can could shall should may might must said says say saying made make
    making took take taken went go gone going came come got get given gave
    give told tell saw see seen held hold became become begun began knew know
    known found find felt feel kept keep brought bring thought think sent send
    met meet paid pay stood stand lost lose won win led lead ran run rose rise
    fell fall grew grow drew draw spoke speak sought seek meant mean left
    leave put set let
    don't doesn't didn't won't wouldn't can't couldn't shouldn't isn't aren't
    wasn't weren't hasn't haven't hadn't
"""))
_LEXICON.update(_words(ADJ, """
    new old young eldest oldest youngest former late early senior junior
    chief top key long short high low big small large great good bad recent
    current next last first second third fourth fifth own same other foreign
    domestic public private strong weak free
"""))
_LEXICON.update(_words(NUM, """
    one two three four five six seven eight nine ten eleven twelve twenty
    thirty forty fifty hundred thousand million billion
"""))
# Frequent nouns whose endings would otherwise trip the verb suffix rules.
_LEXICON.update(_words(NOUN, """
    king thing something anything nothing everything morning evening spring
    string wing ring building meeting wedding feeling beginning speed seed
    feed deed breed need
"""))
_LEXICON.update(_words(OTHER, """
    and or but nor yet if because although though while when where why how
    what who whom which i you he she it we they me him them us mine yours
    hers theirs myself himself herself itself themselves there here now then
    not never always often sometimes soon later earlier already still just
    only also very too quite almost perhaps maybe however moreover meanwhile
    instead again once ago as 's ’s
"""))


def tokenize(text: str) -> list[Token]:
    """Split text into tokens covering every non-whitespace character.

    Punctuation becomes single-character tokens except hyphens and
    apostrophes inside a word ("al-Assad", "don't"); a trailing possessive
    ("'s") splits off as its own token. ``normalized`` is the case-folded
    surface and ``char_offset`` indexes into ``text``.
    """
    tokens: list[Token] = []
    for m in _TOKEN_RE.finditer(text):
        surface = m.group()
        start = m.start()
        if len(surface) > 2 and surface.endswith(_POSSESSIVE):
            head, tail = surface[:-2], surface[-2:]
            tokens.append(Token(head, head.casefold(), "", start))
            tokens.append(Token(tail, tail.casefold(), "", start + len(head)))
        else:
            tokens.append(Token(surface, surface.casefold(), "", start))
    return tokens


def _is_abbreviation_at(text: str, i: int) -> bool:
    # i points at a terminator; check the whitespace-delimited chunk it ends.
    s = i
    while s > 0 and not text[s - 1].isspace():
        s -= 1
    chunk = text[s:i + 1].lstrip(_OPENERS)
    return chunk in ABBREVIATIONS


def segment_sentences(text: str) -> list[Sentence]:
    """Split text into sentences on ``.``/``!``/``?`` boundaries.

    A boundary requires the terminator (plus any closing quotes/brackets) to
    be followed by whitespace and then an uppercase letter or digit, and the
    terminating chunk must not be a guarded abbreviation. Sentence spans
    cover all non-whitespace text; token spans are filled in later.
    """
    n = len(text)
    ends: list[int] = []
    i = 0
    while i < n:
        if text[i] in _TERMINATORS:
            j = i + 1
            while j < n and text[j] in _CLOSERS:
                j += 1
            k = j
            while k < n and text[k].isspace():
                k += 1
            if k > j and k < n and (text[k].isupper() or text[k].isdigit()) \
                    and not _is_abbreviation_at(text, i):
                ends.append(j)
                i = k
                continue
        i += 1

    spans: list[tuple[int, int]] = []
    start = _next_nonspace(text, 0)
    for b in ends:
        spans.append((start, b))
        start = _next_nonspace(text, b)
    tail_end = _trailing_end(text)
    if start is not None and start < tail_end:
        spans.append((start, tail_end))
    return [Sentence(idx, span) for idx, span in enumerate(spans)]


def _next_nonspace(text: str, pos: int) -> int | None:
    for i in range(pos, len(text)):
        if not text[i].isspace():
            return i
    return None


def _trailing_end(text: str) -> int:
    i = len(text)
    while i > 0 and text[i - 1].isspace():
        i -= 1
    return i


def _tag_one(token: Token, sentence_initial: bool) -> str:
    surface = token.surface
    if not any(ch.isalnum() for ch in surface):
        return PUNCT
    tag = _LEXICON.get(token.normalized)
    if tag is not None:
        return tag
    if _NUM_RE.fullmatch(token.normalized):
        return NUM
    if surface[0].isupper() and not sentence_initial:
        return PROPN
    norm = token.normalized
    if len(norm) >= 4 and norm.endswith(_ADJ_SUFFIXES):
        return ADJ
    if (len(norm) >= 5 and norm.endswith("ed")) or (len(norm) >= 6 and norm.endswith("ing")):
        return VERB
    return NOUN


def tag_pos(tokens: list[Token]) -> list[Token]:
    """Assign a coarse POS tag to every token, returning a new list.

    Pure function: the same token list always yields the same tags. A token
    counts as sentence-initial until the first non-punctuation token of its
    sentence has been seen (tokens without sentence indexes are treated as
    one sentence).
    """
    tagged: list[Token] = []
    current_sentence: int | None = None
    word_seen = False
    for t in tokens:
        if t.sentence_index != current_sentence:
            current_sentence = t.sentence_index
            word_seen = False
        tag = _tag_one(t, sentence_initial=not word_seen)
        if tag != PUNCT:
            word_seen = True
        tagged.append(replace(t, pos=tag))
    return tagged


def _assign_sentences(tokens: list[Token], sentences: list[Sentence]) -> list[Sentence]:
    out: list[Sentence] = []
    ti = 0
    for s in sentences:
        t0 = ti
        while ti < len(tokens) and tokens[ti].char_offset < s.char_span[1]:
            tokens[ti].sentence_index = s.index
            ti += 1
        out.append(Sentence(s.index, s.char_span, (t0, ti)))
    if ti != len(tokens):
        raise CorpusError("tokens extend past the last sentence span")
    return out


def analyze_document(doc_id: str, doc_date: date, title: str, text: str) -> Document:
    """Run the full segmentation/tokenization/tagging pipeline on raw text."""
    sentences = segment_sentences(text)
    tokens = tokenize(text)
    sentences = _assign_sentences(tokens, sentences)
    tokens = tag_pos(tokens)
    return Document(doc_id, doc_date, title, text, sentences, tokens)


def _document_from_pretagged(doc_id: str, doc_date: date, title: str, text: str,
                             entries: list[dict]) -> Document:
    tokens: list[Token] = []
    prev_offset = -1
    prev_sentence = 0
    for n, e in enumerate(entries):
        try:
            surface = e["surface"]
            pos = e["pos"]
            offset = int(e["char_offset"])
            sentence_index = int(e["sentence_index"])
        except (KeyError, TypeError, ValueError):
            raise CorpusError(f"document {doc_id!r}: token {n} is missing or malformed") from None
        if pos not in POS_CODES:
            raise CorpusError(f"document {doc_id!r}: token {n} has unknown pos {pos!r}")
        if offset <= prev_offset:
            raise CorpusError(f"document {doc_id!r}: token offsets are not strictly increasing")
        if text[offset:offset + len(surface)] != surface:
            raise CorpusError(f"document {doc_id!r}: token {n} does not match text at offset {offset}")
        if sentence_index < prev_sentence or sentence_index > prev_sentence + 1 \
                or (n == 0 and sentence_index != 0):
            raise CorpusError(f"document {doc_id!r}: sentence indexes are not contiguous")
        tokens.append(Token(surface, surface.casefold(), pos, offset, sentence_index))
        prev_offset = offset
        prev_sentence = sentence_index

    sentences: list[Sentence] = []
    for t_idx, tok in enumerate(tokens):
        if tok.sentence_index == len(sentences):
            sentences.append(Sentence(tok.sentence_index, (tok.char_offset, 0), (t_idx, 0)))
        s = sentences[-1]
        sentences[-1] = Sentence(s.index,
                                 (s.char_span[0], tok.char_offset + len(tok.surface)),
                                 (s.token_span[0], t_idx + 1))
    return Document(doc_id, doc_date, title, text, sentences, tokens)


def parse_corpus(lines: Iterable[bytes | str]) -> list[Document]:
    """Parse a JSONL corpus stream into analyzed documents.

    Each line needs ``id``, ``date`` (YYYY-MM-DD) and ``text``; ``title`` and
    pre-tagged ``tokens`` are optional. Blank lines are skipped. Errors name
    the offending line number or document id.
    """
    docs: list[Document] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        if isinstance(raw, bytes):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError:
                raise CorpusError(f"line {lineno}: not valid UTF-8") from None
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as e:
            raise CorpusError(f"line {lineno}: malformed JSON ({e.msg})") from None
        if not isinstance(obj, dict):
            raise CorpusError(f"line {lineno}: expected a JSON object")
        for key in ("id", "date", "text"):
            if key not in obj:
                raise CorpusError(f"line {lineno}: missing required key {key!r}")
        doc_id = obj["id"]
        if not isinstance(doc_id, str) or not doc_id:
            raise CorpusError(f"line {lineno}: id must be a non-empty string")
        if doc_id in seen:
            raise CorpusError(f"duplicate document id {doc_id!r}")
        seen.add(doc_id)
        try:
            doc_date = date.fromisoformat(obj["date"])
        except (TypeError, ValueError):
            raise CorpusError(f"document {doc_id!r}: invalid date {obj['date']!r}") from None
        text = obj["text"]
        if not isinstance(text, str):
            raise CorpusError(f"document {doc_id!r}: text must be a string")
        title = obj.get("title") or ""
        entries = obj.get("tokens")
        if entries:
            docs.append(_document_from_pretagged(doc_id, doc_date, title, text, entries))
        else:
            docs.append(analyze_document(doc_id, doc_date, title, text))
    return docs
