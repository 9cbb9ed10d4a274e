"""
Deterministic text ingestion and the primitives every pipeline shares.

Covers sentence segmentation, tokenization, stopword filtering, noun/verb
tagging against the lexical database, sparse term vectors with cosine
similarity, column normalization, and the diversity-aware selector that turns
a sentence ranking into a budgeted summary.
"""

import logging
import math
import re
from collections import Counter
from dataclasses import dataclass, replace
from importlib import resources

import numpy as np
from nltk.tokenize import RegexpTokenizer

from lexsum.errors import ConfigError, MissingStoplist

logger = logging.getLogger(__name__)

NOUN = 'n'
VERB = 'v'
OTHER = 'x'

STOPLIST_VERSION = 'lexsum-stoplist-1'

_TOKENIZER = RegexpTokenizer(r'[^\W_]+')

# Lowercased, without the trailing period
ABBREVIATIONS = frozenset({
    'mr', 'mrs', 'ms', 'dr', 'prof', 'sr', 'jr', 'st', 'rev', 'gen', 'gov',
    'sen', 'rep', 'col', 'lt', 'sgt', 'capt', 'inc', 'corp', 'co', 'ltd',
    'bros', 'vs', 'etc', 'no', 'vol', 'fig', 'approx', 'dept', 'est',
    'jan', 'feb', 'mar', 'apr', 'jun', 'jul', 'aug', 'sep', 'sept', 'oct',
    'nov', 'dec', 'mt', 'ft', 'ave', 'blvd',
})

_SPACE_BEFORE_PUNCT = re.compile(r'[ \t]+(?=[.!?,;:])')
_SPACED_INITIALS = re.compile(r'\b([A-Z])\.[ \t]+(?=[A-Z]\.)')
_BOUNDARY = re.compile(r'[.!?]+["\')\]]*(?=\s|$)')
_DOTTED_WORD = re.compile(r'^(?:[A-Za-z]\.)+[A-Za-z]$')
_PARAGRAPH_BREAK = re.compile(r'\n[ \t]*\n')
_DUC_TEXT = re.compile(r'<TEXT>(.*?)</TEXT>', re.S | re.I)
_MARKUP = re.compile(r'<[^>]+>')


@dataclass(frozen=True)
class Sentence:
    """One sentence of a document.

    ``terms`` are the tokens left after stopword removal; ``tagged`` pairs each
    term with its part of speech, or is None when no lexicon was available.
    """

    index: int
    raw: str
    tokens: tuple = ()
    terms: tuple = ()
    tagged: tuple | None = None

    @property
    def word_len(self) -> int:
        return len(self.tokens)

    @property
    def content_terms(self) -> tuple:
        if self.tagged is None:
            return ()
        return tuple(tok for tok, pos in self.tagged if pos in (NOUN, VERB))

    @property
    def nouns(self) -> tuple:
        if self.tagged is None:
            return ()
        return tuple(tok for tok, pos in self.tagged if pos == NOUN)


@dataclass(frozen=True)
class Document:
    id: str
    raw: str
    sentences: tuple = ()

    @property
    def n(self) -> int:
        return len(self.sentences)

    @property
    def word_count(self) -> int:
        return sum(s.word_len for s in self.sentences)


@dataclass(frozen=True)
class ExtractionConfig:
    """Diversity threshold and word budget for sentence extraction.

    ``theta=None`` disables the similarity test, ``budget=None`` disables the
    length limit.
    """

    theta: float | None = None
    budget: int | None = None

    def __post_init__(self):
        if self.theta is not None and not 0.0 <= self.theta <= 1.0:
            raise ConfigError(f'theta must be in [0, 1] (got {self.theta})')
        if self.budget is not None and self.budget <= 0:
            raise ConfigError(f'budget must be positive (got {self.budget})')


@dataclass(frozen=True)
class Summary:
    indices: tuple
    order: tuple
    word_count: int
    scores: tuple | None = None

    def text(self, document: Document, separator: str = ' ') -> str:
        return separator.join(document.sentences[i].raw for i in self.indices)


def normalize_spacing(raw: str) -> str:
    """Drop blanks before punctuation and join spaced initials ("U. S." -> "U.S.")."""
    text = _SPACE_BEFORE_PUNCT.sub('', raw)
    return _SPACED_INITIALS.sub(r'\1.', text)


def _is_protected(word: str) -> bool:
    bare = word.rstrip('.').lstrip('"\'([')
    if not bare:
        return False
    if bare.lower() in ABBREVIATIONS:
        return True
    if len(bare) == 1 and bare.isalpha():
        return True
    return bool(_DOTTED_WORD.match(bare))


def _split_paragraph(text: str) -> list[str]:
    pieces = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        before = text[start:match.start()]
        word = before.split()[-1] if before.split() else ''
        if match.group().startswith('.') and _is_protected(word):
            continue
        rest = text[match.end():].lstrip()
        if rest and rest[0].islower():
            continue
        pieces.append(text[start:match.end()])
        start = match.end()
    pieces.append(text[start:])
    return [p.strip() for p in pieces if p.strip()]


def segment_sentences(raw: str, by_lines: bool = False) -> list[Sentence]:
    """Split raw text into indexed sentences.

    With ``by_lines`` every line is one unit and a trailing empty segment is
    kept, so a text with n line breaks yields n + 1 units.
    """
    text = normalize_spacing(raw.replace('\r\n', '\n'))
    if by_lines:
        lines = [line.strip() for line in text.split('\n')]
        units = [line for line in lines[:-1] if line]
        if lines[-1] or units:
            units.append(lines[-1])
    else:
        units = []
        for paragraph in _PARAGRAPH_BREAK.split(text):
            units.extend(_split_paragraph(paragraph.replace('\n', ' ')))
    return [Sentence(index=i, raw=unit, tokens=tuple(tokenize(unit)))
            for i, unit in enumerate(units)]


def tokenize(s: str) -> list[str]:
    return [tok.lower() for tok in _TOKENIZER.tokenize(s)]


def load_stoplist(path=None) -> frozenset:
    """Read a stoplist (one word per line, ``#`` comments); None loads the bundled list."""
    try:
        if path is None:
            content = resources.files('lexsum').joinpath('data', 'stopwords.txt').read_text(encoding='utf-8')
        else:
            with open(path, 'r', encoding='utf-8') as f:
                content = f.read()
    except OSError as e:
        raise MissingStoplist(f'Cannot read stoplist {path}: {e}') from e
    words = set()
    for line in content.splitlines():
        line = line.strip()
        if line and not line.startswith('#'):
            words.add(line.lower())
    return frozenset(words)


def remove_stopwords(tokens, stoplist) -> list[str]:
    return [tok for tok in tokens if tok.lower() not in stoplist]


def tag_tokens(tokens, lexicon, raw: str | None = None) -> list[tuple[str, str]]:
    """Tag each token noun, verb or other by lexical-database lookup.

    Nouns win over verbs. Tokens the database does not know become nouns
    when they appear capitalized in ``raw``.
    """
    capitalized = {w.lower() for w in _TOKENIZER.tokenize(raw or '') if w[:1].isupper()}
    tagged = []
    for tok in tokens:
        if lexicon.senses(tok, NOUN):
            tagged.append((tok, NOUN))
        elif lexicon.senses(tok, VERB):
            tagged.append((tok, VERB))
        elif lexicon.senses(tok):
            tagged.append((tok, OTHER))
        elif tok in capitalized:
            tagged.append((tok, NOUN))
        else:
            tagged.append((tok, OTHER))
    return tagged


def term_vector(terms, binary: bool = False) -> dict[str, float]:
    counts = Counter(terms)
    if binary:
        return {term: 1.0 for term in counts}
    return {term: float(count) for term, count in counts.items()}


def cosine_similarity(a: dict, b: dict) -> float:
    if not a or not b:
        return 0.0
    if len(a) > len(b):
        a, b = b, a
    dot = sum(weight * b.get(term, 0.0) for term, weight in a.items())
    norm_a = math.sqrt(sum(w * w for w in a.values()))
    norm_b = math.sqrt(sum(w * w for w in b.values()))
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return min(1.0, dot / (norm_a * norm_b))


def column_normalize(m, columns=None) -> np.ndarray:
    """Divide each designated column by its Euclidean norm; zero columns stay zero."""
    out = np.array(m, dtype=float, copy=True)
    if out.ndim == 1:
        out = out.reshape(-1, 1)
    targets = range(out.shape[1]) if columns is None else columns
    for c in targets:
        norm = np.linalg.norm(out[:, c])
        if norm > 0:
            out[:, c] = out[:, c] / norm
    return out


def min_max_normalize(values, constant: float = 0.5) -> np.ndarray:
    """Scale to [0, 1]; a constant vector maps to ``constant`` everywhere."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        return v
    lo, hi = v.min(), v.max()
    if hi - lo == 0:
        return np.full_like(v, constant)
    return (v - lo) / (hi - lo)


def rank_order(scores) -> list[int]:
    """Indices by descending score; equal scores keep the lower index first."""
    return sorted(range(len(scores)), key=lambda i: (-scores[i], i))


def resolve_budget(length, document_words: int) -> int | None:
    """Turn ``100`` or ``"15%"`` into a word budget for a document."""
    if length is None:
        return None
    if isinstance(length, str):
        text = length.strip()
        if text.endswith('%'):
            try:
                percent = float(text[:-1])
            except ValueError:
                raise ConfigError(f'Invalid length: {length}') from None
            if percent <= 0:
                raise ConfigError(f'Length percent must be positive (got {length})')
            return max(1, int(math.floor(document_words * percent / 100.0 + 0.5)))
        try:
            length = int(text)
        except ValueError:
            raise ConfigError(f'Invalid length: {length}') from None
    if length <= 0:
        raise ConfigError(f'Length must be positive (got {length})')
    return int(length)


def select_diverse(order, sentences, cfg: ExtractionConfig, scores=None) -> Summary:
    """Walk ``order`` and admit sentences that fit the budget and stay below theta.

    A sentence is admitted only if its stopword-free cosine similarity to every
    sentence already chosen is below ``cfg.theta`` and the summary keeps at most
    ``cfg.budget`` words. Empty sentences are never admitted.
    """
    chosen = []
    vectors = {}
    words = 0
    for i in order:
        sentence = sentences[i]
        if not sentence.tokens:
            continue
        if cfg.budget is not None and words + sentence.word_len > cfg.budget:
            continue
        vec = term_vector(sentence.terms)
        if cfg.theta is not None and any(
                cosine_similarity(vec, vectors[j]) >= cfg.theta for j in chosen):
            continue
        chosen.append(i)
        vectors[i] = vec
        words += sentence.word_len
    return Summary(
        indices=tuple(sorted(chosen)),
        order=tuple(chosen),
        word_count=words,
        scores=None if scores is None else tuple(float(s) for s in scores),
    )


def extract_duc_text(raw: str) -> str:
    """Return the content between <TEXT> markers, or the input when there are none."""
    blocks = _DUC_TEXT.findall(raw)
    if not blocks:
        return raw
    return '\n\n'.join(_MARKUP.sub(' ', block).strip() for block in blocks)


def build_document(units, doc_id: str = '', stoplist=None, lexicon=None) -> Document:
    """Build a Document from already segmented sentence strings or Sentences."""
    stoplist = load_stoplist() if stoplist is None else stoplist
    sentences = []
    for i, unit in enumerate(units):
        if not isinstance(unit, Sentence):
            unit = Sentence(index=i, raw=unit, tokens=tuple(tokenize(unit)))
        terms = tuple(remove_stopwords(unit.tokens, stoplist))
        tagged = None if lexicon is None else tuple(tag_tokens(terms, lexicon, unit.raw))
        sentences.append(replace(unit, index=i, terms=terms, tagged=tagged))
    raw = '\n'.join(s.raw for s in sentences)
    return Document(id=doc_id, raw=raw, sentences=tuple(sentences))


def make_document(raw: str, doc_id: str = '', stoplist=None, lexicon=None,
                  by_lines: bool = False) -> Document:
    document = build_document(segment_sentences(raw, by_lines), doc_id, stoplist, lexicon)
    return replace(document, raw=raw)
