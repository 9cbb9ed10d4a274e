"""
Lexical-network summarization.

Content words are disambiguated with a Lesk variant, then every pair of
sentences is linked by the lexical and semantic relations found between them
(same word, synonym, hypernym, hyponym, meronym/holonym, antonym). Sentences
are ranked by a centrality measure over the resulting graph and extracted with
the diversity threshold.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from lexsum import centrality
from lexsum.centrality import CentralityParams, Graph
from lexsum.csvio import write_csv
from lexsum.errors import EmptyNetwork, LexiconUnavailable, NoSenses
from lexsum.lexicon import ANTONYM, HOLONYM, HYPERNYM, HYPONYM, MERONYM
from lexsum.textcore import (
    NOUN,
    VERB,
    ExtractionConfig,
    Summary,
    cosine_similarity,
    load_stoplist,
    rank_order,
    select_diverse,
    tag_tokens,
    term_vector,
    tokenize,
)

logger = logging.getLogger(__name__)

WSD_VARIANTS = ('simple', 'adapted', 'cosine')

SAME_WORD = 'same-word'
SYNONYM = 'synonym'
RELATION_ORDER = (SAME_WORD, SYNONYM, HYPERNYM, HYPONYM, MERONYM, ANTONYM)

# Relations whose neighbor glosses extend a sense signature
_EXTENDED = (HYPERNYM, HYPONYM, MERONYM, HOLONYM, ANTONYM)


@lru_cache(maxsize=1)
def _default_stoplist():
    return load_stoplist()


def _context(word, context_sentence, stoplist):
    tokens = tokenize(context_sentence) if isinstance(context_sentence, str) else list(context_sentence)
    return {t for t in tokens if t not in stoplist and t != word}


def _candidates(word, lexicon, pos):
    senses = lexicon.senses(word, pos)
    if not senses:
        raise NoSenses(f'No senses for {word!r}' + (f' as {pos}' if pos else ''))
    return senses


def _best(senses, scores):
    best, best_score = senses[0], scores[0]
    for sense, s in zip(senses[1:], scores[1:]):
        if s > best_score:
            best, best_score = sense, s
    return best


def signature(sense, lexicon, stoplist, extended: bool = False) -> set:
    words = {t for t in sense.gloss if t not in stoplist}
    if extended:
        for kind in _EXTENDED:
            for neighbor in lexicon.related(sense, kind):
                words.update(t for t in neighbor.gloss if t not in stoplist)
    return words


def wsd_simple_lesk(word, context_sentence, lexicon, pos=None, stoplist=None):
    """Sense whose gloss shares the most words with the context; first sense on ties."""
    stoplist = _default_stoplist() if stoplist is None else stoplist
    senses = _candidates(word, lexicon, pos)
    context = _context(word, context_sentence, stoplist)
    return _best(senses, [len(context & signature(s, lexicon, stoplist)) for s in senses])


def wsd_adapted_lesk(word, context_sentence, lexicon, pos=None, stoplist=None):
    """Like the simple variant, with glosses of related synsets added to each signature."""
    stoplist = _default_stoplist() if stoplist is None else stoplist
    senses = _candidates(word, lexicon, pos)
    context = _context(word, context_sentence, stoplist)
    return _best(senses, [len(context & signature(s, lexicon, stoplist, extended=True)) for s in senses])


def wsd_cosine_lesk(word, context_sentence, lexicon, pos=None, stoplist=None):
    """Sense whose binary gloss vector is closest (cosine) to the context vector."""
    stoplist = _default_stoplist() if stoplist is None else stoplist
    senses = _candidates(word, lexicon, pos)
    context = term_vector(_context(word, context_sentence, stoplist), binary=True)
    return _best(senses, [cosine_similarity(context, term_vector(signature(s, lexicon, stoplist), binary=True))
                          for s in senses])


_WSD = {
    'simple': wsd_simple_lesk,
    'adapted': wsd_adapted_lesk,
    'cosine': wsd_cosine_lesk,
}


def disambiguate(word, context_sentence, lexicon, variant='simple', pos=None, stoplist=None):
    return _WSD[variant](word, context_sentence, lexicon, pos=pos, stoplist=stoplist)


@dataclass(frozen=True)
class LexNetwork:
    """Sentence graph with integer relation counts and per-pair provenance."""

    weights: np.ndarray
    provenance: dict = field(default_factory=dict)

    @property
    def graph(self) -> Graph:
        return Graph(self.weights.astype(float))

    @property
    def n(self) -> int:
        return self.weights.shape[0]


def _relation_lemmas(sense, lexicon):
    lemmas = {SYNONYM: set(sense.lemmas)}
    for kind in (HYPERNYM, HYPONYM, ANTONYM):
        lemmas[kind] = {l for s in lexicon.related(sense, kind) for l in s.lemmas}
    if sense.pos == NOUN:
        lemmas[MERONYM] = {l for kind in (MERONYM, HOLONYM)
                           for s in lexicon.related(sense, kind) for l in s.lemmas}
    return lemmas


def _content(sentence, lexicon):
    tagged = sentence.tagged
    if tagged is None:
        tagged = tag_tokens(sentence.terms, lexicon, sentence.raw)
    seen = {}
    for tok, pos in tagged:
        if pos in (NOUN, VERB) and tok not in seen:
            seen[tok] = pos
    return list(seen.items())


def build_lexnetwork(document, lexicon, wsd: str = 'simple', stoplist=None) -> LexNetwork:
    """Count relations from each sentence's disambiguated content words to every later sentence.

    Each (term, relation, target term) triple counts once per sentence pair;
    the matrix is mirrored so it stays symmetric.
    """
    if lexicon is None:
        raise LexiconUnavailable('The lexical network needs a WordNet database')
    stoplist = _default_stoplist() if stoplist is None else stoplist
    sentences = document.sentences
    n = len(sentences)
    content = [_content(s, lexicon) for s in sentences]
    forms = []
    for terms in content:
        sentence_forms = {}
        for tok, pos in terms:
            base = lexicon.base_form(tok, pos)
            sentence_forms[tok] = {tok} if base is None else {tok, base}
        forms.append(sentence_forms)

    weights = np.zeros((n, n), dtype=int)
    provenance = {}
    for i, terms in enumerate(content):
        related = {}
        for tok, pos in terms:
            try:
                sense = disambiguate(tok, sentences[i].raw, lexicon, wsd, pos, stoplist)
            except NoSenses:
                sense = None
            related[tok] = {} if sense is None else _relation_lemmas(sense, lexicon)
        for j in range(i + 1, n):
            counts = Counter()
            for tok, _ in terms:
                for other, other_forms in forms[j].items():
                    if tok == other:
                        counts[SAME_WORD] += 1
                        continue
                    for kind, lemmas in related[tok].items():
                        if other_forms & lemmas:
                            counts[kind] += 1
            total = sum(counts.values())
            if total:
                weights[i, j] = weights[j, i] = total
                provenance[(i, j)] = counts
    logger.debug('Lexical network over %d sentences with %d linked pairs', n, len(provenance))
    return LexNetwork(weights=weights, provenance=provenance)


def rank_and_extract(net: LexNetwork, measure: str, params: CentralityParams, sentences,
                     cfg: ExtractionConfig) -> Summary:
    if net.n == 0:
        raise EmptyNetwork('Lexical network has no sentences')
    scores = centrality.score(measure, net.graph, params)
    return select_diverse(rank_order(scores), sentences, cfg, scores)


def network_rows(net: LexNetwork) -> list[list]:
    """Adjacency as table rows: a header of sentence labels, then one row per sentence."""
    labels = [f'S{i + 1}' for i in range(net.n)]
    rows = [[''] + labels]
    for i, label in enumerate(labels):
        rows.append([label] + [int(w) for w in net.weights[i]])
    return rows


def write_network_csv(net: LexNetwork, path) -> None:
    write_csv(path, network_rows(net))
