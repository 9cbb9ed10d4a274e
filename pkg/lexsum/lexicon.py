"""
Read-only lexical knowledge: a WordNet-format database and a polarity lexicon.

The database is read with NLTK's WordNet corpus reader and mapped onto small
immutable Synset records carrying the relation kinds the lexical network uses.

Requirements:
    - nltk (WordNetCorpusReader)
"""

import logging
import math
import os
import threading
import warnings
from dataclasses import dataclass, field
from importlib import resources
from types import MappingProxyType

from nltk.corpus.reader.wordnet import WordNetCorpusReader, WordNetError

from lexsum.errors import (
    ConfigError,
    LexiconUnavailable,
    MissingFile,
    ParseError,
    UnknownSynsetId,
)
from lexsum.textcore import tokenize

logger = logging.getLogger(__name__)

POS_ORDER = ('n', 'v', 'a', 'r')
_FILE_SUFFIX = {'n': 'noun', 'v': 'verb', 'a': 'adj', 'r': 'adv'}

REQUIRED_FILES = (
    ['lexnames']
    + [f'index.{s}' for s in _FILE_SUFFIX.values()]
    + [f'data.{s}' for s in _FILE_SUFFIX.values()]
    + [f'{s}.exc' for s in _FILE_SUFFIX.values()]
)

HYPERNYM = 'hypernym'
HYPONYM = 'hyponym'
MERONYM = 'meronym'
HOLONYM = 'holonym'
ANTONYM = 'antonym'
SYNONYM = 'synonym'
RELATION_KINDS = (SYNONYM, HYPERNYM, HYPONYM, MERONYM, HOLONYM, ANTONYM)

_RELATION_METHODS = {
    HYPERNYM: ('hypernyms', 'instance_hypernyms'),
    HYPONYM: ('hyponyms', 'instance_hyponyms'),
    MERONYM: ('part_meronyms', 'member_meronyms', 'substance_meronyms'),
    HOLONYM: ('part_holonyms', 'member_holonyms', 'substance_holonyms'),
}

# What NLTK raises while parsing a malformed data or index line
_PARSE_FAILURES = (WordNetError, ValueError, StopIteration, IndexError,
                   KeyError, AssertionError, TypeError, AttributeError)

# (resolved path, data file stamps) -> synset count of a database that passed validate()
_validated = {}
_validated_lock = threading.Lock()


def _norm_pos(pos: str) -> str:
    return 'a' if pos == 's' else pos


@dataclass(frozen=True)
class Synset:
    id: tuple
    name: str
    lemmas: tuple
    gloss: tuple
    definition: str = ''
    relations: MappingProxyType = field(default_factory=lambda: MappingProxyType({}))

    @property
    def pos(self) -> str:
        return self.id[0]

    @property
    def offset(self) -> int:
        return self.id[1]

    def __repr__(self):
        return f"Synset('{self.name}')"


class LexDatabase:
    """A loaded WordNet-format database.

    All lookups go through one reader guarded by a lock, so a database can be
    shared between worker threads. A sense gloss is its dictionary definition;
    ``gloss_examples`` appends the usage examples as well.
    """

    def __init__(self, reader, source: str = '', gloss_examples: bool = False):
        self._reader = reader
        self.source = source
        self.gloss_examples = gloss_examples
        self._lock = threading.Lock()
        self._synsets = {}
        self._senses = {}

    def __repr__(self):
        return f'LexDatabase({self.source!r}, {len(self._synsets)} synsets cached)'

    def _native(self, synset_id):
        pos, offset = synset_id
        try:
            with warnings.catch_warnings():
                warnings.simplefilter('ignore')
                native = self._reader.synset_from_pos_and_offset(pos, offset)
        except _PARSE_FAILURES:
            native = None
        if native is None:
            raise UnknownSynsetId(f'Unknown synset id {pos}:{offset:08d}')
        return native

    def _convert(self, native) -> Synset:
        synset_id = (_norm_pos(native.pos()), native.offset())
        if synset_id in self._synsets:
            return self._synsets[synset_id]
        try:
            with warnings.catch_warnings():
                warnings.simplefilter('ignore')
                relations = {}
                for kind, methods in _RELATION_METHODS.items():
                    targets = []
                    for method in methods:
                        targets.extend(getattr(native, method)())
                    relations[kind] = targets
                relations[ANTONYM] = [ant.synset() for lemma in native.lemmas()
                                      for ant in lemma.antonyms()]
        except _PARSE_FAILURES as e:
            raise ParseError(f'unresolved pointer in synset {native.name()}: {e}',
                             path=f'data.{_FILE_SUFFIX[synset_id[0]]}') from e
        resolved = {}
        for kind, targets in relations.items():
            if any(t is None for t in targets):
                raise ParseError(f'unresolved {kind} pointer in synset {native.offset():08d}',
                                 path=f'data.{_FILE_SUFFIX[synset_id[0]]}')
            ids = []
            for t in targets:
                tid = (_norm_pos(t.pos()), t.offset())
                if tid not in ids:
                    ids.append(tid)
            resolved[kind] = tuple(ids)
        definition = native.definition()
        gloss_text = [definition] + (list(native.examples()) if self.gloss_examples else [])
        synset = Synset(
            id=synset_id,
            name=native.name(),
            lemmas=tuple(name.lower() for name in native.lemma_names()),
            gloss=tuple(tokenize(' '.join(gloss_text))),
            definition=definition,
            relations=MappingProxyType(resolved),
        )
        self._synsets[synset_id] = synset
        return synset

    def validate(self) -> int:
        """Materialize every synset and check that all pointers resolve.

        Returns the number of synsets indexed; raises ParseError naming the
        data file and line of the first bad entry.
        """
        count = 0
        for pos in POS_ORDER:
            fileid = f'data.{_FILE_SUFFIX[pos]}'
            with self._lock, self._reader.open(fileid) as fp:
                lines = fp.read().encode('utf-8').split(b'\n')
            offset = 0
            for lineno, raw_line in enumerate(lines, start=1):
                line_offset = offset
                offset += len(raw_line) + 1
                if not raw_line or raw_line[:1].isspace():
                    continue
                if raw_line[:8] != f'{line_offset:08d}'.encode():
                    raise ParseError(f'offset field {raw_line[:8].decode(errors="replace")!r} '
                                     f'does not match byte offset {line_offset}',
                                     path=fileid, line=lineno)
                with self._lock:
                    try:
                        native = self._native((pos, line_offset))
                    except UnknownSynsetId as e:
                        raise ParseError(str(e), path=fileid, line=lineno) from e
                    try:
                        synset = self._convert(native)
                    except ParseError as e:
                        raise ParseError(str(e), path=fileid, line=lineno) from e
                    for kind, targets in synset.relations.items():
                        for tid in targets:
                            try:
                                self._native(tid)
                            except UnknownSynsetId as e:
                                raise ParseError(f'{kind} pointer to {tid[0]}:{tid[1]:08d} does not resolve',
                                                 path=fileid, line=lineno) from e
                count += 1
        logger.info('Indexed %d synsets from %s', count, self.source)
        return count

    def senses(self, lemma: str, pos: str | None = None) -> list:
        """Synsets for a word in sense order; [] when the word is absent."""
        key = (lemma.lower(), pos)
        cached = self._senses.get(key)
        if cached is not None:
            return list(cached)
        result = []
        for p in (POS_ORDER if pos is None else (pos,)):
            if p not in _FILE_SUFFIX:
                raise ConfigError(f'Unknown part of speech: {p}')
            with self._lock:
                try:
                    with warnings.catch_warnings():
                        warnings.simplefilter('ignore')
                        natives = self._reader.synsets(lemma.lower(), p)
                    result.extend(self._convert(n) for n in natives)
                except ParseError:
                    raise
                except _PARSE_FAILURES as e:
                    raise ParseError(f'cannot read senses of {lemma!r}: {e}') from e
        self._senses[key] = tuple(result)
        return result

    def synset(self, synset_id) -> Synset:
        synset_id = (_norm_pos(synset_id[0]), int(synset_id[1]))
        if synset_id in self._synsets:
            return self._synsets[synset_id]
        with self._lock:
            return self._convert(self._native(synset_id))

    def gloss(self, synset) -> tuple:
        if not isinstance(synset, Synset):
            synset = self.synset(synset)
        return synset.gloss

    def related(self, synset, kind: str) -> list:
        if kind not in RELATION_KINDS:
            raise ConfigError(f'Unknown relation kind: {kind} (expected one of {", ".join(RELATION_KINDS)})')
        if not isinstance(synset, Synset):
            synset = self.synset(synset)
        elif synset.id not in self._synsets:
            raise UnknownSynsetId(f'Unknown synset id {synset.pos}:{synset.offset:08d}')
        if kind == SYNONYM:
            return [synset]
        return [self.synset(tid) for tid in synset.relations.get(kind, ())]

    def base_form(self, word: str, pos: str) -> str | None:
        """Dictionary form of ``word`` by suffix stripping, or None."""
        with self._lock:
            return self._reader.morphy(word.lower(), pos)


def _validation_key(root: str):
    """Resolved path plus size and mtime of each data file; None when they cannot be read."""
    try:
        stamps = tuple((st.st_size, st.st_mtime_ns) for st in
                       (os.stat(os.path.join(root, f'data.{s}')) for s in _FILE_SUFFIX.values()))
    except OSError:
        return None
    return os.path.realpath(root), stamps


def load_wordnet(path=None, validate: bool = True, gloss_examples: bool = False) -> LexDatabase:
    """Open a WordNet 3.x database directory.

    Without a path the NLTK ``wordnet`` corpus is used when installed. A
    successful validation is remembered per directory until its data files
    change, so repeated loads in one process check the database once.
    """
    if path is None:
        import nltk
        try:
            root = nltk.data.find('corpora/wordnet')
        except LookupError as e:
            raise LexiconUnavailable(
                'No WordNet database given and the NLTK wordnet corpus is not installed; '
                'pass --wordnet DIR') from e
        source = str(root)
    else:
        path = os.fspath(path)
        if not os.path.isdir(path):
            raise MissingFile(f'WordNet directory not found: {path}')
        missing = [name for name in REQUIRED_FILES if not os.path.isfile(os.path.join(path, name))]
        if missing:
            raise MissingFile(f'WordNet directory {path} is missing: {", ".join(missing)}')
        root = source = path

    try:
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            reader = WordNetCorpusReader(root, None)
    except LookupError as e:
        raise LexiconUnavailable(f'Cannot open WordNet at {source}: {e}') from e
    except _PARSE_FAILURES as e:
        raise ParseError(str(e), path=source) from e

    database = LexDatabase(reader, source, gloss_examples)
    if validate:
        key = _validation_key(source)
        with _validated_lock:
            known = key is not None and key in _validated
        if known:
            logger.debug('WordNet at %s already validated', source)
        else:
            count = database.validate()
            if key is not None:
                with _validated_lock:
                    _validated[key] = count
    return database


@dataclass(frozen=True)
class SentimentLexicon:
    scores: MappingProxyType
    source: str = ''

    def polarity(self, word: str) -> float:
        return self.scores.get(word.lower(), 0.0)

    def __len__(self):
        return len(self.scores)


def polarity(lex: SentimentLexicon, word: str) -> float:
    return lex.polarity(word)


def load_sentiment_lexicon(path=None) -> SentimentLexicon:
    """Read a ``word<TAB>score`` file; None loads the bundled lexicon.

    Blank lines and ``#`` comments are skipped. On duplicate words the later
    line wins.
    """
    source = 'bundled sentiment.tsv' if path is None else os.fspath(path)
    try:
        if path is None:
            content = resources.files('lexsum').joinpath('data', 'sentiment.tsv').read_text(encoding='utf-8')
        else:
            with open(path, 'r', encoding='utf-8') as f:
                content = f.read()
    except FileNotFoundError as e:
        raise MissingFile(f'Sentiment lexicon not found: {source}') from e

    scores = {}
    for lineno, line in enumerate(content.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith('#'):
            continue
        parts = line.rstrip('\r\n').split('\t')
        if len(parts) != 2 or not parts[0].strip():
            raise ParseError('expected word<TAB>score', path=source, line=lineno)
        word, value = parts[0].strip().lower(), parts[1].strip()
        try:
            score = float(value)
        except ValueError:
            raise ParseError(f'invalid score {value!r}', path=source, line=lineno) from None
        if not math.isfinite(score) or not -1.0 <= score <= 1.0:
            raise ParseError(f'score {value} outside [-1, 1]', path=source, line=lineno)
        if word in scores:
            logger.warning('Duplicate sentiment entry %r at %s line %d; keeping the later score',
                           word, source, lineno)
        scores[word] = score
    return SentimentLexicon(scores=MappingProxyType(scores), source=source)
