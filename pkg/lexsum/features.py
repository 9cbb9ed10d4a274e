"""
Hybrid feature scoring.

Five per-sentence features (position, TF-IDF, aggregate similarity, centroid,
sentiment strength) are combined into a weighted total score; sentences are
then extracted greedily with the shared diversity test. Feature weights can be
fitted by logistic regression on labelled rows.
"""

import logging
import math
from collections import Counter
from dataclasses import astuple, dataclass

import numpy as np
from scipy.special import expit

from lexsum.errors import (
    ConfigError,
    DegenerateLabels,
    EmptyInput,
    IndexOutOfRange,
    NonFiniteFeature,
)
from lexsum.textcore import (
    ExtractionConfig,
    Summary,
    column_normalize,
    cosine_similarity,
    rank_order,
    select_diverse,
    term_vector,
)

logger = logging.getLogger(__name__)

FEATURE_NAMES = ('position', 'tfidf', 'aggsim', 'centroid', 'sentiment')


@dataclass(frozen=True)
class FeatureRow:
    position: float
    tfidf: float
    aggsim: float
    centroid: float
    sentiment: float

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)


@dataclass(frozen=True)
class FeatureWeights:
    w1: float = 1.0
    w2: float = 1.0
    w3: float = 1.0
    w4: float = 1.0
    w5: float = 1.0

    def __post_init__(self):
        if not all(math.isfinite(w) for w in astuple(self)):
            raise ConfigError(f'Feature weights must be finite (got {astuple(self)})')

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self), dtype=float)

    @classmethod
    def parse(cls, text: str) -> 'FeatureWeights':
        """Parse ``"w1,w2,w3,w4,w5"``."""
        parts = [p.strip() for p in text.split(',')]
        if len(parts) != len(FEATURE_NAMES):
            raise ConfigError(f'Expected {len(FEATURE_NAMES)} comma-separated weights (got {text!r})')
        try:
            return cls(*(float(p) for p in parts))
        except ValueError:
            raise ConfigError(f'Invalid weights: {text!r}') from None


@dataclass(frozen=True)
class LogisticFit:
    coef: np.ndarray
    intercept: float
    accuracy: float
    iterations: int
    converged: bool


def position_score(index: int, n: int) -> float:
    """Score of the ``index``-th (1-based) of ``n`` sentences: 1 - (i - 1) / n."""
    if not 1 <= index <= n:
        raise IndexOutOfRange(f'Sentence position {index} outside 1..{n}')
    return 1.0 - (index - 1) / n


def _sentence_frequencies(sentences) -> Counter:
    df = Counter()
    for s in sentences:
        df.update(set(s.terms))
    return df


def tfidf_score(sentence, document, log_base: float = 10.0) -> float:
    """Sum of tf x log(N / sf) over the sentence's terms.

    The sentence is the "document" for tf and the whole document the
    collection for idf, so sf counts sentences containing the term.
    """
    n = len(document.sentences)
    df = _sentence_frequencies(document.sentences)
    return _tfidf(sentence, n, df, log_base)


def _tfidf(sentence, n, df, log_base):
    total = 0.0
    for term, tf in Counter(sentence.terms).items():
        sf = df.get(term, 0)
        if sf:
            total += tf * math.log(n / sf, log_base)
    return total


def aggregate_similarity_score(i: int, sentences) -> float:
    """Sum of binary-weight cosine similarities between sentence i and every other sentence."""
    vectors = [term_vector(s.terms, binary=True) for s in sentences]
    return _aggregate(i, vectors)


def _aggregate(i, vectors):
    return sum(cosine_similarity(vectors[i], vectors[j]) for j in range(len(vectors)) if j != i)


def centroid_values(document, threshold: float | None = None) -> dict[str, float]:
    """Centroid words with value (average tf) x idf above ``threshold``.

    The default threshold is the mean value over all words of the document.
    """
    sentences = document.sentences
    n = len(sentences)
    if n == 0:
        return {}
    counts = Counter()
    for s in sentences:
        counts.update(s.terms)
    df = _sentence_frequencies(sentences)
    values = {w: (counts[w] / n) * math.log10(n / df[w]) for w in counts}
    if not values:
        return {}
    if threshold is None:
        threshold = sum(values.values()) / len(values)
    return {w: v for w, v in values.items() if v > threshold}


def centroid_scores(document, threshold: float | None = None) -> np.ndarray:
    """Centroid score for every sentence, scaled so the best sentence scores 1.0."""
    centroid = centroid_values(document, threshold)
    raw = np.array([sum(centroid.get(t, 0.0) for t in s.terms) for s in document.sentences],
                   dtype=float)
    top = raw.max() if raw.size else 0.0
    return raw / top if top > 0 else raw


def centroid_score(sentence, document, threshold: float | None = None) -> float:
    return float(centroid_scores(document, threshold)[sentence.index])


def sentiment_score(sentence, lexicon) -> float:
    """Sum of absolute polarities over the sentence's nouns.

    Untagged sentences fall back to all stopword-free terms.
    """
    entities = sentence.nouns if sentence.tagged is not None else sentence.terms
    return float(sum(abs(lexicon.polarity(e)) for e in entities))


def score_features(document, sentiment_lexicon, log_base: float = 10.0,
                   centroid_threshold: float | None = None) -> list[FeatureRow]:
    """Compute every feature for every sentence; tfidf and aggsim columns are L2-normalized."""
    sentences = document.sentences
    n = len(sentences)
    if n == 0:
        return []
    df = _sentence_frequencies(sentences)
    vectors = [term_vector(s.terms, binary=True) for s in sentences]
    centroid = centroid_scores(document, centroid_threshold)
    matrix = np.array([
        [position_score(i + 1, n),
         _tfidf(s, n, df, log_base),
         _aggregate(i, vectors),
         centroid[i],
         sentiment_score(s, sentiment_lexicon)]
        for i, s in enumerate(sentences)
    ], dtype=float)
    matrix = column_normalize(matrix, columns=(1, 2))
    if not np.all(np.isfinite(matrix)):
        raise NonFiniteFeature(f'Non-finite feature value in document {document.id!r}')
    return [FeatureRow(*map(float, row)) for row in matrix]


def total_score(row: FeatureRow, w: FeatureWeights) -> float:
    return float(np.dot(row.as_array(), w.as_array()))


def extract_greedy(scores, sentences, cfg: ExtractionConfig) -> Summary:
    """Visit sentences by descending score and keep the non-redundant ones that fit."""
    if len(sentences) == 0:
        raise EmptyInput('No sentences to extract from')
    scores = np.asarray(scores, dtype=float)
    if scores.shape != (len(sentences),):
        raise EmptyInput(f'Expected {len(sentences)} scores (got {scores.shape})')
    if not np.all(np.isfinite(scores)):
        raise NonFiniteFeature('Sentence scores must be finite')
    return select_diverse(rank_order(scores), sentences, cfg, scores)


def _with_intercept(X):
    return np.hstack([np.ones((X.shape[0], 1)), X])


def log_likelihood(beta, X, y) -> float:
    """Mean Bernoulli log-likelihood of labels ``y`` under coefficients ``beta``.

    ``beta[0]`` is the intercept; ``X`` holds the features without a bias column.
    """
    z = _with_intercept(np.asarray(X, dtype=float)) @ beta
    return float(np.mean(y * z - np.logaddexp(0.0, z)))


def log_likelihood_gradient(beta, X, y) -> np.ndarray:
    Xb = _with_intercept(np.asarray(X, dtype=float))
    return Xb.T @ (y - expit(Xb @ beta)) / Xb.shape[0]


def fit_logistic(X, y, step: float = 0.1, max_iter: int = 5000, tol: float = 1e-8) -> LogisticFit:
    """Fit logistic regression by gradient ascent on the mean log-likelihood.

    Stops when the gradient norm drops below ``tol`` or after ``max_iter`` steps.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    y = np.asarray(y, dtype=float)
    if X.shape[0] != y.shape[0]:
        raise ConfigError(f'{X.shape[0]} rows but {y.shape[0]} labels')
    if not np.all(np.isfinite(X)):
        raise NonFiniteFeature('Training features must be finite')
    if not np.all((y == 0) | (y == 1)):
        raise DegenerateLabels('Labels must be 0 or 1')
    if y.min() == y.max():
        raise DegenerateLabels('Training labels contain a single class')

    beta = np.zeros(X.shape[1] + 1)
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        grad = log_likelihood_gradient(beta, X, y)
        if np.linalg.norm(grad) < tol:
            converged = True
            break
        beta = beta + step * grad
    if not converged:
        logger.info('Logistic fit stopped after %d iterations (gradient norm %.3g)',
                    iterations, np.linalg.norm(log_likelihood_gradient(beta, X, y)))

    predicted = expit(_with_intercept(X) @ beta) >= 0.5
    accuracy = float(np.mean(predicted == (y == 1)))
    return LogisticFit(coef=beta[1:], intercept=float(beta[0]), accuracy=accuracy,
                       iterations=iterations, converged=converged)


def fit_logistic_weights(rows, labels, **kwargs) -> tuple[FeatureWeights, float, LogisticFit]:
    """Fit feature weights from labelled FeatureRows; returns (weights, intercept, fit)."""
    X = np.array([r.as_array() for r in rows], dtype=float).reshape(-1, len(FEATURE_NAMES))
    fit = fit_logistic(X, labels, **kwargs)
    return FeatureWeights(*map(float, fit.coef)), fit.intercept, fit
