"""
Latent semantic analysis summarizers.

Builds a weighted term x sentence matrix, factors it with a truncated SVD and
selects sentences from the concept x sentence matrix with one of several
models: the classic concept-by-concept picks, length and cross scoring,
topic strength, max/min correlation, and the two entropy-driven models that
pick the most informative concept (LSACS) or the most informative sentences
(LSASS).
"""

import logging
from collections import Counter
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from lexsum.errors import (
    AllConceptsEmpty,
    ConfigError,
    EmptyVocabulary,
    NegativeProbability,
    NoConvergence,
    RankTooLarge,
)
from lexsum.textcore import ExtractionConfig, Summary, rank_order, select_diverse

logger = logging.getLogger(__name__)

LOCAL_SCHEMES = ('binary', 'tf', 'log', 'augnorm')
GLOBAL_SCHEMES = ('none', 'normal', 'gfidf', 'idf', 'entropy')
DEFAULT_SCHEME = ('tf', 'idf')
DEFAULT_MAX_RANK = 10

CASE_VT = 'vt'
CASE_SIGMA_VT = 'sigma_vt'

MODELS = ('gong', 'murray', 'sj', 'cross', 'topic', 'mincorr', 'lsacs', 'lsass')


@dataclass(frozen=True)
class TermSentenceMatrix:
    terms: tuple
    values: np.ndarray
    scheme: tuple = DEFAULT_SCHEME

    @property
    def shape(self):
        return self.values.shape


@dataclass(frozen=True)
class SvdFactors:
    U: np.ndarray
    sigma: np.ndarray
    Vt: np.ndarray

    @property
    def r(self) -> int:
        return len(self.sigma)

    def reconstruct(self) -> np.ndarray:
        return self.U @ np.diag(self.sigma) @ self.Vt


def _term_lists(source):
    sentences = getattr(source, 'sentences', None)
    if sentences is not None:
        return [list(s.terms) for s in sentences]
    return [list(terms) for terms in source]


def _local_weights(counts, local):
    if local == 'binary':
        return (counts > 0).astype(float)
    if local == 'tf':
        return counts.copy()
    if local == 'log':
        return np.log2(counts + 1.0)
    col_max = counts.max(axis=0, keepdims=True)
    safe = np.where(col_max > 0, col_max, 1.0)
    return np.where(counts > 0, (counts / safe + 1.0) / 2.0, 0.0)


def _global_weights(counts, scheme):
    n = counts.shape[1]
    df = (counts > 0).sum(axis=1).astype(float)
    gf = counts.sum(axis=1)
    if scheme == 'none':
        return np.ones(counts.shape[0])
    if scheme == 'normal':
        norms = np.sqrt((counts ** 2).sum(axis=1))
        return np.divide(1.0, norms, out=np.zeros_like(norms), where=norms > 0)
    if scheme == 'gfidf':
        return np.divide(gf, df, out=np.zeros_like(gf), where=df > 0)
    if scheme == 'idf':
        return np.maximum(np.log2(n / (1.0 + df)), 0.0)
    if n == 1:
        return np.ones(counts.shape[0])
    p = np.divide(counts, gf[:, None], out=np.zeros_like(counts), where=gf[:, None] > 0)
    plogp = np.where(p > 0, p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return np.where(gf > 0, 1.0 + plogp.sum(axis=1) / np.log2(n), 0.0)


def build_matrix(document, scheme=DEFAULT_SCHEME, vocabulary=None) -> TermSentenceMatrix:
    """Weighted term x sentence matrix of a Document (or of per-sentence term lists).

    ``scheme`` is a (local, global) pair. ``vocabulary`` fixes the rows and their
    order; by default every term of the document is used, sorted.
    """
    local, global_ = scheme
    if local not in LOCAL_SCHEMES:
        raise ConfigError(f'Unknown local weighting {local!r} (expected one of {", ".join(LOCAL_SCHEMES)})')
    if global_ not in GLOBAL_SCHEMES:
        raise ConfigError(f'Unknown global weighting {global_!r} (expected one of {", ".join(GLOBAL_SCHEMES)})')

    term_lists = _term_lists(document)
    if vocabulary is None:
        terms = sorted({t for terms in term_lists for t in terms})
    else:
        terms = [t.lower() for t in vocabulary]
    if not terms or not term_lists:
        raise EmptyVocabulary('Document has no terms to build a matrix from')

    row = {t: i for i, t in enumerate(terms)}
    counts = np.zeros((len(terms), len(term_lists)))
    for j, sentence_terms in enumerate(term_lists):
        for t, c in Counter(sentence_terms).items():
            if t in row:
                counts[row[t], j] = c
    if not counts.any():
        raise EmptyVocabulary('None of the vocabulary terms occur in the document')

    values = _local_weights(counts, local) * _global_weights(counts, global_)[:, None]
    return TermSentenceMatrix(terms=tuple(terms), values=values, scheme=(local, global_))


def default_rank(n_terms: int, n_sentences: int) -> int:
    return min(n_terms, n_sentences, DEFAULT_MAX_RANK)


def svd(m, r: int | None = None) -> SvdFactors:
    """Rank-r thin SVD with a fixed sign convention.

    Each U column is flipped so its largest-magnitude entry is positive; the
    matching Vt row flips with it.
    """
    A = np.asarray(m.values if isinstance(m, TermSentenceMatrix) else m, dtype=float)
    limit = min(A.shape)
    if r is None:
        r = default_rank(*A.shape)
    if not 1 <= r <= limit:
        raise RankTooLarge(f'Rank {r} outside 1..{limit} for a {A.shape[0]}x{A.shape[1]} matrix')
    try:
        U, sigma, Vt = scipy.linalg.svd(A, full_matrices=False, lapack_driver='gesdd')
    except np.linalg.LinAlgError:
        try:
            U, sigma, Vt = scipy.linalg.svd(A, full_matrices=False, lapack_driver='gesvd')
        except np.linalg.LinAlgError as e:
            raise NoConvergence(f'SVD did not converge: {e}') from e
    U, sigma, Vt = U[:, :r].copy(), sigma[:r].copy(), Vt[:r, :].copy()
    for k in range(r):
        pivot = np.argmax(np.abs(U[:, k]))
        if U[pivot, k] < 0:
            U[:, k] = -U[:, k]
            Vt[k, :] = -Vt[k, :]
    return SvdFactors(U=U, sigma=sigma, Vt=Vt)


def shannon_entropy(p) -> float:
    """Base-2 entropy of a probability vector; 0 log 0 counts as 0."""
    p = np.asarray(p, dtype=float)
    if np.any(p < 0):
        raise NegativeProbability(f'Probabilities must be non-negative (got {p.min()})')
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0


def concept_matrix(f: SvdFactors, case: str = CASE_SIGMA_VT) -> np.ndarray:
    if case == CASE_VT:
        return f.Vt.copy()
    if case == CASE_SIGMA_VT:
        return f.sigma[:, None] * f.Vt
    raise ConfigError(f'Unknown concept matrix case {case!r} (expected {CASE_VT} or {CASE_SIGMA_VT})')


def _argmax_unselected(row, taken):
    masked = np.where(taken, -np.inf, row)
    return int(np.argmax(masked))


def _argmin_unselected(row, taken):
    masked = np.where(taken, np.inf, row)
    return int(np.argmin(masked))


def model_gong_liu(f: SvdFactors, k: int) -> list[int]:
    """One sentence per concept, top concept first; concepts repeat when k > r."""
    n = f.Vt.shape[1]
    taken = np.zeros(n, dtype=bool)
    order = []
    concept = 0
    while len(order) < min(k, n):
        i = _argmax_unselected(f.Vt[concept % f.r], taken)
        taken[i] = True
        order.append(i)
        concept += 1
    return order


def murray_quotas(sigma, k: int) -> list[int]:
    """Sentences per concept in proportion to its singular value."""
    if k < 1:
        raise ConfigError(f'Sentence count must be at least 1 (got {k})')
    sigma = np.asarray(sigma, dtype=float)
    total = sigma.sum()
    if total <= 0:
        quotas = [k] + [0] * (len(sigma) - 1)
        return quotas
    quotas = [int(np.floor(k * s / total + 0.5)) for s in sigma]
    quotas[0] = max(1, quotas[0])
    by_sigma = sorted(range(len(sigma)), key=lambda i: (-sigma[i], i))
    while sum(quotas) > k:
        for i in reversed(by_sigma):
            if quotas[i] > (1 if i == 0 else 0):
                quotas[i] -= 1
                break
    step = 0
    while sum(quotas) < k:
        quotas[by_sigma[step % len(by_sigma)]] += 1
        step += 1
    return quotas


def model_murray(f: SvdFactors, k: int) -> list[int]:
    n = f.Vt.shape[1]
    taken = np.zeros(n, dtype=bool)
    order = []
    for concept, quota in enumerate(murray_quotas(f.sigma, min(k, n))):
        for _ in range(quota):
            if taken.all():
                break
            i = _argmax_unselected(f.Vt[concept], taken)
            taken[i] = True
            order.append(i)
    return order


def murray_for_budget(f: SvdFactors, sentences, cfg: ExtractionConfig) -> Summary:
    """Murray selection with quotas sized to the sentence count the budget admits.

    Quotas are not nested (the quotas for k + 1 sentences need not extend those
    for k), so each k gets its own order and the largest k whose whole order is
    admitted wins. Without a budget every sentence is ranked.
    """
    n = len(sentences)
    full = select_diverse(model_murray(f, n), sentences, cfg)
    if cfg.budget is None:
        return full
    best = None
    for k in range(1, n + 1):
        summary = select_diverse(model_murray(f, k), sentences, cfg)
        if len(summary.order) == k:
            best = summary
    if best is None:
        return full
    logger.debug('Murray quotas sized for %d sentences', len(best.order))
    return best


def model_sj(f: SvdFactors) -> np.ndarray:
    return np.sqrt(((f.sigma[:, None] * f.Vt) ** 2).sum(axis=0))


def cross_preprocess(Vt) -> np.ndarray:
    """Zero every entry below its row mean."""
    Vt = np.asarray(Vt, dtype=float)
    means = Vt.mean(axis=1, keepdims=True)
    return np.where(Vt >= means, Vt, 0.0)


def model_cross(f: SvdFactors) -> np.ndarray:
    W = f.sigma[:, None] * cross_preprocess(f.Vt)
    return W.sum(axis=0)


def topic_strength(W) -> np.ndarray:
    """Concept x concept matrix summing both concepts' values over sentences they share."""
    W = np.asarray(W, dtype=float)
    nonzero = W != 0
    r = W.shape[0]
    M = np.zeros((r, r))
    for i in range(r):
        for j in range(r):
            shared = nonzero[i] & nonzero[j]
            M[i, j] = (W[i, shared] + W[j, shared]).sum()
    return M


def model_topic(f: SvdFactors, k: int) -> list[int]:
    W = f.sigma[:, None] * cross_preprocess(f.Vt)
    strength = topic_strength(W).sum(axis=1)
    concepts = rank_order(strength)
    n = W.shape[1]
    taken = np.zeros(n, dtype=bool)
    order = []
    step = 0
    while len(order) < min(k, n):
        i = _argmax_unselected(W[concepts[step % len(concepts)]], taken)
        taken[i] = True
        order.append(i)
        step += 1
    return order


def min_correlation_order(Vt) -> list[int]:
    """Alternate the most and the least related unselected sentence of each concept."""
    Vt = np.asarray(Vt, dtype=float)
    r, n = Vt.shape
    taken = np.zeros(n, dtype=bool)
    order = []
    concept = 0
    while len(order) < n:
        row = Vt[concept % r]
        for pick in (_argmax_unselected, _argmin_unselected):
            if len(order) == n:
                break
            i = pick(row, taken)
            taken[i] = True
            order.append(i)
        concept += 1
    return order


def model_min_correlation(f: SvdFactors, sentences, cfg: ExtractionConfig) -> Summary:
    return select_diverse(min_correlation_order(f.Vt), sentences, cfg)


def concept_entropies(W) -> np.ndarray:
    """Entropy of each concept row after dropping negative entries; empty rows score 0."""
    P = np.maximum(np.asarray(W, dtype=float), 0.0)
    sums = P.sum(axis=1)
    return np.array([shannon_entropy(P[i] / sums[i]) if sums[i] > 0 else 0.0
                     for i in range(P.shape[0])])


def sentence_entropies(W) -> np.ndarray:
    """Entropy of each sentence column after dropping negative entries; empty columns score 0."""
    P = np.maximum(np.asarray(W, dtype=float), 0.0)
    sums = P.sum(axis=0)
    return np.array([shannon_entropy(P[:, j] / sums[j]) if sums[j] > 0 else 0.0
                     for j in range(P.shape[1])])


def lsacs_order_from_w(W) -> list[int]:
    """Sentences of the most informative concept by descending value, then the next concept's."""
    P = np.maximum(np.asarray(W, dtype=float), 0.0)
    if not P.any():
        raise AllConceptsEmpty('Every concept-sentence value is non-positive')
    entropies = concept_entropies(P)
    live = [c for c in rank_order(entropies) if P[c].any()]
    order = []
    seen = set()
    for c in live:
        for i in rank_order(P[c]):
            if P[c, i] > 0 and i not in seen:
                seen.add(i)
                order.append(i)
    return order


def lsass_order_from_w(W) -> list[int]:
    return rank_order(sentence_entropies(np.asarray(W, dtype=float)))


def model_lsacs(f: SvdFactors, case: str, sentences, cfg: ExtractionConfig) -> Summary:
    W = concept_matrix(f, case)
    return select_diverse(lsacs_order_from_w(W), sentences, cfg)


def model_lsass(f: SvdFactors, sentences, cfg: ExtractionConfig) -> Summary:
    W = concept_matrix(f, CASE_SIGMA_VT)
    return select_diverse(lsass_order_from_w(W), sentences, cfg)


def summarize(document, model: str, cfg: ExtractionConfig, scheme=DEFAULT_SCHEME,
              rank: int | None = None, case: str = CASE_SIGMA_VT) -> tuple[Summary, TermSentenceMatrix]:
    """Run one LSA model over a Document; returns the summary and the matrix used."""
    if model not in MODELS:
        raise ConfigError(f'Unknown LSA model {model!r} (expected one of {", ".join(MODELS)})')
    matrix = build_matrix(document, scheme)
    f = svd(matrix, rank)
    logger.debug('SVD of %dx%d matrix, sigma=%s', *matrix.shape, np.round(f.sigma, 4))
    sentences = document.sentences
    n = len(sentences)
    # gong and topic orders are round-robin, so cutting the full order at k equals the order for k
    if model == 'gong':
        return select_diverse(model_gong_liu(f, n), sentences, cfg), matrix
    if model == 'murray':
        return murray_for_budget(f, sentences, cfg), matrix
    if model == 'topic':
        return select_diverse(model_topic(f, n), sentences, cfg), matrix
    if model == 'sj':
        scores = model_sj(f)
        return select_diverse(rank_order(scores), sentences, cfg, scores), matrix
    if model == 'cross':
        scores = model_cross(f)
        return select_diverse(rank_order(scores), sentences, cfg, scores), matrix
    if model == 'mincorr':
        return model_min_correlation(f, sentences, cfg), matrix
    if model == 'lsacs':
        return model_lsacs(f, case, sentences, cfg), matrix
    return model_lsass(f, sentences, cfg), matrix
