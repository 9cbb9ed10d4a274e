"""
Summary evaluation.

ROUGE-N, -L, -W, -S and -SU against one or more references, percentile
bootstrap intervals, an n-gram entropy redundancy measure with the n-gram
profile distance between texts, and rank-correlation coefficients.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.stats import rankdata

from lexsum.errors import (
    ConfigError,
    ConstantInput,
    EmptyReference,
    LengthMismatch,
    TooFewSamples,
)
from lexsum.textcore import tokenize

logger = logging.getLogger(__name__)

BOS = '<s>'
REPORT_HEADER = ['metric', 'precision', 'recall', 'f', 'ci_low', 'ci_high']


@dataclass(frozen=True)
class RougeConfig:
    n_max: int = 2
    beta: float = 1.0
    w: float = 1.2
    skip_gap: int | None = None
    word_limit: int | None = 100

    def __post_init__(self):
        if not 1 <= self.n_max <= 10:
            raise ConfigError(f'n_max must be in 1..10 (got {self.n_max})')
        if self.w <= 1:
            raise ConfigError(f'ROUGE-W exponent must exceed 1 (got {self.w})')
        if self.beta <= 0:
            raise ConfigError(f'beta must be positive (got {self.beta})')
        if self.skip_gap is not None and self.skip_gap < 0:
            raise ConfigError(f'skip gap must be non-negative (got {self.skip_gap})')
        if self.word_limit is not None and self.word_limit <= 0:
            raise ConfigError(f'word limit must be positive (got {self.word_limit})')


@dataclass(frozen=True)
class RougeScore:
    precision: float
    recall: float
    f: float


ZERO = RougeScore(0.0, 0.0, 0.0)


def prepare(text, cfg: RougeConfig = RougeConfig()) -> list[str]:
    """Lowercased tokens truncated to the configured word limit."""
    tokens = tokenize(text) if isinstance(text, str) else [t.lower() for t in text]
    if cfg.word_limit is not None:
        tokens = tokens[:cfg.word_limit]
    return tokens


def f_score(precision: float, recall: float, beta: float = 1.0) -> float:
    if precision <= 0 or recall <= 0:
        return 0.0
    b2 = beta * beta
    return (1 + b2) * precision * recall / (recall + b2 * precision)


def _score(matches, sys_total, ref_total, beta):
    p = matches / sys_total if sys_total else 0.0
    r = matches / ref_total if ref_total else 0.0
    return RougeScore(p, r, f_score(p, r, beta))


def _references(references, cfg):
    # A bare string is one reference; token lists must be nested
    if isinstance(references, str):
        references = [references]
    refs = [prepare(r, cfg) for r in references]
    if not refs or not any(refs):
        raise EmptyReference('At least one non-empty reference summary is required')
    return refs


def _mean_score(scores):
    return RougeScore(*(float(np.mean([getattr(s, k) for s in scores])) for k in ('precision', 'recall', 'f')))


def ngrams(tokens, n: int) -> Counter:
    if n < 1:
        raise ConfigError(f'n must be at least 1 (got {n})')
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(system, references, n: int = 1, cfg: RougeConfig = RougeConfig()) -> RougeScore:
    """Clipped n-gram matches summed over all references."""
    refs = _references(references, cfg)
    sys_grams = ngrams(prepare(system, cfg), n)
    matches = ref_total = 0
    for ref in refs:
        ref_grams = ngrams(ref, n)
        matches += sum(min(c, sys_grams[g]) for g, c in ref_grams.items())
        ref_total += sum(ref_grams.values())
    return _score(matches, len(refs) * sum(sys_grams.values()), ref_total, cfg.beta)


def lcs_length(x, y) -> int:
    if not x or not y:
        return 0
    prev = [0] * (len(y) + 1)
    for xi in x:
        cur = [0]
        for j, yj in enumerate(y, start=1):
            cur.append(prev[j - 1] + 1 if xi == yj else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(system, references, cfg: RougeConfig = RougeConfig()) -> RougeScore:
    """LCS recall/precision, averaged over references."""
    refs = _references(references, cfg)
    sys_tokens = prepare(system, cfg)
    scores = []
    for ref in refs:
        lcs = lcs_length(ref, sys_tokens)
        scores.append(_score(lcs, len(sys_tokens), len(ref), cfg.beta))
    return _mean_score(scores)


def wlcs(x, y, w: float) -> float:
    """Weighted LCS: consecutive runs of length k contribute k ** w."""
    m, n = len(x), len(y)
    c = [[0.0] * (n + 1) for _ in range(m + 1)]
    run = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if x[i - 1] == y[j - 1]:
                k = run[i - 1][j - 1]
                c[i][j] = c[i - 1][j - 1] + (k + 1) ** w - k ** w
                run[i][j] = k + 1
            elif c[i - 1][j] > c[i][j - 1]:
                c[i][j] = c[i - 1][j]
            else:
                c[i][j] = c[i][j - 1]
    return c[m][n]


def rouge_w(system, references, cfg: RougeConfig = RougeConfig()) -> RougeScore:
    refs = _references(references, cfg)
    sys_tokens = prepare(system, cfg)
    scores = []
    for ref in refs:
        if not ref or not sys_tokens:
            scores.append(ZERO)
            continue
        weighted = wlcs(ref, sys_tokens, cfg.w)
        r = (weighted / len(ref) ** cfg.w) ** (1.0 / cfg.w)
        p = (weighted / len(sys_tokens) ** cfg.w) ** (1.0 / cfg.w)
        scores.append(RougeScore(p, r, f_score(p, r, cfg.beta)))
    return _mean_score(scores)


def skip_bigrams(tokens, max_gap: int | None = None) -> Counter:
    """Ordered word pairs with at most ``max_gap`` words between them (None: any gap)."""
    pairs = Counter()
    for i, j in combinations(range(len(tokens)), 2):
        if max_gap is None or j - i - 1 <= max_gap:
            pairs[(tokens[i], tokens[j])] += 1
    return pairs


def _rouge_skip(system, references, cfg, unigrams):
    refs = _references(references, cfg)
    sys_tokens = prepare(system, cfg)
    if unigrams:
        sys_tokens = [BOS] + sys_tokens
        refs = [[BOS] + ref for ref in refs]
    sys_pairs = skip_bigrams(sys_tokens, cfg.skip_gap)
    scores = []
    for ref in refs:
        ref_pairs = skip_bigrams(ref, cfg.skip_gap)
        matches = sum(min(c, sys_pairs[p]) for p, c in ref_pairs.items())
        scores.append(_score(matches, sum(sys_pairs.values()), sum(ref_pairs.values()), cfg.beta))
    return _mean_score(scores)


def rouge_s(system, references, cfg: RougeConfig = RougeConfig()) -> RougeScore:
    return _rouge_skip(system, references, cfg, unigrams=False)


def rouge_su(system, references, cfg: RougeConfig = RougeConfig()) -> RougeScore:
    """Skip-bigrams plus unigrams, counted through a begin-of-sequence marker."""
    return _rouge_skip(system, references, cfg, unigrams=True)


def metric_names(cfg: RougeConfig = RougeConfig()) -> list[str]:
    skip = '*' if cfg.skip_gap is None else str(cfg.skip_gap)
    return ([f'ROUGE-{n}' for n in range(1, cfg.n_max + 1)]
            + ['ROUGE-L', f'ROUGE-W-{cfg.w:g}', f'ROUGE-S{skip}', f'ROUGE-SU{skip}'])


def parse_metrics(text: str | None, cfg: RougeConfig = RougeConfig()) -> list[str]:
    """Expand ``"1,2,L,W,S,SU"`` (or full metric names) into metric names."""
    if not text:
        return metric_names(cfg)
    skip = '*' if cfg.skip_gap is None else str(cfg.skip_gap)
    by_key = {str(n): f'ROUGE-{n}' for n in range(1, 11)}
    by_key.update({'L': 'ROUGE-L', 'W': f'ROUGE-W-{cfg.w:g}', 'S': f'ROUGE-S{skip}', 'SU': f'ROUGE-SU{skip}'})
    by_key.update({name.upper(): name for name in list(by_key.values())})
    chosen = []
    for part in text.split(','):
        key = part.strip().upper()
        if key.startswith('ROUGE-') and key[len('ROUGE-'):] in by_key:
            key = key[len('ROUGE-'):]
        if key not in by_key:
            raise ConfigError(f'Unknown metric {part.strip()!r} (expected 1-10, L, W, S or SU)')
        if by_key[key] not in chosen:
            chosen.append(by_key[key])
    return chosen


def score_metric(name: str, system, references, cfg: RougeConfig = RougeConfig()) -> RougeScore:
    key = name[len('ROUGE-'):]
    if key.isdigit():
        return rouge_n(system, references, int(key), cfg)
    if key == 'L':
        return rouge_l(system, references, cfg)
    if key.startswith('W'):
        return rouge_w(system, references, cfg)
    if key.startswith('SU'):
        return rouge_su(system, references, cfg)
    if key.startswith('S'):
        return rouge_s(system, references, cfg)
    raise ConfigError(f'Unknown metric {name!r}')


def rouge_report(system, references, metrics=None, cfg: RougeConfig = RougeConfig()) -> dict:
    """Scores for every requested metric, keyed by metric name in request order."""
    names = metric_names(cfg) if metrics is None else metrics
    return {name: score_metric(name, system, references, cfg) for name in names}


def bootstrap_ci(doc_scores, resamples: int = 1000, seed: int = 0, level: float = 0.95) -> tuple[float, float]:
    """Percentile bootstrap interval of the mean."""
    scores = np.asarray(doc_scores, dtype=float)
    if scores.size < 2:
        raise TooFewSamples(f'Bootstrap needs at least 2 scores (got {scores.size})')
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, scores.size, size=(resamples, scores.size))
    means = scores[idx].mean(axis=1)
    tail = (1.0 - level) / 2.0 * 100.0
    low, high = np.percentile(means, [tail, 100.0 - tail])
    return float(low), float(high)


def report_rows(report: dict, cis: dict | None = None) -> list[list]:
    """Rows of ``metric,precision,recall,f,ci_low,ci_high``; intervals blank when absent."""
    rows = [list(REPORT_HEADER)]
    for name, s in report.items():
        ci = (cis or {}).get(name)
        rows.append([name, f'{s.precision:.6f}', f'{s.recall:.6f}', f'{s.f:.6f}',
                     '' if ci is None else f'{ci[0]:.6f}',
                     '' if ci is None else f'{ci[1]:.6f}'])
    return rows


def redundancy_entropy(text, orders=(2, 3)) -> float:
    """Sum of count * log2(count) over repeated bigrams and trigrams; 0 when nothing repeats."""
    tokens = tokenize(text) if isinstance(text, str) else [t.lower() for t in text]
    total = 0.0
    for n in orders:
        total += sum(c * math.log2(c) for c in ngrams(tokens, n).values() if c > 1)
    return total


def corpus_redundancy(texts, orders=(2, 3)) -> float:
    texts = list(texts)
    if not texts:
        return 0.0
    return float(np.mean([redundancy_entropy(t, orders) for t in texts]))


def ngram_profile(text, orders=(1, 2, 3)) -> tuple:
    """Occurrences of repeated n-grams for each order."""
    tokens = tokenize(text) if isinstance(text, str) else [t.lower() for t in text]
    return tuple(float(sum(c for c in ngrams(tokens, n).values() if c > 1)) for n in orders)


def corpus_ngram_profile(texts, orders=(1, 2, 3)) -> tuple:
    profiles = [ngram_profile(t, orders) for t in texts]
    if not profiles:
        return tuple(0.0 for _ in orders)
    return tuple(float(x) for x in np.mean(profiles, axis=0))


def text_closeness(counts_a, counts_b) -> float:
    a, b = np.asarray(counts_a, dtype=float), np.asarray(counts_b, dtype=float)
    if a.shape != b.shape:
        raise LengthMismatch(f'Profiles differ in length: {a.size} vs {b.size}')
    return float(np.sqrt(((a - b) ** 2).sum()))


def _paired(x, y):
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise LengthMismatch(f'Inputs differ in length: {x.size} vs {y.size}')
    if x.size < 2:
        raise TooFewSamples(f'Correlation needs at least 2 points (got {x.size})')
    return x, y


def pearson(x, y) -> float:
    x, y = _paired(x, y)
    dx, dy = x - x.mean(), y - y.mean()
    sx, sy = math.sqrt((dx * dx).sum()), math.sqrt((dy * dy).sum())
    if sx == 0 or sy == 0:
        raise ConstantInput('Correlation is undefined for a constant input')
    return float(max(-1.0, min(1.0, (dx * dy).sum() / (sx * sy))))


def spearman(x, y) -> float:
    x, y = _paired(x, y)
    return pearson(rankdata(x), rankdata(y))


def kendall(x, y) -> float:
    """(concordant - discordant) / (n(n-1)/2); tied pairs count as neither."""
    x, y = _paired(x, y)
    n = x.size
    concordant = discordant = 0
    for i, j in combinations(range(n), 2):
        s = np.sign(x[i] - x[j]) * np.sign(y[i] - y[j])
        if s > 0:
            concordant += 1
        elif s < 0:
            discordant += 1
    return (concordant - discordant) / (n * (n - 1) / 2)


def mean_correlation(rs) -> float:
    rs = [float(r) for r in rs]
    if not rs:
        raise TooFewSamples('No correlation values to average')
    return sum(rs) / len(rs)
