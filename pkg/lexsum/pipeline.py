"""
Method dispatch and corpus runs.

``summarize_text`` runs one configured method over one document and returns
everything the command line writes out: the summary, per-sentence scores and
the intermediate artifacts (term-sentence matrix, lexical network, 0-1
instance) that can be dumped for inspection. ``run_corpus`` applies it to a
DUC-style directory pair and scores each summary against its references.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from lexsum import centrality, evaluate, features, lexnet, lsa, optimize
from lexsum.centrality import CentralityParams
from lexsum.config import RunConfig
from lexsum.errors import ConfigError, EmptyReference, LexsumError, MissingFile
from lexsum.lexicon import load_sentiment_lexicon, load_wordnet
from lexsum.textcore import (
    ExtractionConfig,
    Summary,
    extract_duc_text,
    load_stoplist,
    make_document,
    resolve_budget,
)

logger = logging.getLogger(__name__)

_STEM_SEPARATORS = ('.', '_', '-')


@dataclass(frozen=True)
class Resources:
    """Read-only resources shared by every document of a run."""

    stoplist: frozenset
    lexicon: object = None
    sentiment: object = None


def load_resources(cfg: RunConfig) -> Resources:
    """Load what the configured method needs, once per run."""
    stoplist = load_stoplist(cfg.stoplist)
    lexicon = None
    if cfg.needs_wordnet or cfg.wordnet:
        lexicon = load_wordnet(cfg.wordnet, validate=cfg.validate_wordnet, gloss_examples=cfg.gloss_examples)
    sentiment = load_sentiment_lexicon(cfg.sentiment_lexicon) if cfg.family == 'features' else None
    return Resources(stoplist=stoplist, lexicon=lexicon, sentiment=sentiment)


@dataclass
class SummaryResult:
    document: object
    summary: Summary
    method: str
    budget: int | None
    status: str = 'ok'
    matrix: object = None
    network: object = None
    instance: object = None
    extra: dict = field(default_factory=dict)

    @property
    def text(self) -> str:
        return self.summary.text(self.document)

    def sidecar(self, cfg: RunConfig) -> dict:
        """JSON-ready record of the selection and the parameters that produced it."""
        scores = self.summary.scores
        return {
            'document': self.document.id,
            'method': self.method,
            'selected': list(self.summary.indices),
            'selection_order': list(self.summary.order),
            'scores': None if scores is None else [round(s, 12) for s in scores],
            'word_count': self.summary.word_count,
            'budget': self.budget,
            'sentences': self.document.n,
            'status': self.status,
            'parameters': cfg.as_dict(),
            **self.extra,
        }


def centrality_params(cfg: RunConfig) -> CentralityParams:
    return CentralityParams(alpha=cfg.alpha, beta=cfg.beta, damping=cfg.damping, distance=cfg.distance)


def _run_features(document, cfg, resources, ecfg):
    rows = features.score_features(document, resources.sentiment, cfg.log_base, cfg.centroid_threshold)
    weights = cfg.feature_weights
    scores = [features.total_score(row, weights) for row in rows]
    summary = features.extract_greedy(scores, document.sentences, ecfg)
    return SummaryResult(document, summary, cfg.method, ecfg.budget)


def _run_lsa(document, cfg, resources, ecfg):
    summary, matrix = lsa.summarize(document, cfg.lsa_model, ecfg, cfg.scheme_pair, cfg.rank, cfg.case)
    return SummaryResult(document, summary, cfg.method, ecfg.budget, matrix=matrix)


def _run_lexnet(document, cfg, resources, ecfg):
    net = lexnet.build_lexnetwork(document, resources.lexicon, cfg.wsd, resources.stoplist)
    summary = lexnet.rank_and_extract(net, cfg.centrality, centrality_params(cfg), document.sentences, ecfg)
    return SummaryResult(document, summary, cfg.method, ecfg.budget, network=net)


def relevance_scores(net, cfg: RunConfig) -> np.ndarray:
    """Centrality relevance, or the sum of min-max normalized measures for ``hybrid:a+b``."""
    params = centrality_params(cfg)
    vectors = [centrality.score(m, net.graph, params) for m in cfg.relevance_measures]
    if len(vectors) == 1:
        return np.asarray(vectors[0], dtype=float)
    return optimize.hybridize_relevance(vectors)


def _run_ilp(document, cfg, resources, ecfg):
    if ecfg.budget is None:
        raise ConfigError('The ilp method needs a word budget (--length)')
    net = lexnet.build_lexnetwork(document, resources.lexicon, cfg.wsd, resources.stoplist)
    relevance = relevance_scores(net, cfg)
    # Empty sentences have no length to charge and are never selected
    keep = [i for i, s in enumerate(document.sentences) if s.word_len > 0]
    if cfg.redundancy == 'lexnet':
        redundancy = net.weights.astype(float)
    else:
        redundancy = optimize.cosine_redundancy(document.sentences)
    inst = optimize.build_instance(relevance[keep], redundancy[np.ix_(keep, keep)],
                                   [document.sentences[i].word_len for i in keep],
                                   ecfg.budget, cfg.redundancy_scale)
    solve = optimize.solve_lexnet_ilp if cfg.redundancy == 'lexnet' else optimize.solve_mdr
    solution = solve(inst, node_limit=cfg.node_limit)
    chosen = tuple(keep[k] for k in solution.selected)
    summary = Summary(indices=chosen, order=chosen,
                      word_count=sum(document.sentences[i].word_len for i in chosen),
                      scores=tuple(float(s) for s in relevance))
    extra = {'objective': solution.objective, 'optimal': solution.optimal,
             'nodes_explored': solution.nodes_explored}
    return SummaryResult(document, summary, cfg.method, ecfg.budget, status=solution.status,
                         network=net, instance=inst, extra=extra)


_METHODS = {
    'features': _run_features,
    'lsa': _run_lsa,
    'lexnet': _run_lexnet,
    'ilp': _run_ilp,
}


def summarize_text(raw: str, cfg: RunConfig, resources: Resources, doc_id: str = '') -> SummaryResult:
    """Segment, tag and summarize one document with the configured method."""
    lexicon = resources.lexicon if (cfg.needs_wordnet or cfg.family == 'features') else None
    document = make_document(extract_duc_text(raw), doc_id, resources.stoplist, lexicon, cfg.by_lines)
    ecfg = ExtractionConfig(theta=cfg.effective_theta, budget=resolve_budget(cfg.length, document.word_count))
    logger.info('Summarizing %s: %d sentences, %d words, budget %s', doc_id or 'document',
                document.n, document.word_count, ecfg.budget)
    return _METHODS[cfg.family](document, cfg, resources, ecfg)


def read_text(path) -> str:
    if not os.path.isfile(path):
        raise MissingFile(f'File not found: {path}')
    with open(path, 'r', encoding='utf-8', errors='replace') as f:
        return f.read()


def summarize_file(path, cfg: RunConfig, resources: Resources) -> SummaryResult:
    doc_id = os.path.splitext(os.path.basename(path))[0]
    return summarize_text(read_text(path), cfg, resources, doc_id)


def rouge_config(cfg: RunConfig) -> evaluate.RougeConfig:
    return evaluate.RougeConfig(skip_gap=cfg.skip_gap, word_limit=cfg.limit_words)


# -- corpus runs -------------------------------------------------------------

@dataclass(frozen=True)
class CorpusLayout:
    docs_dir: str
    models_dir: str | None = None


@dataclass(frozen=True)
class CorpusItem:
    doc_id: str
    path: str
    references: tuple = ()


def _stem(name: str) -> str:
    return os.path.splitext(name)[0]


def _matches(doc_id: str, ref_name: str) -> bool:
    stem = _stem(ref_name)
    if stem == doc_id or ref_name == doc_id:
        return True
    return any(ref_name.startswith(doc_id + sep) for sep in _STEM_SEPARATORS)


def discover(layout: CorpusLayout, require_references: bool = True) -> list[CorpusItem]:
    """Documents in filename order, each with the reference files sharing its stem."""
    if not os.path.isdir(layout.docs_dir):
        raise MissingFile(f'Documents directory not found: {layout.docs_dir}')
    if layout.models_dir is not None and not os.path.isdir(layout.models_dir):
        raise MissingFile(f'References directory not found: {layout.models_dir}')
    names = sorted(n for n in os.listdir(layout.docs_dir)
                   if not n.startswith('.') and os.path.isfile(os.path.join(layout.docs_dir, n)))
    models = []
    if layout.models_dir is not None:
        models = sorted(n for n in os.listdir(layout.models_dir)
                        if not n.startswith('.') and os.path.isfile(os.path.join(layout.models_dir, n)))
    items = []
    for name in names:
        doc_id = _stem(name)
        refs = tuple(os.path.join(layout.models_dir, m) for m in models if _matches(doc_id, m))
        if require_references and layout.models_dir is not None and not refs:
            raise EmptyReference(f'No reference summary for document {name} in {layout.models_dir}')
        items.append(CorpusItem(doc_id, os.path.join(layout.docs_dir, name), refs))
    return items


@dataclass
class DocumentOutcome:
    doc_id: str
    success: bool
    message: str = ''
    words: int = 0
    text: str = ''
    scores: dict = field(default_factory=dict)


def process_item(item: CorpusItem, cfg: RunConfig, resources: Resources, metrics) -> DocumentOutcome:
    """Summarize and score one document; failures become an unsuccessful outcome."""
    try:
        result = summarize_text(read_text(item.path), cfg, resources, item.doc_id)
        text = result.text
        scores = {}
        if item.references:
            refs = [read_text(p) for p in item.references]
            scores = evaluate.rouge_report(text, refs, metrics, rouge_config(cfg))
        return DocumentOutcome(item.doc_id, True, result.status, result.summary.word_count, text, scores)
    except (LexsumError, OSError) as e:
        logger.warning('Document %s failed: %s', item.doc_id, e)
        return DocumentOutcome(item.doc_id, False, str(e))
    except Exception as e:
        logger.exception('Document %s failed unexpectedly', item.doc_id)
        return DocumentOutcome(item.doc_id, False, f'{type(e).__name__}: {e}')


def run_corpus(items, cfg: RunConfig, resources: Resources, metrics=None, on_result=None) -> dict:
    """Process every item (in parallel when ``cfg.workers`` > 1) and return them in input order.

    Returns a summary dict with total, successful and failed counts plus the
    per-document outcomes.
    """
    items = list(items)
    metrics = metrics if metrics is not None else evaluate.parse_metrics(cfg.metrics, rouge_config(cfg))
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        outcomes = list(pool.map(lambda it: process_item(it, cfg, resources, metrics), items))
    if on_result is not None:
        for outcome in outcomes:
            on_result(outcome)
    successful = sum(1 for o in outcomes if o.success)
    return {
        'total': len(outcomes),
        'successful': successful,
        'failed': len(outcomes) - successful,
        'results': outcomes,
        'metrics': metrics,
    }


def aggregate(outcomes, metrics, with_ci: bool = True, resamples: int = 1000, seed: int = 0) -> dict:
    """Mean precision, recall and F per metric over successful documents, with bootstrap F intervals."""
    scored = [o for o in outcomes if o.success and o.scores]
    result = {}
    for name in metrics:
        p = [o.scores[name].precision for o in scored]
        r = [o.scores[name].recall for o in scored]
        f = [o.scores[name].f for o in scored]
        if not f:
            continue
        ci = None
        if with_ci and len(f) >= 2:
            ci = evaluate.bootstrap_ci(f, resamples=resamples, seed=seed)
        result[name] = (evaluate.RougeScore(float(np.mean(p)), float(np.mean(r)), float(np.mean(f))), ci)
    return result


def corpus_rows(outcomes, metrics, means: dict) -> list[list]:
    """Wide table: one row per scored document, then a MEAN row carrying the intervals."""
    header = ['doc', 'words']
    for name in metrics:
        header += [f'{name} P', f'{name} R', f'{name} F']
    for name in metrics:
        header += [f'{name} F ci_low', f'{name} F ci_high']
    rows = [header]
    blanks = [''] * (2 * len(metrics))
    for o in outcomes:
        if not (o.success and o.scores):
            continue
        row = [o.doc_id, o.words]
        for name in metrics:
            s = o.scores[name]
            row += [f'{s.precision:.6f}', f'{s.recall:.6f}', f'{s.f:.6f}']
        rows.append(row + blanks)
    if means:
        scored = [o for o in outcomes if o.success and o.scores]
        row = ['MEAN', f'{np.mean([o.words for o in scored]):.2f}']
        cis = []
        for name in metrics:
            s, ci = means[name]
            row += [f'{s.precision:.6f}', f'{s.recall:.6f}', f'{s.f:.6f}']
            cis += ['', ''] if ci is None else [f'{ci[0]:.6f}', f'{ci[1]:.6f}']
        rows.append(row + cis)
    return rows
