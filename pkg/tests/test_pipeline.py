import json

import numpy as np
import pytest

from conftest import CAR_TEXT, MARKET_TEXT, STORM_TEXT
from lexsum import pipeline
from lexsum.config import RunConfig
from lexsum.errors import ConfigError, EmptyReference, MissingFile
from lexsum.pipeline import (
    CorpusItem,
    CorpusLayout,
    aggregate,
    corpus_rows,
    discover,
    load_resources,
    process_item,
    relevance_scores,
    run_corpus,
    summarize_file,
    summarize_text,
)


def _run(text, **kwargs):
    cfg = RunConfig(**kwargs)
    return cfg, summarize_text(text, cfg, load_resources(cfg), 'doc')


class TestSummarizeText:
    def test_default_method(self):
        cfg, result = _run(STORM_TEXT, length='30')
        assert result.method == 'lsa:lsass'
        assert result.budget == 30
        assert 0 < result.summary.word_count <= 30
        assert result.matrix.shape[1] == result.document.n == 7
        assert result.text.startswith(result.document.sentences[result.summary.indices[0]].raw)

    def test_duc_markup_is_stripped(self):
        _, result = _run(MARKET_TEXT, method='lsa:gong', length='20')
        assert 'DOCNO' not in result.text
        assert result.document.n == 5

    def test_percent_budget(self):
        _, result = _run(STORM_TEXT, length='25%')
        words = result.document.word_count
        assert result.budget == int(np.floor(words * 0.25 + 0.5))

    def test_features_method(self):
        cfg, result = _run(STORM_TEXT, method='features', length='25', weights='1,0.5,0.5,1,0.2')
        assert len(result.summary.scores) == 7
        assert result.summary.word_count <= 25
        assert load_resources(cfg).sentiment is not None

    def test_sidecar_is_deterministic(self):
        cfg, first = _run(STORM_TEXT, method='lsa:lsacs', length='40')
        _, second = _run(STORM_TEXT, method='lsa:lsacs', length='40')
        a = json.dumps(first.sidecar(cfg), sort_keys=True)
        assert a == json.dumps(second.sidecar(cfg), sort_keys=True)
        record = first.sidecar(cfg)
        assert record['selected'] == sorted(record['selection_order'])
        assert record['parameters']['method'] == 'lsa:lsacs'
        assert record['status'] == 'ok'

    def test_lexnet_method(self, wordnet_dir):
        _, result = _run(CAR_TEXT, method='lexnet', wordnet=str(wordnet_dir), centrality='degree', length='20')
        net = result.network
        np.testing.assert_array_equal(net.weights, net.weights.T)
        # Sentences 1 and 2 share "car"
        assert net.weights[0, 1] > 0
        assert result.summary.word_count <= 20

    def test_gloss_examples_reach_the_lexicon(self, wordnet_dir):
        resources = load_resources(RunConfig(method='lexnet', wordnet=str(wordnet_dir), gloss_examples=True))
        assert resources.lexicon.gloss_examples
        assert not load_resources(RunConfig(method='lexnet', wordnet=str(wordnet_dir))).lexicon.gloss_examples

    def test_ilp_method(self, wordnet_dir):
        _, result = _run(CAR_TEXT, method='ilp', wordnet=str(wordnet_dir), length='12')
        assert result.status == 'optimal'
        assert result.extra['optimal'] is True
        assert result.summary.word_count <= 12
        assert result.instance.n == 4
        assert result.summary.order == result.summary.indices

    def test_ilp_skips_empty_lines(self, wordnet_dir):
        text = CAR_TEXT.replace('. ', '.\n') + '\n'
        _, result = _run(text, method='ilp', wordnet=str(wordnet_dir), length='12', by_lines=True,
                         redundancy='cosine', relevance='hybrid:degree+pagerank')
        assert result.document.n == 5
        assert result.instance.n == 4
        assert 4 not in result.summary.indices

    def test_hybrid_relevance(self, wordnet_dir):
        _, result = _run(CAR_TEXT, method='lexnet', wordnet=str(wordnet_dir))
        hybrid = relevance_scores(result.network, RunConfig(method='ilp', relevance='hybrid:degree+pagerank'))
        assert hybrid.shape == (4,)
        assert np.all((hybrid >= 0) & (hybrid <= 2))

    def test_summarize_file(self, tmp_path):
        path = tmp_path / 'story.txt'
        path.write_text(STORM_TEXT, encoding='utf-8')
        cfg = RunConfig(length='20')
        assert summarize_file(str(path), cfg, load_resources(cfg)).document.id == 'story'
        with pytest.raises(MissingFile):
            summarize_file(str(tmp_path / 'absent.txt'), cfg, load_resources(cfg))

    def test_bad_length(self):
        with pytest.raises(ConfigError):
            RunConfig(length='-3')


class TestCorpus:
    def test_discover_matches_reference_stems(self, corpus):
        docs, models = corpus
        (models / 'd0610.txt').write_text('unrelated', encoding='utf-8')
        items = discover(CorpusLayout(str(docs), str(models)))
        assert [i.doc_id for i in items] == ['d061', 'd062']
        assert [p.split('/')[-1] for p in items[0].references] == ['d061.A.txt', 'd061_B.txt']
        assert [p.split('/')[-1] for p in items[1].references] == ['d062-B.txt', 'd062.A.txt']

    def test_missing_reference(self, corpus):
        docs, models = corpus
        (docs / 'd063.txt').write_text(STORM_TEXT, encoding='utf-8')
        with pytest.raises(EmptyReference, match='d063'):
            discover(CorpusLayout(str(docs), str(models)))
        assert len(discover(CorpusLayout(str(docs), str(models)), require_references=False)) == 3

    def test_missing_directories(self, tmp_path):
        with pytest.raises(MissingFile):
            discover(CorpusLayout(str(tmp_path / 'nowhere'), None))

    def test_run_and_aggregate(self, corpus):
        docs, models = corpus
        cfg = RunConfig(length='30', workers=2, metrics='1,2,L')
        items = discover(CorpusLayout(str(docs), str(models)))
        seen = []
        summary = run_corpus(items, cfg, load_resources(cfg), on_result=seen.append)
        assert summary['total'] == 2 and summary['successful'] == 2 and summary['failed'] == 0
        assert [o.doc_id for o in summary['results']] == ['d061', 'd062']
        assert seen == summary['results']
        assert summary['metrics'] == ['ROUGE-1', 'ROUGE-2', 'ROUGE-L']

        means = aggregate(summary['results'], summary['metrics'], with_ci=True, resamples=200, seed=1)
        score, ci = means['ROUGE-1']
        assert 0 < score.f <= 1
        assert ci[0] <= score.f <= ci[1]

        rows = corpus_rows(summary['results'], summary['metrics'], means)
        assert len(rows) == 4
        assert rows[0][:5] == ['doc', 'words', 'ROUGE-1 P', 'ROUGE-1 R', 'ROUGE-1 F']
        assert len(rows[0]) == 2 + 3 * 3 + 2 * 3
        assert rows[-1][0] == 'MEAN'
        assert all(len(r) == len(rows[0]) for r in rows)

    def test_failed_item_is_reported(self, tmp_path, caplog):
        cfg = RunConfig()
        item = CorpusItem('ghost', str(tmp_path / 'ghost.txt'))
        outcome = process_item(item, cfg, load_resources(cfg), ['ROUGE-1'])
        assert not outcome.success
        assert 'not found' in outcome.message
        assert 'ghost' in caplog.text

    def test_unexpected_error_does_not_stop_the_run(self, corpus, monkeypatch, caplog):
        docs, models = corpus
        original = pipeline.summarize_text

        def flaky(raw, cfg, resources, doc_id=''):
            if doc_id == 'd061':
                raise ValueError('matrix went sideways')
            return original(raw, cfg, resources, doc_id)

        monkeypatch.setattr(pipeline, 'summarize_text', flaky)
        cfg = RunConfig(length='30', workers=2, metrics='1')
        items = discover(CorpusLayout(str(docs), str(models)))
        summary = run_corpus(items, cfg, load_resources(cfg))
        assert summary['total'] == 2 and summary['successful'] == 1 and summary['failed'] == 1
        failed, done = summary['results']
        assert not failed.success
        assert failed.message == 'ValueError: matrix went sideways'
        assert done.success and done.scores
        assert 'Traceback' in caplog.text
        assert 'd061 failed unexpectedly' in caplog.text

    def test_aggregate_without_intervals(self, corpus):
        docs, models = corpus
        cfg = RunConfig(length='30', metrics='1')
        items = discover(CorpusLayout(str(docs), str(models)))[:1]
        summary = run_corpus(items, cfg, load_resources(cfg))
        means = aggregate(summary['results'], summary['metrics'])
        assert means['ROUGE-1'][1] is None
        assert corpus_rows(summary['results'], summary['metrics'], means)[-1][-2:] == ['', '']
