import json

import pytest
import requests

import summarizer
from conftest import CAR_TEXT, STORM_TEXT
from lexsum import fetch


@pytest.fixture
def storm_file(tmp_path):
    path = tmp_path / 'storm.txt'
    path.write_text(STORM_TEXT, encoding='utf-8')
    return path


class FakeResponse:
    def __init__(self, content=b'', status_code=200, reason='OK'):
        self.content = content
        self.status_code = status_code
        self.reason = reason

    def raise_for_status(self):
        if self.status_code >= 400:
            raise requests.exceptions.HTTPError(response=self)


class TestSummarize:
    def test_output_and_sidecar(self, storm_file, tmp_path):
        out = tmp_path / 'summary.txt'
        assert summarizer.main(['summarize', str(storm_file), '-o', str(out), '--length', '30']) == 0
        lines = out.read_text(encoding='utf-8').strip().split('\n')
        record = json.loads((tmp_path / 'summary.txt.json').read_text(encoding='utf-8'))
        assert len(lines) == len(record['selected'])
        assert record['document'] == 'storm'
        assert record['method'] == 'lsa:lsass'
        assert record['word_count'] <= 30

    def test_reruns_give_identical_sidecars(self, storm_file, tmp_path):
        for name in ('a.txt', 'b.txt'):
            summarizer.main(['summarize', str(storm_file), '-o', str(tmp_path / name), '--method', 'features'])
        assert (tmp_path / 'a.txt.json').read_bytes() == (tmp_path / 'b.txt.json').read_bytes()

    def test_prints_to_stdout(self, storm_file, capsys):
        assert summarizer.main(['summarize', str(storm_file), '--length', '15', '--method', 'lsa:gong']) == 0
        assert capsys.readouterr().out.strip()

    def test_dump_matrix(self, storm_file, tmp_path):
        matrix = tmp_path / 'matrix.csv'
        assert summarizer.main(['summarize', str(storm_file), '--dump-matrix', str(matrix)]) == 0
        header = matrix.read_text(encoding='utf-8').split('\n')[0].split(',')
        assert header == ['term'] + [f'S{j}' for j in range(1, 8)]

    def test_lexnet_dump_network(self, tmp_path, wordnet_dir):
        doc = tmp_path / 'car.txt'
        doc.write_text(CAR_TEXT, encoding='utf-8')
        network = tmp_path / 'network.csv'
        code = summarizer.main(['summarize', str(doc), '--method', 'lexnet', '--wordnet', str(wordnet_dir),
                                '--centrality', 'pagerank', '--dump-network', str(network), '--length', '15'])
        assert code == 0
        rows = network.read_text(encoding='utf-8').strip().split('\n')
        assert rows[0] == ',S1,S2,S3,S4'
        assert len(rows) == 5

    def test_missing_file(self, tmp_path, capsys):
        assert summarizer.main(['summarize', str(tmp_path / 'absent.txt')]) == 3
        assert 'Error:' in capsys.readouterr().err

    @pytest.mark.parametrize('flags', [['--method', 'magic'], ['--theta', '2'], ['--length', 'lots']])
    def test_bad_configuration(self, storm_file, flags):
        assert summarizer.main(['summarize', str(storm_file)] + flags) == 2

    def test_config_file(self, storm_file, tmp_path):
        conf = tmp_path / 'run.conf'
        conf.write_text('method = lsa:murray\nlength = 20\n', encoding='utf-8')
        out = tmp_path / 'out.txt'
        assert summarizer.main(['summarize', str(storm_file), '--config', str(conf), '-o', str(out)]) == 0
        record = json.loads((tmp_path / 'out.txt.json').read_text(encoding='utf-8'))
        assert record['method'] == 'lsa:murray'
        assert record['budget'] == 20

    def test_missing_config_file(self, storm_file, tmp_path):
        assert summarizer.main(['summarize', str(storm_file), '--config', str(tmp_path / 'absent.conf')]) == 3


class TestEvaluate:
    def test_identical_summary_scores_one(self, tmp_path, capsys):
        system = tmp_path / 'system.txt'
        reference = tmp_path / 'reference.txt'
        system.write_text('Heavy rain flooded the river.', encoding='utf-8')
        reference.write_text('Heavy rain flooded the river.', encoding='utf-8')
        assert summarizer.main(['evaluate', str(system), str(reference), '--metrics', '1,2,L']) == 0
        lines = capsys.readouterr().out.strip().split('\n')
        assert lines[0] == 'metric,precision,recall,f,ci_low,ci_high'
        assert lines[1:] == [f'{m},1.000000,1.000000,1.000000,,' for m in ('ROUGE-1', 'ROUGE-2', 'ROUGE-L')]

    def test_writes_report(self, tmp_path):
        system = tmp_path / 'system.txt'
        system.write_text('the cat sat', encoding='utf-8')
        reference = tmp_path / 'reference.txt'
        reference.write_text('the dog sat', encoding='utf-8')
        report = tmp_path / 'report.csv'
        assert summarizer.main(['evaluate', str(system), str(reference), '--metrics', '1', '-o', str(report)]) == 0
        assert report.read_text(encoding='utf-8').split('\n')[1].startswith('ROUGE-1,0.666667,0.666667,0.666667')

    def test_missing_reference(self, tmp_path):
        system = tmp_path / 'system.txt'
        system.write_text('the cat sat', encoding='utf-8')
        assert summarizer.main(['evaluate', str(system), str(tmp_path / 'nope.txt')]) == 3


class TestCorpus:
    def test_run_writes_results_and_log(self, corpus, tmp_path, capsys):
        docs, models = corpus
        out = tmp_path / 'results.csv'
        summaries = tmp_path / 'summaries'
        code = summarizer.main(['corpus', str(docs), str(models), '-o', str(out), '--length', '30',
                                '--metrics', '1,L', '--resamples', '100', '--log-dir', str(tmp_path),
                                '--summaries-dir', str(summaries)])
        assert code == 0
        rows = out.read_text(encoding='utf-8').strip().split('\n')
        assert rows[0].startswith('doc,words,ROUGE-1 P')
        assert [r.split(',')[0] for r in rows[1:]] == ['d061', 'd062', 'MEAN']
        assert sorted(p.name for p in summaries.iterdir()) == ['d061.txt', 'd062.txt']

        logs = list(tmp_path.glob('Lexsum_Corpus_Log_*.txt'))
        assert len(logs) == 1
        log = logs[0].read_text(encoding='utf-8')
        assert 'Document: d061 - SUCCESS' in log
        assert 'SUMMARY' in log and 'Failed: 0' in log
        assert 'CORPUS RESULTS SUMMARY' in capsys.readouterr().out

    def test_failed_document_sets_exit_code(self, corpus, tmp_path):
        docs, models = corpus
        (docs / 'd063.txt').write_text('', encoding='utf-8')
        (models / 'd063.A.txt').write_text('Nothing happened.', encoding='utf-8')
        code = summarizer.main(['corpus', str(docs), str(models), '-o', str(tmp_path / 'results.csv'),
                                '--no-ci', '--log-dir', str(tmp_path)])
        assert code == 1
        log = next(tmp_path.glob('Lexsum_Corpus_Log_*.txt')).read_text(encoding='utf-8')
        assert 'Document: d063 - ERROR' in log
        assert 'Failed: 1' in log

    def test_missing_references_directory(self, corpus, tmp_path):
        docs, _ = corpus
        code = summarizer.main(['corpus', str(docs), str(tmp_path / 'none'), '-o', str(tmp_path / 'r.csv'),
                                '--log-dir', str(tmp_path)])
        assert code == 3


class TestFetchAndScripts:
    def test_fetch_to_directory(self, tmp_path, monkeypatch):
        calls = []

        def fake_get(url, timeout, headers):
            calls.append((url, timeout, headers))
            return FakeResponse(b'the\nand\n')

        monkeypatch.setattr(fetch.requests, 'get', fake_get)
        url = 'https://github.com/acme/lists/blob/main/stop/english.txt'
        assert summarizer.main(['fetch', url, str(tmp_path)]) == 0
        assert (tmp_path / 'english.txt').read_bytes() == b'the\nand\n'
        assert calls[0][0] == 'https://raw.githubusercontent.com/acme/lists/refs/heads/main/stop/english.txt'
        assert calls[0][1] == 30
        assert 'User-Agent' in calls[0][2]

    def test_fetch_http_error(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setattr(fetch.requests, 'get', lambda url, **kw: FakeResponse(status_code=404, reason='Not Found'))
        assert summarizer.main(['fetch', 'https://example.org/list.txt', str(tmp_path / 'list.txt')]) == 3
        assert '404' in capsys.readouterr().err
        assert not (tmp_path / 'list.txt').exists()

    def test_fetch_bad_url(self, tmp_path):
        assert summarizer.main(['fetch', 'not a url', str(tmp_path / 'x.txt')]) == 2

    def test_raw_url_leaves_other_hosts_alone(self):
        assert fetch.raw_url('https://example.org/a/blob/b.txt') == 'https://example.org/a/blob/b.txt'

    def test_scripts_listing(self, tmp_path, capsys):
        (tmp_path / 'Tally Words.py').write_text(
            '#!/usr/bin/env python3\n"""\nTally Words\n\nCounts words per summary.\n"""\n', encoding='utf-8')
        (tmp_path / 'notes.txt').write_text('ignored', encoding='utf-8')
        assert summarizer.main(['scripts', '--dir', str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert 'Tally Words.py' in out
        assert '    Tally Words' in out
        assert 'Counts words' not in out
        assert 'notes.txt' not in out

    def test_empty_scripts_directory(self, tmp_path, capsys):
        assert summarizer.main(['scripts', '--dir', str(tmp_path / 'none')]) == 0
        assert 'No scripts found' in capsys.readouterr().out

    def test_bundled_scripts_have_descriptions(self):
        scripts = fetch.list_scripts(summarizer.build_parser().parse_args(['scripts']).dir)
        assert scripts
        assert all(s['description'] for s in scripts)

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exit_info:
            summarizer.main(['--version'])
        assert exit_info.value.code == 0
        assert 'lexsum' in capsys.readouterr().out
