#!/usr/bin/env python3
"""
Lexsum - extractive single-document summarization from the command line.

Summarizes documents with sentence features, latent semantic analysis, a
WordNet lexical network ranked by graph centrality, or an exact 0-1
optimization model, and scores summaries with ROUGE.

Usage:
    python summarizer.py summarize <file> [options]
    python summarizer.py evaluate <system_file> <reference_file> [<reference_file> ...]
    python summarizer.py corpus <docs_dir> <models_dir> --output results.csv [options]
    python summarizer.py fetch <url> <dest>
    python summarizer.py scripts

Exit codes:
    0 success, 1 some corpus documents failed, 2 configuration error,
    3 missing or malformed input, 4 pipeline failure
"""

import argparse
import json
import logging
import os
import sys
from datetime import datetime

from lexsum import __version__, evaluate
from lexsum.config import build_config
from lexsum.csvio import rows_to_csv, write_csv
from lexsum.errors import LexsumError
from lexsum.fetch import download, list_scripts
from lexsum.lexnet import write_network_csv
from lexsum.lsa import MODELS
from lexsum.optimize import instance_to_csv
from lexsum.pipeline import (
    CorpusLayout,
    aggregate,
    corpus_rows,
    discover,
    load_resources,
    read_text,
    rouge_config,
    run_corpus,
    summarize_file,
)

SCRIPTS_DIR_NAME = 'scripts'

# Flags that map one-to-one onto RunConfig fields
CONFIG_FLAGS = (
    'method', 'length', 'theta', 'rank', 'scheme', 'case', 'wsd', 'centrality', 'alpha', 'beta',
    'damping', 'distance', 'weights', 'log_base', 'centroid_threshold', 'relevance', 'redundancy',
    'redundancy_scale', 'node_limit', 'wordnet', 'validate_wordnet', 'gloss_examples', 'sentiment_lexicon',
    'stoplist', 'by_lines', 'metrics', 'limit_words', 'skip_gap', 'ci', 'resamples', 'seed', 'workers',
)


def _config_parent() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    group = parent.add_argument_group('run configuration (overrides --config)')
    group.add_argument('--config', help='key = value configuration file')
    group.add_argument('--method', help=f'features, lsa:<{"|".join(MODELS)}>, lexnet or ilp (default: lsa:lsass)')
    group.add_argument('--length', help='Word budget: N words or P%% of the document (default: 100)')
    group.add_argument('--theta',
                       help='Diversity threshold in [0, 1] (default: 0.1 features, 0.4 lsa, 0.10 lexnet, off for ilp)')
    group.add_argument('--rank', type=int, help='LSA rank (default: min(terms, sentences, 10))')
    group.add_argument('--scheme', help='LSA weighting "local,global" (default: tf,idf)')
    group.add_argument('--case', choices=['vt', 'sigma_vt'], help='Concept matrix for lsacs (default: sigma_vt)')
    group.add_argument('--wsd', choices=['simple', 'adapted', 'cosine'], help='Lesk variant (default: simple)')
    group.add_argument('--centrality', help='Centrality measure for lexnet (default: subgraph)')
    group.add_argument('--alpha', type=float, help='Alpha centrality attenuation (default: 0.9)')
    group.add_argument('--beta', help='Bonacich power beta (default: 1/(2 lambda_max))')
    group.add_argument('--damping', type=float, help='PageRank damping (default: 0.85)')
    group.add_argument('--distance', choices=['hops', 'inverse'], help='Path length for closeness/betweenness')
    group.add_argument('--weights', help='Feature weights "w1,w2,w3,w4,w5" (default: 1,1,1,1,1)')
    group.add_argument('--log-base', type=float, help='Logarithm base of the tf-idf feature (default: 10)')
    group.add_argument('--centroid-threshold', type=float, help='Centroid word cut-off (default: mean value)')
    group.add_argument('--relevance', help='ilp relevance: a centrality or hybrid:a+b (default: subgraph)')
    group.add_argument('--redundancy', choices=['lexnet', 'cosine'], help='ilp redundancy source (default: lexnet)')
    group.add_argument('--redundancy-scale', type=float, help='Multiplier on ilp redundancy (default: 1.0)')
    group.add_argument('--node-limit', type=int, help='Branch-and-bound node limit (default: 2000000)')
    group.add_argument('--wordnet', help='WordNet 3.x database directory (default: NLTK wordnet corpus)')
    group.add_argument('--no-validate-wordnet', dest='validate_wordnet', action='store_const', const=False,
                       help='Skip the full WordNet consistency check at load')
    group.add_argument('--gloss-examples', action='store_const', const=True,
                       help='Add WordNet usage examples to sense glosses for Lesk')
    group.add_argument('--sentiment-lexicon', help='word<TAB>score file (default: bundled lexicon)')
    group.add_argument('--stoplist', help='Stopword file (default: bundled list)')
    group.add_argument('--by-lines', action='store_const', const=True,
                       help='Treat each input line as one sentence')
    group.add_argument('--metrics', help='ROUGE metrics, e.g. "1,2,L,W,S,SU" (default: all)')
    group.add_argument('--limit-words', help='Truncate summaries and references to N words; "none" disables')
    group.add_argument('--skip-gap', type=int, help='Maximum skip distance for ROUGE-S/SU (default: unlimited)')
    group.add_argument('--no-ci', dest='ci', action='store_const', const=False,
                       help='Skip bootstrap confidence intervals')
    group.add_argument('--resamples', type=int, help='Bootstrap resamples (default: 1000)')
    group.add_argument('--seed', type=int, help='Bootstrap seed (default: 0)')
    group.add_argument('--workers', type=int, help='Documents processed in parallel (default: 1)')
    group.add_argument('--verbose', action='store_true', help='Log progress to stderr')
    return parent


def config_from_args(args):
    overrides = {name: getattr(args, name, None) for name in CONFIG_FLAGS}
    return build_config(args.config, overrides)


def _setup_logging(verbose: bool):
    if verbose:
        logging.basicConfig(level=logging.INFO, format='%(levelname)s %(name)s: %(message)s')


def cmd_summarize(args) -> int:
    cfg = config_from_args(args)
    resources = load_resources(cfg)
    result = summarize_file(args.file, cfg, resources)
    text = result.summary.text(result.document, separator='\n')

    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write(text + '\n')
    else:
        print(text)

    sidecar = args.sidecar or (args.output + '.json' if args.output else None)
    if sidecar:
        with open(sidecar, 'w', encoding='utf-8') as f:
            json.dump(result.sidecar(cfg), f, indent=2, sort_keys=True)
            f.write('\n')
    if args.dump_matrix and result.matrix is not None:
        m = result.matrix
        write_csv(args.dump_matrix, [['term'] + [f'S{j + 1}' for j in range(m.values.shape[1])]]
                  + [[t] + [repr(float(v)) for v in row] for t, row in zip(m.terms, m.values)])
    if args.dump_network and result.network is not None:
        write_network_csv(result.network, args.dump_network)
    if args.dump_instance and result.instance is not None:
        instance_to_csv(result.instance, args.dump_instance)
    if result.status != 'ok' and result.status != 'optimal':
        print(f'Warning: solver status {result.status}', file=sys.stderr)
    return 0


def cmd_evaluate(args) -> int:
    cfg = config_from_args(args)
    rcfg = rouge_config(cfg)
    system = read_text(args.system)
    references = [read_text(path) for path in args.references]
    metrics = evaluate.parse_metrics(cfg.metrics, rcfg)
    report = evaluate.rouge_report(system, references, metrics, rcfg)
    rows = evaluate.report_rows(report)
    if args.output:
        write_csv(args.output, rows)
    else:
        sys.stdout.write(rows_to_csv(rows))
    return 0


def _write_log_header(log_file, args, cfg, total):
    log_file.write('Lexsum Corpus Run Log\n')
    log_file.write(f"Started: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")
    log_file.write(f'Documents directory: {args.docs_dir}\n')
    log_file.write(f'References directory: {args.models_dir}\n')
    log_file.write(f'Total documents: {total}\n')
    for key, value in cfg.as_dict().items():
        log_file.write(f'{key}: {value}\n')
    log_file.write('=' * 80 + '\n\n')


def cmd_corpus(args) -> int:
    cfg = config_from_args(args)
    layout = CorpusLayout(args.docs_dir, args.models_dir)
    items = discover(layout)
    resources = load_resources(cfg)
    if args.summaries_dir:
        os.makedirs(args.summaries_dir, exist_ok=True)

    print('=' * 80)
    print('Lexsum Corpus Run')
    print('=' * 80)
    print(f'Documents: {len(items)} in {args.docs_dir}')
    print(f'Method: {cfg.method}')

    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    log_filename = os.path.join(args.log_dir, f'Lexsum_Corpus_Log_{timestamp}.txt')
    print(f'Log file: {log_filename}')

    with open(log_filename, 'w', encoding='utf-8') as log_file:
        _write_log_header(log_file, args, cfg, len(items))

        def record(outcome):
            when = datetime.now().strftime('%Y-%m-%d %H:%M:%S')
            status = 'SUCCESS' if outcome.success else 'ERROR'
            message = f'{outcome.words} words ({outcome.message})' if outcome.success else outcome.message
            log_file.write(f'[{when}] Document: {outcome.doc_id} - {status}: {message}\n')
            log_file.flush()
            mark = '✓' if outcome.success else '✗'
            print(f'  {mark} {outcome.doc_id}: {message}')
            if outcome.success and args.summaries_dir:
                with open(os.path.join(args.summaries_dir, outcome.doc_id + '.txt'), 'w', encoding='utf-8') as f:
                    f.write(outcome.text + '\n')

        summary = run_corpus(items, cfg, resources, on_result=record)
        metrics = summary['metrics']
        means = aggregate(summary['results'], metrics, cfg.ci, cfg.resamples, cfg.seed)
        write_csv(args.output, corpus_rows(summary['results'], metrics, means))

        log_file.write('\n' + '=' * 80 + '\n')
        log_file.write('SUMMARY\n')
        log_file.write('=' * 80 + '\n')
        log_file.write(f"Total documents processed: {summary['total']}\n")
        log_file.write(f"Successful: {summary['successful']}\n")
        log_file.write(f"Failed: {summary['failed']}\n")
        log_file.write(f"Completed: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")

    print('\n' + '=' * 80)
    print('CORPUS RESULTS SUMMARY')
    print('=' * 80)
    print(f"\nTotal documents processed: {summary['total']}")
    print(f"Successful: {summary['successful']}")
    print(f"Failed: {summary['failed']}")
    for name, (score, ci) in means.items():
        interval = '' if ci is None else f'  95% CI [{ci[0]:.4f}, {ci[1]:.4f}]'
        print(f'  {name}: F={score.f:.4f}{interval}')
    print(f'\nResults: {args.output}')
    print(f'Log file: {log_filename}')
    return 1 if summary['failed'] > 0 else 0


def cmd_fetch(args) -> int:
    dest = download(args.url, args.dest)
    print(f'Saved {args.url} to {dest}')
    return 0


def cmd_scripts(args) -> int:
    scripts = list_scripts(args.dir)
    if not scripts:
        print(f'No scripts found in {args.dir}')
        return 0
    for script in scripts:
        print(script['name'])
        for line in (script['description'] or '(no description)').splitlines():
            print(f'    {line}')
    return 0


def build_parser() -> argparse.ArgumentParser:
    parent = _config_parent()
    parser = argparse.ArgumentParser(
        description='Extractive single-document summarization and ROUGE evaluation',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""Examples:
  python summarizer.py summarize doc.txt --method lsa:lsass --length 100
  python summarizer.py summarize doc.txt --method lexnet --centrality subgraph --wsd simple --theta 0.10
  python summarizer.py evaluate summary.txt ref1.txt ref2.txt --metrics 1,2,L
  python summarizer.py corpus docs/ models/ --output results.csv --config best.conf
        """
    )
    parser.add_argument('--version', action='version', version=f'lexsum {__version__}')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('summarize', parents=[parent], help='Summarize one document')
    p.add_argument('file', help='Plain text or DUC SGML document')
    p.add_argument('--output', '-o', help='Summary file (default: print to stdout)')
    p.add_argument('--sidecar', help='JSON record of the selection (default: <output>.json)')
    p.add_argument('--dump-matrix', help='Write the LSA term-sentence matrix as CSV')
    p.add_argument('--dump-network', help='Write the lexical network adjacency as CSV')
    p.add_argument('--dump-instance', help='Write the 0-1 optimization instance as CSV')
    p.set_defaults(handler=cmd_summarize)

    p = sub.add_parser('evaluate', parents=[parent], help='Score one summary against references')
    p.add_argument('system', help='System summary file')
    p.add_argument('references', nargs='+', help='Reference summary files')
    p.add_argument('--output', '-o', help='Report CSV (default: print to stdout)')
    p.set_defaults(handler=cmd_evaluate)

    p = sub.add_parser('corpus', parents=[parent], help='Summarize and score a DUC-layout corpus')
    p.add_argument('docs_dir', help='Directory of documents')
    p.add_argument('models_dir', help='Directory of reference summaries (matched by filename stem)')
    p.add_argument('--output', '-o', required=True, help='Per-document results CSV')
    p.add_argument('--summaries-dir', help='Also write each summary to this directory')
    p.add_argument('--log-dir', default='.', help='Directory for the run log (default: current directory)')
    p.set_defaults(handler=cmd_corpus)

    p = sub.add_parser('fetch', help='Download a stoplist, lexicon or helper script')
    p.add_argument('url', help='Resource URL (GitHub blob URLs are converted to raw)')
    p.add_argument('dest', help='Destination file or directory')
    p.add_argument('--verbose', action='store_true', help='Log progress to stderr')
    p.set_defaults(handler=cmd_fetch)

    p = sub.add_parser('scripts', help='List helper scripts with their descriptions')
    p.add_argument('--dir', default=os.path.join(os.path.dirname(os.path.abspath(__file__)), SCRIPTS_DIR_NAME),
                   help='Scripts directory')
    p.add_argument('--verbose', action='store_true', help='Log progress to stderr')
    p.set_defaults(handler=cmd_scripts)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(getattr(args, 'verbose', False))
    try:
        return args.handler(args)
    except LexsumError as e:
        print(f'Error: {e}', file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f'Error: {e}', file=sys.stderr)
        return 3


if __name__ == '__main__':
    sys.exit(main())
