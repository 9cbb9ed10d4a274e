#!/usr/bin/env python3
"""
Run one corpus evaluation per configuration row of a CSV file.

This script reads a CSV file where each row is one summarizer configuration (for
example a threshold, word sense disambiguation or centrality sweep) and evaluates
every row on the same document and reference directories. Blank cells keep the
value of the base configuration. It writes one result row per configuration with
the mean ROUGE F score of each metric and creates a detailed timestamped log file.

CSV Format:
    Optional column:
        - name: Label for the configuration (default: row number)
    Any other column is a run configuration key, for example:
        - method, centrality, wsd, theta, length, rank, scheme, relevance, redundancy

    Example CSV:
        name,method,centrality,wsd,theta
        subgraph-simple,lexnet,subgraph,simple,0.10
        pagerank-cosine,lexnet,pagerank,cosine,0.10
        lsa-baseline,lsa:lsass,,,0.4

Usage:
    python "Run Experiments.py" <csv_file_path> <docs_dir> <models_dir> [options]

Options:
    --config FILE      Base key = value configuration for every row
    --output FILE      Results CSV (default: Experiment_Results_<timestamp>.csv)
    --log-dir DIR      Directory for the log file (default: current directory)

Requirements:
    - Documents directory and a references directory with files sharing each document's stem
    - WordNet 3.x database for lexnet and ilp rows (--wordnet column or NLTK wordnet corpus)
"""

import argparse
import os
import sys
from datetime import datetime

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lexsum.config import FIELD_NAMES, build_config
from lexsum.csvio import normalize_header, read_rows, write_csv
from lexsum.errors import LexsumError
from lexsum.pipeline import CorpusLayout, aggregate, discover, load_resources, run_corpus

NAME_COLUMNS = ('name', 'experiment', 'label')


def parse_experiments(csv_file, base_config):
    """Validate every row before anything runs; returns [(name, settings, RunConfig)]."""
    fieldnames, rows = read_rows(csv_file)
    keys = {h: normalize_header(h) for h in fieldnames}
    unknown = [h for h, k in keys.items() if k not in FIELD_NAMES and k not in NAME_COLUMNS]
    if unknown:
        raise LexsumError(f"Unknown configuration columns: {', '.join(unknown)}")

    experiments = []
    for number, row in enumerate(rows, start=1):
        name = next((row[h].strip() for h, k in keys.items() if k in NAME_COLUMNS and row[h].strip()),
                    f'row {number}')
        settings = {k: row[h].strip() for h, k in keys.items()
                    if k in FIELD_NAMES and row[h] is not None and row[h].strip()}
        try:
            cfg = build_config(base_config, settings)
        except LexsumError as e:
            raise LexsumError(f'{name} (line {number + 1}): {e}') from e
        experiments.append((name, settings, cfg))
    return experiments


def _resource_key(cfg):
    return (cfg.stoplist, cfg.wordnet, cfg.validate_wordnet, cfg.gloss_examples, cfg.sentiment_lexicon,
            cfg.needs_wordnet, cfg.family == 'features')


def run_experiments(experiments, items, log_file):
    """Evaluate each configuration; returns the summary dict and one result per experiment."""
    cache = {}
    results = []
    successful = failed = 0
    for name, settings, cfg in experiments:
        timestamp = datetime.now().strftime('%Y-%m-%d %H:%M:%S')
        try:
            key = _resource_key(cfg)
            if key not in cache:
                cache[key] = load_resources(cfg)
            summary = run_corpus(items, cfg, cache[key])
            means = aggregate(summary['results'], summary['metrics'], with_ci=False)
            status = 'SUCCESS' if summary['failed'] == 0 else 'PARTIAL'
            scores = ', '.join(f'{m} F={s.f:.4f}' for m, (s, _) in means.items())
            message = f"{summary['successful']}/{summary['total']} documents; {scores}"
            results.append({'name': name, 'settings': settings, 'means': means,
                            'successful': summary['successful'], 'failed': summary['failed']})
            successful += 1
            print(f"  ✓ {name}: {scores}")
        except LexsumError as e:
            status = 'ERROR'
            message = str(e)
            results.append({'name': name, 'settings': settings, 'means': {},
                            'successful': 0, 'failed': len(items), 'error': message})
            failed += 1
            print(f"  ✗ {name}: {message}")
        log_file.write(f"[{timestamp}] Experiment: {name} - {status}: {message}\n")
        log_file.flush()

    return {'total': len(experiments), 'successful': successful, 'failed': failed, 'results': results}


def result_rows(results):
    settings_cols = []
    metric_cols = []
    for r in results:
        settings_cols += [k for k in r['settings'] if k not in settings_cols]
        metric_cols += [m for m in r['means'] if m not in metric_cols]
    rows = [['name'] + settings_cols + [f'{m} F' for m in metric_cols] + ['successful', 'failed']]
    for r in results:
        scores = [f"{r['means'][m][0].f:.6f}" if m in r['means'] else '' for m in metric_cols]
        rows.append([r['name']] + [r['settings'].get(k, '') for k in settings_cols] + scores
                    + [r['successful'], r['failed']])
    return rows


def main():
    parser = argparse.ArgumentParser(
        description='Evaluate one summarizer configuration per CSV row on a corpus',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""Examples:
  python "Run Experiments.py" sweep.csv docs/ models/
  python "Run Experiments.py" sweep.csv docs/ models/ --config base.conf --output sweep_results.csv
        """
    )
    parser.add_argument('csv_file', help='CSV file with one configuration per row')
    parser.add_argument('docs_dir', help='Directory of documents')
    parser.add_argument('models_dir', help='Directory of reference summaries')
    parser.add_argument('--config', help='Base key = value configuration')
    parser.add_argument('--output', help='Results CSV file')
    parser.add_argument('--log-dir', default='.', help='Directory for the log file (default: current directory)')
    args = parser.parse_args()

    try:
        experiments = parse_experiments(args.csv_file, args.config)
        items = discover(CorpusLayout(args.docs_dir, args.models_dir))
    except LexsumError as e:
        print(f"Error: {e}")
        sys.exit(1)

    if not experiments:
        print("No configurations found in CSV file")
        sys.exit(0)

    timestamp = datetime.now().strftime('%Y%m%d_%H%M%S')
    output = args.output or f'Experiment_Results_{timestamp}.csv'
    log_filename = os.path.join(args.log_dir, f'Lexsum_Experiments_Log_{timestamp}.txt')

    print("=" * 80)
    print("Lexsum Experiments")
    print("=" * 80)
    print(f"Configurations: {len(experiments)}")
    print(f"Documents: {len(items)} in {args.docs_dir}")
    print(f"Log file: {log_filename}")

    with open(log_filename, 'w', encoding='utf-8') as log_file:
        log_file.write("Lexsum Experiments Log\n")
        log_file.write(f"Started: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")
        log_file.write(f"CSV file: {args.csv_file}\n")
        log_file.write(f"Documents directory: {args.docs_dir}\n")
        log_file.write(f"References directory: {args.models_dir}\n")
        log_file.write(f"Total configurations: {len(experiments)}\n")
        log_file.write("=" * 80 + "\n\n")

        summary = run_experiments(experiments, items, log_file)
        write_csv(output, result_rows(summary['results']))

        log_file.write("\n" + "=" * 80 + "\n")
        log_file.write("SUMMARY\n")
        log_file.write("=" * 80 + "\n")
        log_file.write(f"Total configurations processed: {summary['total']}\n")
        log_file.write(f"Successful: {summary['successful']}\n")
        log_file.write(f"Failed: {summary['failed']}\n")
        log_file.write(f"Completed: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")

    print("\n" + "=" * 80)
    print("EXPERIMENT RESULTS SUMMARY")
    print("=" * 80)
    print(f"\nTotal configurations processed: {summary['total']}")
    print(f"Successful: {summary['successful']}")
    print(f"Failed: {summary['failed']}")
    print(f"\nResults: {output}")
    print(f"Log file: {log_filename}")
    if summary['failed']:
        sys.exit(1)


if __name__ == '__main__':
    main()
