#!/usr/bin/env python3
"""
Fit sentence feature weights by logistic regression from a labelled CSV file.

This script reads one row per training sentence with its five feature scores and a
0/1 label saying whether the sentence appears in a reference extract. It fits a
logistic regression by gradient ascent and prints the fitted weights, the intercept
and the training accuracy. The weights can be written as a config snippet that the
summarizer's --config option accepts.

CSV Format:
    Required columns (case-insensitive):
        - position: Position score of the sentence
        - tfidf: TF-IDF score
        - aggsim: Aggregate similarity score
        - centroid: Centroid score
        - sentiment: Sentiment score
        - label: 1 if the sentence belongs to the reference extract, else 0

    Example CSV:
        position,tfidf,aggsim,centroid,sentiment,label
        1.0,0.82,2.41,0.77,0.0,1
        0.8,0.15,0.90,0.10,0.3,0

Usage:
    python "Fit Feature Weights.py" <csv_file_path> [--output weights.conf]

Options:
    --output FILE    Write "method = features" and "weights = ..." lines to FILE
    --step STEP      Gradient ascent step size (default: 0.1)
    --max-iter N     Maximum gradient steps (default: 5000)

Requirements:
    - CSV file with the required columns in the first row
    - At least one sentence of each label
"""

import argparse
import os
import sys

import numpy as np

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lexsum.csvio import find_column, parse_float, read_rows
from lexsum.errors import LexsumError
from lexsum.features import FEATURE_NAMES, FeatureRow, fit_logistic_weights


def load_training_rows(csv_file):
    fieldnames, rows = read_rows(csv_file)
    feature_cols = [find_column(fieldnames, [name], path=csv_file) for name in FEATURE_NAMES]
    label_col = find_column(fieldnames, ['label', 'in_summary', 'selected'], path=csv_file)

    features, labels = [], []
    for line, row in enumerate(rows, start=2):
        values = [parse_float(row[col], csv_file, line, col) for col in feature_cols]
        features.append(FeatureRow(*values))
        labels.append(parse_float(row[label_col], csv_file, line, label_col))
    return features, np.array(labels)


def main():
    parser = argparse.ArgumentParser(
        description='Fit sentence feature weights from labelled training rows',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""Examples:
  python "Fit Feature Weights.py" training.csv
  python "Fit Feature Weights.py" training.csv --output features.conf --step 0.05
        """
    )
    parser.add_argument('csv_file', help='CSV file with feature columns and a label column')
    parser.add_argument('--output', help='Write a config snippet with the fitted weights')
    parser.add_argument('--step', type=float, default=0.1, help='Gradient ascent step size (default: 0.1)')
    parser.add_argument('--max-iter', type=int, default=5000, help='Maximum gradient steps (default: 5000)')
    args = parser.parse_args()

    try:
        rows, labels = load_training_rows(args.csv_file)
        weights, intercept, fit = fit_logistic_weights(rows, labels, step=args.step, max_iter=args.max_iter)
    except LexsumError as e:
        print(f"Error: {e}")
        sys.exit(1)

    print("=" * 80)
    print("FITTED FEATURE WEIGHTS")
    print("=" * 80)
    print(f"Training sentences: {len(rows)} ({int(labels.sum())} in reference extracts)")
    for name, value in zip(FEATURE_NAMES, weights.as_array()):
        print(f"  {name:<10} {value: .6f}")
    print(f"  {'intercept':<10} {intercept: .6f}")
    print(f"\nTraining accuracy: {fit.accuracy:.4f}")
    status = 'converged' if fit.converged else 'stopped at the iteration limit'
    print(f"Iterations: {fit.iterations} ({status})")

    weight_text = ','.join(f'{w:.6f}' for w in weights.as_array())
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            f.write('# fitted by "Fit Feature Weights.py"\n')
            f.write('method = features\n')
            f.write(f'weights = {weight_text}\n')
        print(f"\nConfig written to: {args.output}")
    else:
        print(f"\n--weights {weight_text}")


if __name__ == '__main__':
    main()
