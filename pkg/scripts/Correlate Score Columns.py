#!/usr/bin/env python3
"""
Correlate the numeric columns of a CSV file pairwise with Pearson, Spearman and Kendall.

This script reads a CSV file where each row is a sentence (or a document) and each
numeric column is one score for it, for example the same sentences ranked by several
centrality measures. It prints the pairwise correlation matrix for the chosen method
and the mean of the off-diagonal coefficients. Columns can be restricted with
--columns; non-numeric columns are skipped unless named explicitly.

CSV Format:
    Any header row; every selected column must hold numbers.

    Example CSV:
        sentence,degree,pagerank,subgraph
        S1,5,0.31,12.4
        S2,3,0.22,7.9
        S3,4,0.27,9.1

Usage:
    python "Correlate Score Columns.py" <csv_file_path> [--method spearman] [--columns a,b,c]

Options:
    --method METHOD    pearson, spearman or kendall (default: pearson)
    --columns LIST     Comma-separated column names (default: every numeric column)
    --output FILE      Also write the matrix as CSV

Requirements:
    - CSV file with at least two numeric columns and two rows
"""

import argparse
import os
import sys
from itertools import combinations

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lexsum.csvio import find_column, parse_float, read_rows, write_csv
from lexsum.errors import LexsumError
from lexsum.evaluate import kendall, mean_correlation, pearson, spearman

METHODS = {'pearson': pearson, 'spearman': spearman, 'kendall': kendall}


def _is_number(value):
    try:
        float(value)
        return True
    except (TypeError, ValueError):
        return False


def select_columns(csv_file, fieldnames, rows, requested):
    if requested:
        return [find_column(fieldnames, [name.strip()], path=csv_file) for name in requested.split(',')]
    return [c for c in fieldnames if rows and all(_is_number(row[c]) for row in rows)]


def correlation_matrix(csv_file, columns, rows, method):
    data = {c: [parse_float(row[c], csv_file, line, c) for line, row in enumerate(rows, start=2)]
            for c in columns}
    corr = METHODS[method]
    matrix = {(a, a): 1.0 for a in columns}
    for a, b in combinations(columns, 2):
        matrix[a, b] = matrix[b, a] = corr(data[a], data[b])
    return matrix


def main():
    parser = argparse.ArgumentParser(
        description='Pairwise correlation of numeric CSV columns',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""Examples:
  python "Correlate Score Columns.py" centralities.csv
  python "Correlate Score Columns.py" centralities.csv --method kendall --columns degree,pagerank
        """
    )
    parser.add_argument('csv_file', help='CSV file of scores')
    parser.add_argument('--method', choices=sorted(METHODS), default='pearson',
                        help='Correlation coefficient (default: pearson)')
    parser.add_argument('--columns', help='Comma-separated columns to correlate')
    parser.add_argument('--output', help='Write the correlation matrix to this CSV file')
    args = parser.parse_args()

    try:
        fieldnames, rows = read_rows(args.csv_file)
        columns = select_columns(args.csv_file, fieldnames, rows, args.columns)
        if len(columns) < 2:
            print(f"Error: Need at least two numeric columns (found: {columns})")
            sys.exit(1)
        matrix = correlation_matrix(args.csv_file, columns, rows, args.method)
        mean = mean_correlation([matrix[a, b] for a, b in combinations(columns, 2)])
    except LexsumError as e:
        print(f"Error: {e}")
        sys.exit(1)

    width = max(len(c) for c in columns) + 2
    print(f"{args.method.capitalize()} correlation over {len(rows)} rows")
    print("=" * 80)
    print(' ' * width + ''.join(f'{c:>{width}}' for c in columns))
    for a in columns:
        print(f'{a:<{width}}' + ''.join(f'{matrix[a, b]:>{width}.4f}' for b in columns))
    print("=" * 80)
    print(f"Mean pairwise correlation: {mean:.4f}")

    if args.output:
        rows_out = [[''] + columns] + [[a] + [f'{matrix[a, b]:.6f}' for b in columns] for a in columns]
        write_csv(args.output, rows_out)
        print(f"Matrix written to: {args.output}")


if __name__ == '__main__':
    main()
