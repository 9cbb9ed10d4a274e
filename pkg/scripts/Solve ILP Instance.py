#!/usr/bin/env python3
"""
Solve a sentence selection instance CSV exactly with branch and bound.

This script reads an instance written by "summarizer.py summarize --dump-instance"
(or built by hand): one row per sentence with its relevance, its length in words and
its redundancy with every other sentence. It maximizes total relevance minus the
redundancy of selected pairs under a word budget and prints the chosen sentences,
the objective value and the solver status.

CSV Format:
    Required columns (case-insensitive):
        - relevance: Relevance score of the sentence
        - length: Length of the sentence in words
        - red_0 ... red_<n-1>: Symmetric redundancy with each sentence (zero diagonal)

    Example CSV:
        relevance,length,red_0,red_1,red_2
        1.0,12,0,0.8,0
        0.9,10,0.8,0,0
        0.5,8,0,0,0

Usage:
    python "Solve ILP Instance.py" <csv_file_path> --budget 100

Options:
    --budget N         Word budget (required)
    --node-limit N     Stop after N branch-and-bound nodes (default: 2000000)
    --mdr              The redundancy columns hold cosine similarities (baseline model)

Requirements:
    - Instance CSV with relevance, length and red_<j> columns
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lexsum.errors import LexsumError
from lexsum.optimize import NODE_LIMIT, instance_from_csv, solve_lexnet_ilp, solve_mdr


def main():
    parser = argparse.ArgumentParser(
        description='Solve a sentence selection instance with branch and bound',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""Examples:
  python "Solve ILP Instance.py" instance.csv --budget 100
  python "Solve ILP Instance.py" instance.csv --budget 665 --node-limit 500000
        """
    )
    parser.add_argument('csv_file', help='Instance CSV file')
    parser.add_argument('--budget', type=float, required=True, help='Word budget')
    parser.add_argument('--node-limit', type=int, default=NODE_LIMIT,
                        help=f'Branch-and-bound node limit (default: {NODE_LIMIT})')
    parser.add_argument('--mdr', action='store_true',
                        help='The redundancy columns hold cosine similarities (baseline model)')
    args = parser.parse_args()

    try:
        inst = instance_from_csv(args.csv_file, args.budget)
        solve = solve_mdr if args.mdr else solve_lexnet_ilp
        solution = solve(inst, node_limit=args.node_limit)
    except LexsumError as e:
        print(f"Error: {e}")
        sys.exit(1)

    print("=" * 80)
    print(f"{'MDR' if args.mdr else 'LEXICAL NETWORK'} INSTANCE: {inst.n} sentences, budget {args.budget:g}")
    print("=" * 80)
    print(f"Status: {solution.status}")
    print(f"Selected: {', '.join(f'S{i + 1}' for i in solution.selected) or '(none)'}")
    print(f"Words: {inst.length_of(solution.selected):g}")
    print(f"Objective: {solution.objective:.6f}")
    print(f"Nodes explored: {solution.nodes_explored}")
    if not solution.optimal:
        print("Warning: the selection is not proven optimal")
        sys.exit(1)


if __name__ == '__main__':
    main()
