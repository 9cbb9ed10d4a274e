"""
Summarization as 0-1 optimization.

Both models maximize total sentence relevance minus pairwise redundancy of the
chosen sentences under a word budget; they differ only in where the
redundancy comes from (cosine similarity or lexical-network edge weights).
Instances are solved exactly by depth-first branch and bound.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from lexsum.csvio import find_column, parse_float, read_rows, write_csv
from lexsum.errors import (
    ConfigError,
    InstanceTooLarge,
    InvalidGraph,
    LengthMismatch,
    NonFiniteFeature,
    ParseError,
)
from lexsum.textcore import cosine_similarity, min_max_normalize, term_vector

logger = logging.getLogger(__name__)

MAX_ITEMS = 200
NODE_LIMIT = 2_000_000
EPS = 1e-12

OPTIMAL = 'optimal'
INFEASIBLE = 'infeasible'
NODE_LIMIT_STATUS = 'node_limit'


@dataclass(frozen=True)
class IlpInstance:
    relevance: np.ndarray
    redundancy: np.ndarray
    lengths: np.ndarray
    budget: float

    def __post_init__(self):
        rel = np.asarray(self.relevance, dtype=float)
        red = np.asarray(self.redundancy, dtype=float)
        lengths = np.asarray(self.lengths, dtype=float)
        n = rel.shape[0]
        if red.shape != (n, n) or lengths.shape != (n,):
            raise LengthMismatch(f'Instance shapes disagree: relevance {rel.shape}, '
                                 f'redundancy {red.shape}, lengths {lengths.shape}')
        if not np.all(np.isfinite(rel)):
            raise NonFiniteFeature('Relevance scores must be finite')
        if not np.all(np.isfinite(red)) or np.any(red < 0):
            raise InvalidGraph('Redundancy must be finite and non-negative')
        if not np.array_equal(red, red.T) or np.any(np.diag(red) != 0):
            raise InvalidGraph('Redundancy must be symmetric with a zero diagonal')
        if np.any(lengths <= 0):
            raise ConfigError('Sentence lengths must be positive')
        if self.budget <= 0:
            raise ConfigError(f'Budget must be positive (got {self.budget})')
        object.__setattr__(self, 'relevance', rel)
        object.__setattr__(self, 'redundancy', red)
        object.__setattr__(self, 'lengths', lengths)

    @property
    def n(self) -> int:
        return self.relevance.shape[0]

    def objective(self, selected) -> float:
        selected = sorted(selected)
        gain = float(self.relevance[selected].sum()) if selected else 0.0
        penalty = sum(self.redundancy[i, j] for i, j in combinations(selected, 2))
        return gain - float(penalty)

    def length_of(self, selected) -> float:
        return float(sum(self.lengths[i] for i in selected))


@dataclass(frozen=True)
class IlpSolution:
    selected: tuple
    objective: float
    optimal: bool
    nodes_explored: int
    status: str = OPTIMAL
    pairs: tuple = field(default=())


def _fractional_bound(order, start, capacity, rel, lengths):
    bound = 0.0
    for k in order[start:]:
        if capacity <= 0:
            break
        if lengths[k] <= capacity:
            bound += rel[k]
            capacity -= lengths[k]
        else:
            bound += rel[k] * capacity / lengths[k]
            break
    return bound


def branch_and_bound(inst: IlpInstance, node_limit: int = NODE_LIMIT, max_items: int = MAX_ITEMS) -> IlpSolution:
    """Exact maximizer of relevance minus pairwise redundancy under the budget.

    Items are branched in descending relevance-per-word order, include branch
    first. The bound adds a fractional relevance knapsack over the undecided
    items; redundancy only subtracts, so the bound is valid.
    """
    if inst.n > max_items:
        raise InstanceTooLarge(f'{inst.n} sentences exceed the solver cap of {max_items}')
    rel, red, lengths, budget = inst.relevance, inst.redundancy, inst.lengths, inst.budget

    if inst.n == 0:
        return IlpSolution(selected=(), objective=0.0, optimal=True, nodes_explored=0)
    if lengths.min() > budget:
        return IlpSolution(selected=(), objective=0.0, optimal=False, nodes_explored=0, status=INFEASIBLE)

    # Items with no positive relevance can only lower the objective
    order = sorted((k for k in range(inst.n) if rel[k] > 0 and lengths[k] <= budget),
                   key=lambda k: (-rel[k] / lengths[k], k))

    best_value, best_set = 0.0, ()
    nodes = 0
    stack = [(0, (), 0.0, 0.0)]
    hit_limit = False
    while stack:
        depth, chosen, value, used = stack.pop()
        nodes += 1
        if nodes > node_limit:
            hit_limit = True
            break
        if value > best_value + EPS:
            best_value, best_set = value, chosen
        if depth == len(order):
            continue
        if value + _fractional_bound(order, depth, budget - used, rel, lengths) <= best_value + EPS:
            continue
        k = order[depth]
        stack.append((depth + 1, chosen, value, used))
        if used + lengths[k] <= budget:
            gain = rel[k] - sum(red[k, s] for s in chosen)
            stack.append((depth + 1, chosen + (k,), value + gain, used + lengths[k]))

    selected = tuple(sorted(best_set))
    if hit_limit:
        logger.warning('Branch and bound stopped at the node limit (%d); returning the best incumbent',
                       node_limit)
        status = NODE_LIMIT_STATUS
    else:
        status = OPTIMAL
    return IlpSolution(selected=selected, objective=inst.objective(selected), optimal=not hit_limit,
                       nodes_explored=nodes, status=status,
                       pairs=tuple(combinations(selected, 2)))


def solve_mdr(inst: IlpInstance, **kwargs) -> IlpSolution:
    """Relevance minus cosine redundancy (the baseline model)."""
    return branch_and_bound(inst, **kwargs)


def solve_lexnet_ilp(inst: IlpInstance, **kwargs) -> IlpSolution:
    """Relevance minus lexical-network edge weights."""
    return branch_and_bound(inst, **kwargs)


def cosine_redundancy(sentences) -> np.ndarray:
    vectors = [term_vector(s.terms) for s in sentences]
    n = len(vectors)
    red = np.zeros((n, n))
    for i, j in combinations(range(n), 2):
        red[i, j] = red[j, i] = cosine_similarity(vectors[i], vectors[j])
    return red


def hybridize_relevance(vectors) -> np.ndarray:
    """Sum of min-max normalized score vectors."""
    vectors = [np.asarray(v, dtype=float) for v in vectors]
    if not vectors:
        raise LengthMismatch('No relevance vectors to combine')
    if len({v.shape for v in vectors}) != 1:
        raise LengthMismatch(f'Relevance vectors differ in length: {[v.size for v in vectors]}')
    return np.sum([min_max_normalize(v) for v in vectors], axis=0)


def build_instance(relevance, redundancy, lengths, budget, redundancy_scale: float = 1.0) -> IlpInstance:
    if redundancy_scale < 0:
        raise ConfigError(f'Redundancy scale must be non-negative (got {redundancy_scale})')
    return IlpInstance(relevance=np.asarray(relevance, dtype=float),
                       redundancy=np.asarray(redundancy, dtype=float) * redundancy_scale,
                       lengths=np.asarray(lengths, dtype=float), budget=budget)


def instance_rows(inst: IlpInstance) -> list[list]:
    rows = [['relevance', 'length'] + [f'red_{j}' for j in range(inst.n)]]
    for i in range(inst.n):
        rows.append([repr(float(inst.relevance[i])), int(inst.lengths[i])]
                    + [repr(float(x)) for x in inst.redundancy[i]])
    return rows


def instance_to_csv(inst: IlpInstance, path) -> None:
    write_csv(path, instance_rows(inst))


def instance_from_csv(path, budget) -> IlpInstance:
    """Load an instance written by ``instance_to_csv`` (budget is given separately)."""
    fieldnames, rows = read_rows(path)
    rel_col = find_column(fieldnames, ['relevance', 'rel', 'score'], path=path)
    len_col = find_column(fieldnames, ['length', 'len', 'words'], path=path)
    n = len(rows)
    red_cols = [find_column(fieldnames, [f'red_{j}', f'red {j}'], required=False) for j in range(n)]
    if any(c is None for c in red_cols):
        raise ParseError(f'expected redundancy columns red_0..red_{n - 1} (found: {fieldnames})', path=path)
    relevance, lengths, redundancy = [], [], []
    for line, row in enumerate(rows, start=2):
        relevance.append(parse_float(row[rel_col], path, line, rel_col))
        lengths.append(parse_float(row[len_col], path, line, len_col))
        redundancy.append([parse_float(row[c], path, line, c) for c in red_cols])
    return IlpInstance(relevance=np.array(relevance), redundancy=np.array(redundancy),
                       lengths=np.array(lengths), budget=float(budget))
