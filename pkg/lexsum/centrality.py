"""
Centrality measures over weighted undirected sentence graphs.

Requirements:
    - numpy, scipy (dense solves and symmetric eigendecomposition)
    - networkx (shortest-path distances and Brandes betweenness)
"""

import logging
import math
import warnings
from dataclasses import dataclass

import networkx as nx
import numpy as np
import scipy.linalg
from scipy.linalg import LinAlgWarning

from lexsum.errors import (
    BetaOutOfRange,
    ConfigError,
    InvalidGraph,
    LengthMismatch,
    NoConvergence,
    SingularSystem,
)

logger = logging.getLogger(__name__)

MEASURES = ('degree', 'eigen', 'closeness', 'alpha', 'betweenness', 'bonpow', 'hits', 'subgraph', 'pagerank')
DISTANCE_MODES = ('hops', 'inverse')
# largest exponent whose exp() stays well inside float64 range
EXP_LIMIT = 700.0


@dataclass(frozen=True)
class Graph:
    """Symmetric, non-negative weighted adjacency with an empty diagonal."""

    adj: np.ndarray

    def __post_init__(self):
        adj = np.asarray(self.adj, dtype=float)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise InvalidGraph(f'Adjacency must be square (got shape {adj.shape})')
        if not np.all(np.isfinite(adj)):
            raise InvalidGraph('Adjacency weights must be finite')
        if np.any(adj < 0):
            raise InvalidGraph('Adjacency weights must be non-negative')
        if np.any(np.diag(adj) != 0):
            raise InvalidGraph('Adjacency diagonal must be zero')
        if not np.array_equal(adj, adj.T):
            raise InvalidGraph('Adjacency must be symmetric')
        object.__setattr__(self, 'adj', adj)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def has_edges(self) -> bool:
        return bool(self.adj.any())


@dataclass(frozen=True)
class CentralityParams:
    alpha: float = 0.9
    beta: float | None = None
    damping: float = 0.85
    exogenous: tuple | None = None
    tol: float = 1e-10
    max_iter: int = 1000
    distance: str = 'hops'
    normalized_degree: bool = False

    def __post_init__(self):
        if not 0.0 < self.damping < 1.0:
            raise ConfigError(f'damping must be in (0, 1) (got {self.damping})')
        if self.tol <= 0:
            raise ConfigError(f'tol must be positive (got {self.tol})')
        if self.max_iter < 1:
            raise ConfigError(f'max_iter must be at least 1 (got {self.max_iter})')
        if self.distance not in DISTANCE_MODES:
            raise ConfigError(f'distance must be one of {", ".join(DISTANCE_MODES)} (got {self.distance!r})')


def _exogenous(g: Graph, params: CentralityParams) -> np.ndarray:
    if params.exogenous is None:
        return np.ones(g.n)
    e = np.asarray(params.exogenous, dtype=float)
    if e.shape != (g.n,):
        raise LengthMismatch(f'Exogenous vector has {e.size} entries for {g.n} nodes')
    return e


def _uniform(n: int) -> np.ndarray:
    return np.full(n, 1.0 / math.sqrt(n)) if n else np.zeros(0)


def _nx_graph(g: Graph, distance: str = 'hops') -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    rows, cols = np.nonzero(np.triu(g.adj, k=1))
    for i, j in zip(rows.tolist(), cols.tolist()):
        w = g.adj[i, j]
        G.add_edge(i, j, distance=1.0 if distance == 'hops' else 1.0 / w)
    return G


def lambda_max(g: Graph) -> float:
    if g.n == 0:
        return 0.0
    return float(np.max(np.abs(scipy.linalg.eigvalsh(g.adj))))


def degree(g: Graph, normalized: bool = False) -> np.ndarray:
    d = g.adj.sum(axis=1)
    if normalized:
        return d / (g.n - 1) if g.n > 1 else np.zeros(g.n)
    return d


def eigenvector(g: Graph, params: CentralityParams = CentralityParams()) -> np.ndarray:
    """Dominant eigenvector by power iteration, unit L2 norm, non-negative.

    Iterates on A + I so bipartite graphs do not oscillate.
    """
    if not g.has_edges:
        logger.warning('Graph has no edges; eigenvector centrality falls back to uniform scores')
        return _uniform(g.n)
    M = g.adj + np.eye(g.n)
    x = _uniform(g.n)
    for _ in range(params.max_iter):
        nxt = M @ x
        nxt /= np.linalg.norm(nxt)
        if np.linalg.norm(nxt - x) < params.tol:
            x = nxt
            break
        x = nxt
    else:
        raise NoConvergence(f'Eigenvector centrality did not converge in {params.max_iter} iterations')
    return x if x.sum() >= 0 else -x


def closeness(g: Graph, distance: str = 'hops') -> np.ndarray:
    """1 / (sum of distances to reachable nodes); isolated nodes score 0."""
    G = _nx_graph(g, distance)
    scores = np.zeros(g.n)
    for i in range(g.n):
        lengths = nx.single_source_dijkstra_path_length(G, i, weight='distance')
        total = sum(lengths.values())
        scores[i] = 1.0 / total if total > 0 else 0.0
    return scores


def betweenness(g: Graph, distance: str = 'hops') -> np.ndarray:
    G = _nx_graph(g, distance)
    bc = nx.betweenness_centrality(G, normalized=False, weight='distance')
    return np.array([bc[i] for i in range(g.n)])


def _solve(a, b, what):
    with warnings.catch_warnings():
        warnings.simplefilter('error', LinAlgWarning)
        try:
            return scipy.linalg.solve(a, b)
        except (np.linalg.LinAlgError, LinAlgWarning) as e:
            raise SingularSystem(f'{what}: system is singular or ill-conditioned ({e})') from e


def alpha_centrality(g: Graph, params: CentralityParams = CentralityParams()) -> np.ndarray:
    """Solve (I - alpha A^T) x = e."""
    e = _exogenous(g, params)
    return _solve(np.eye(g.n) - params.alpha * g.adj.T, e, f'alpha centrality with alpha={params.alpha}')


def bonpow(g: Graph, params: CentralityParams = CentralityParams()) -> np.ndarray:
    """Bonacich power (I - beta A)^-1 A 1, scaled to Euclidean norm sqrt(n)."""
    lam = lambda_max(g)
    beta = params.beta
    if beta is None:
        beta = 1.0 / (2.0 * lam) if lam > 0 else 0.0
    if lam > 0 and abs(beta) >= 1.0 / lam:
        raise BetaOutOfRange(f'|beta|={abs(beta):.6g} must be below 1/lambda_max={1.0 / lam:.6g}')
    raw = _solve(np.eye(g.n) - beta * g.adj, g.adj @ np.ones(g.n), f'bonpow with beta={beta}')
    norm = np.linalg.norm(raw)
    if norm == 0:
        return raw
    return raw * (math.sqrt(g.n) / norm)


def hits(g: Graph, params: CentralityParams = CentralityParams()) -> tuple[np.ndarray, np.ndarray]:
    """Hub and authority vectors, each with unit sum of squares.

    On an undirected graph A^T A = A A^T = A^2, so both vectors are the Perron
    vector of A. Alternating hub/authority updates from a uniform start stall on
    bipartite graphs (the spectrum holds both lambda and -lambda), so the vector
    comes from the shifted power iteration instead.
    """
    if not g.has_edges:
        logger.warning('Graph has no edges; HITS falls back to uniform scores')
        return _uniform(g.n), _uniform(g.n)
    try:
        perron = eigenvector(g, params)
    except NoConvergence as e:
        raise NoConvergence(f'HITS did not converge: {e}') from e
    return perron.copy(), perron.copy()


def subgraph_centrality(g: Graph) -> np.ndarray:
    """Weighted count of closed walks at each node: sum_i v_ui^2 exp(mu_i).

    When exp(mu_max) would overflow, every score is divided by it instead;
    the ranking is the same either way.
    """
    if g.n == 0:
        return np.zeros(0)
    try:
        vals, vecs = scipy.linalg.eigh(g.adj)
    except np.linalg.LinAlgError as e:
        raise NoConvergence(f'Eigendecomposition did not converge: {e}') from e
    top = float(vals.max())
    shifted = (vecs ** 2) @ np.exp(vals - top)
    if top < EXP_LIMIT:
        return shifted * math.exp(top)
    logger.warning('Subgraph centrality scaled by exp(-%.6g) to stay finite', top)
    return shifted


def pagerank(g: Graph, params: CentralityParams = CentralityParams()) -> np.ndarray:
    """PageRank with a (1 - d) / N teleport; dangling nodes spread their mass uniformly."""
    n = g.n
    if n == 0:
        return np.zeros(0)
    out = g.adj.sum(axis=1)
    dangling = out == 0
    transition = np.divide(g.adj, out[:, None], out=np.zeros_like(g.adj), where=out[:, None] > 0)
    d = params.damping
    x = np.full(n, 1.0 / n)
    for _ in range(params.max_iter):
        nxt = (1.0 - d) / n + d * (transition.T @ x + x[dangling].sum() / n)
        nxt /= nxt.sum()
        if np.abs(nxt - x).sum() < params.tol:
            return nxt
        x = nxt
    raise NoConvergence(f'PageRank did not converge in {params.max_iter} iterations')


def score(measure: str, g: Graph, params: CentralityParams = CentralityParams()) -> np.ndarray:
    """Scores of one named measure; ``hits`` ranks by authority."""
    if measure == 'degree':
        return degree(g, params.normalized_degree)
    if measure == 'eigen':
        return eigenvector(g, params)
    if measure == 'closeness':
        return closeness(g, params.distance)
    if measure == 'alpha':
        return alpha_centrality(g, params)
    if measure == 'betweenness':
        return betweenness(g, params.distance)
    if measure == 'bonpow':
        return bonpow(g, params)
    if measure == 'hits':
        return hits(g, params)[1]
    if measure == 'subgraph':
        return subgraph_centrality(g)
    if measure == 'pagerank':
        return pagerank(g, params)
    raise ConfigError(f'Unknown centrality {measure!r} (expected one of {", ".join(MEASURES)})')
