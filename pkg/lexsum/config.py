"""
Run configuration.

A RunConfig holds every parameter of a summarization or corpus run. Values
come from an optional ``key = value`` file and are overridden by command-line
flags; everything is validated once, before any document is read.

Config file format:
    # comment
    method = lexnet
    centrality = subgraph
    theta = 0.10
    length = 100
"""

import math
import os
from dataclasses import asdict, dataclass, fields, replace

from lexsum.centrality import DISTANCE_MODES, MEASURES
from lexsum.errors import ConfigError, MissingFile
from lexsum.features import FeatureWeights
from lexsum.lexnet import WSD_VARIANTS
from lexsum.lsa import CASE_SIGMA_VT, CASE_VT, GLOBAL_SCHEMES, LOCAL_SCHEMES, MODELS
from lexsum.textcore import resolve_budget

FAMILIES = ('features', 'lsa', 'lexnet', 'ilp')
REDUNDANCY_SOURCES = ('lexnet', 'cosine')

# Diversity threshold per method family when none is given
DEFAULT_THETA = {
    'features': 0.1,
    'lsa': 0.4,
    'lexnet': 0.10,
    'ilp': None,
}


@dataclass(frozen=True)
class RunConfig:
    method: str = 'lsa:lsass'
    length: str = '100'
    theta: float | None = None
    rank: int | None = None
    scheme: str = 'tf,idf'
    case: str = CASE_SIGMA_VT
    wsd: str = 'simple'
    centrality: str = 'subgraph'
    alpha: float = 0.9
    beta: float | None = None
    damping: float = 0.85
    distance: str = 'hops'
    weights: str = '1,1,1,1,1'
    log_base: float = 10.0
    centroid_threshold: float | None = None
    relevance: str = 'subgraph'
    redundancy: str = 'lexnet'
    redundancy_scale: float = 1.0
    node_limit: int = 2_000_000
    wordnet: str | None = None
    validate_wordnet: bool = True
    gloss_examples: bool = False
    sentiment_lexicon: str | None = None
    stoplist: str | None = None
    by_lines: bool = False
    metrics: str | None = None
    limit_words: int | None = 100
    skip_gap: int | None = None
    ci: bool = True
    resamples: int = 1000
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        family = self.family
        if family not in FAMILIES:
            raise ConfigError(f'Unknown method {self.method!r} (expected features, lsa:<model>, lexnet or ilp)')
        if family == 'lsa' and self.lsa_model not in MODELS:
            raise ConfigError(f'Unknown LSA model {self.lsa_model!r} (expected one of {", ".join(MODELS)})')
        if family != 'lsa' and ':' in self.method:
            raise ConfigError(f'Method {family} takes no model suffix (got {self.method!r})')
        resolve_budget(self.length, 1)
        if self.theta is not None and not 0.0 <= self.theta <= 1.0:
            raise ConfigError(f'theta must be in [0, 1] (got {self.theta})')
        if self.rank is not None and self.rank < 1:
            raise ConfigError(f'rank must be at least 1 (got {self.rank})')
        local, global_ = self.scheme_pair
        if local not in LOCAL_SCHEMES or global_ not in GLOBAL_SCHEMES:
            raise ConfigError(f'Invalid scheme {self.scheme!r} (local: {", ".join(LOCAL_SCHEMES)}; '
                              f'global: {", ".join(GLOBAL_SCHEMES)})')
        if self.case not in (CASE_VT, CASE_SIGMA_VT):
            raise ConfigError(f'case must be {CASE_VT} or {CASE_SIGMA_VT} (got {self.case!r})')
        if self.wsd not in WSD_VARIANTS:
            raise ConfigError(f'wsd must be one of {", ".join(WSD_VARIANTS)} (got {self.wsd!r})')
        if self.centrality not in MEASURES:
            raise ConfigError(f'centrality must be one of {", ".join(MEASURES)} (got {self.centrality!r})')
        for measure in self.relevance_measures:
            if measure not in MEASURES:
                raise ConfigError(f'Unknown relevance measure {measure!r} in {self.relevance!r}')
        if self.redundancy not in REDUNDANCY_SOURCES:
            raise ConfigError(f'redundancy must be lexnet or cosine (got {self.redundancy!r})')
        if self.redundancy_scale < 0:
            raise ConfigError(f'redundancy_scale must be non-negative (got {self.redundancy_scale})')
        if not 0.0 < self.damping < 1.0:
            raise ConfigError(f'damping must be in (0, 1) (got {self.damping})')
        if self.distance not in DISTANCE_MODES:
            raise ConfigError(f'distance must be hops or inverse (got {self.distance!r})')
        if self.log_base <= 1 or not math.isfinite(self.log_base):
            raise ConfigError(f'log_base must exceed 1 (got {self.log_base})')
        FeatureWeights.parse(self.weights)
        if self.limit_words is not None and self.limit_words < 1:
            raise ConfigError(f'limit_words must be positive (got {self.limit_words})')
        if self.skip_gap is not None and self.skip_gap < 0:
            raise ConfigError(f'skip_gap must be non-negative (got {self.skip_gap})')
        if self.resamples < 1:
            raise ConfigError(f'resamples must be positive (got {self.resamples})')
        if self.workers < 1:
            raise ConfigError(f'workers must be at least 1 (got {self.workers})')
        if self.node_limit < 1:
            raise ConfigError(f'node_limit must be at least 1 (got {self.node_limit})')

    @property
    def family(self) -> str:
        return self.method.split(':', 1)[0].strip().lower()

    @property
    def lsa_model(self) -> str | None:
        if ':' not in self.method:
            return 'lsass' if self.family == 'lsa' else None
        return self.method.split(':', 1)[1].strip().lower()

    @property
    def scheme_pair(self) -> tuple:
        parts = [p.strip().lower() for p in self.scheme.split(',')]
        if len(parts) != 2:
            raise ConfigError(f'scheme must be "local,global" (got {self.scheme!r})')
        return parts[0], parts[1]

    @property
    def effective_theta(self) -> float | None:
        return DEFAULT_THETA[self.family] if self.theta is None else self.theta

    @property
    def relevance_measures(self) -> list[str]:
        text = self.relevance.strip().lower()
        if text.startswith('hybrid:'):
            return [m.strip() for m in text[len('hybrid:'):].split('+') if m.strip()]
        return [text]

    @property
    def feature_weights(self) -> FeatureWeights:
        return FeatureWeights.parse(self.weights)

    @property
    def needs_wordnet(self) -> bool:
        return self.family in ('lexnet', 'ilp')

    def as_dict(self) -> dict:
        return asdict(self)


_OPTIONAL = {'theta', 'rank', 'beta', 'centroid_threshold', 'wordnet', 'sentiment_lexicon',
             'stoplist', 'metrics', 'limit_words', 'skip_gap'}
_FLOATS = {'theta', 'alpha', 'beta', 'damping', 'log_base', 'centroid_threshold', 'redundancy_scale'}
_INTS = {'rank', 'node_limit', 'limit_words', 'skip_gap', 'resamples', 'seed', 'workers'}
_BOOLS = {'validate_wordnet', 'gloss_examples', 'by_lines', 'ci'}
_TRUE = {'1', 'true', 'yes', 'on'}
_FALSE = {'0', 'false', 'no', 'off'}

FIELD_NAMES = tuple(f.name for f in fields(RunConfig))


def normalize_key(key: str) -> str:
    return key.strip().lower().replace('-', '_')


def convert_value(key: str, value, line=None):
    """Convert a raw string to the type of RunConfig field ``key``."""
    where = f' (line {line})' if line is not None else ''
    if not isinstance(value, str):
        return value
    text = value.strip()
    if key in _OPTIONAL and text.lower() in ('', 'none', 'off') and key not in _BOOLS:
        return None
    try:
        if key in _FLOATS:
            return float(text)
        if key in _INTS:
            return int(text)
    except ValueError:
        raise ConfigError(f'Invalid value for {key}{where}: {value!r}') from None
    if key in _BOOLS:
        lowered = text.lower()
        if lowered in _TRUE:
            return True
        if lowered in _FALSE:
            return False
        raise ConfigError(f'Invalid boolean for {key}{where}: {value!r}')
    return text


def load_config_file(path) -> dict:
    """Parse a ``key = value`` file into typed values; unknown keys are rejected."""
    if not os.path.isfile(path):
        raise MissingFile(f'Config file not found: {path}')
    values = {}
    with open(path, 'r', encoding='utf-8') as f:
        for lineno, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith('#'):
                continue
            if '=' not in stripped:
                raise ConfigError(f'{path}, line {lineno}: expected "key = value"')
            key, value = stripped.split('=', 1)
            key = normalize_key(key)
            if key not in FIELD_NAMES:
                raise ConfigError(f'{path}, line {lineno}: unknown key {key!r}')
            values[key] = convert_value(key, value, lineno)
    return values


def build_config(path=None, overrides: dict | None = None) -> RunConfig:
    """File values first, then non-None ``overrides`` (command-line flags)."""
    values = load_config_file(path) if path else {}
    for key, value in (overrides or {}).items():
        key = normalize_key(key)
        if key not in FIELD_NAMES:
            raise ConfigError(f'Unknown configuration key {key!r}')
        if value is not None:
            values[key] = convert_value(key, value)
    if 'length' in values and values['length'] is not None:
        values['length'] = str(values['length'])
    return RunConfig(**values)


def with_overrides(cfg: RunConfig, **changes) -> RunConfig:
    return replace(cfg, **{normalize_key(k): convert_value(normalize_key(k), v)
                           for k, v in changes.items() if v is not None})
