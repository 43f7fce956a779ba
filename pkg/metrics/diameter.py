# -*- coding: utf-8 -*-
"""
Diameter and typical distance
=============================
قطر گراف (روی فاصله‌های متناهی) و فاصله نوعی

diam(D) = max{dist(u, v) : dist(u, v) < inf}, computed exactly with one
outward BFS per source. Sources are split into chunks and run on a process
pool; the reduction is a max with a lexicographic witness, so the result
does not depend on scheduling.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from config.settings import WORKERS
from exploration.bfs import OUT, iter_layers
from graph_core.digraph import Digraph, as_seed
from utils.validators import ValidationError, Validator
import logging

logger = logging.getLogger(__name__)

# below this many sources the pool start-up costs more than it saves
PARALLEL_MIN_SOURCES = 4096


@dataclass(frozen=True)
class DiameterReport:
    value: int
    witness: Tuple[int, int]
    n: int
    r: int
    restricted_to: Optional[Tuple[int, ...]] = None

    @property
    def normalized(self) -> float:
        """value / log_r n"""
        if self.n < 2 or self.r < 2:
            return math.nan
        return self.value / math.log(self.n, self.r)

    def to_json(self) -> dict:
        return {
            'diam': self.value,
            'witness': [self.witness[0] + 1, self.witness[1] + 1],
            'normalized': self.normalized,
            'restricted_size': None if self.restricted_to is None else len(self.restricted_to),
        }


def trivial_lower_bound(n: int, r: int) -> int:
    """ceil(log_r(n - 1)), the standard lower bound on diam(D(n, r))"""
    if n < 2 or r < 2:
        return 0
    bound, reach = 0, 1
    # exact integer ceil(log_r(n - 1))
    while reach < n - 1:
        reach *= r
        bound += 1
    return bound


def eccentricity(g: Digraph, u: int, within: Optional[np.ndarray] = None) -> Tuple[int, int]:
    """(largest finite distance from u, smallest vertex attaining it)"""
    depth, last = 0, None
    for depth, layer in enumerate(iter_layers(g, [u], OUT, within)):
        last = layer
    return depth, int(last[0])


def _eccentricity_chunk(args):
    g, sources, within = args
    best = (-1, 0, 0)
    for u in sources:
        ecc, far = eccentricity(g, int(u), within)
        if ecc > best[0]:
            best = (ecc, int(u), far)
    return best


def _chunks(sources: np.ndarray, parts: int):
    return [chunk for chunk in np.array_split(sources, parts) if chunk.size]


def _max_eccentricity(g: Digraph, sources: np.ndarray, within, workers) -> Tuple[int, int, int]:
    workers = WORKERS if workers is None else workers
    if workers > 1 and sources.size >= PARALLEL_MIN_SOURCES:
        jobs = [(g, chunk, within) for chunk in _chunks(sources, workers * 8)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_eccentricity_chunk, jobs))
    else:
        results = [_eccentricity_chunk((g, sources, within))]

    # chunks are in source order, so the first maximum has the smallest source
    value = max(res[0] for res in results)
    return next(res for res in results if res[0] == value)


def diameter(g: Digraph, workers: Optional[int] = None) -> DiameterReport:
    """Exact diameter of D over finite distances"""
    value, u, v = _max_eccentricity(g, np.arange(g.n), None, workers)
    logger.debug(f"diam={value} witness=({u}, {v}) on {g!r}")
    return DiameterReport(value=value, witness=(u, v), n=g.n, r=g.r)


def diameter_restricted(g: Digraph, s, workers: Optional[int] = None) -> DiameterReport:
    """Diameter of the induced subgraph D[s]"""
    vertices = np.unique(np.asarray(s, dtype=np.int64).reshape(-1))
    if not vertices.size:
        raise ValidationError("vertex set s must be nonempty")
    if vertices[0] < 0 or vertices[-1] >= g.n:
        raise ValidationError("vertex set s contains ids outside 0..n-1")
    within = np.zeros(g.n, dtype=bool)
    within[vertices] = True
    value, u, v = _max_eccentricity(g, vertices, within, workers)
    return DiameterReport(
        value=value, witness=(u, v), n=g.n, r=g.r,
        restricted_to=tuple(int(x) for x in vertices),
    )


def sample_distance(g: Digraph, u: int, v: int):
    """dist(u, v) via a BFS from u that stops once v is found; math.inf if unreachable"""
    Validator.validate_vertex(u, g.n, 'u')
    Validator.validate_vertex(v, g.n, 'v')
    for k, layer in enumerate(iter_layers(g, [u], OUT)):
        position = np.searchsorted(layer, v)
        if position < layer.size and layer[position] == v:
            return k
    return math.inf


def typical_distances(g: Digraph, pairs: int, seed, targets=None) -> np.ndarray:
    """
    Distances between `pairs` random (u, v) pairs

    u is uniform over all vertices, v uniform over `targets` (default: all).
    Unreachable pairs give inf.
    """
    pairs = Validator.validate_positive_integer(pairs, 'pairs')
    rng = as_seed(seed).generator()
    pool = np.arange(g.n) if targets is None else np.asarray(targets, dtype=np.int64)
    sources = rng.integers(0, g.n, size=pairs)
    sinks = pool[rng.integers(0, pool.size, size=pairs)]
    return np.array([sample_distance(g, int(u), int(v)) for u, v in zip(sources, sinks)], dtype=float)
