# -*- coding: utf-8 -*-
"""
iBFS neighbourhoods versus Galton-Watson trees
==============================================
مقایسه درخت iBFS گراف تصادفی با درخت گالتون-واتسون

A depth-k tree shape is encoded as the child counts of the vertices at
depth < k, listed in BFS order. Two plane trees have the same shape exactly
when these sequences are equal.
"""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import stats

from exploration.bfs import BfsResult, ibfs
from graph_core.digraph import as_seed, generate
from utils.stats import empirical_law, tv_distance, tv_to_discrete
from utils.validators import Validator
import logging

logger = logging.getLogger(__name__)

# shapes with more vertices than this share one bucket
DEFAULT_SHAPE_CAP = 64
LUMP = ('lump',)


def bfs_shape(search: BfsResult, k: int, size_cap: int = DEFAULT_SHAPE_CAP) -> Tuple:
    """Child-count sequence of the BFS tree truncated at depth k"""
    if search.offsets[min(k + 1, search.offsets.size - 1)] > size_cap:
        return LUMP
    inner = search.order[:search.offsets[min(k, search.offsets.size - 1)]]
    if not inner.size:
        return ()
    position = {int(u): i for i, u in enumerate(inner)}
    counts = [0] * inner.size
    children = search.order[1:search.offsets[min(k + 1, search.offsets.size - 1)]]
    for w in children:
        counts[position[int(search.parent[w])]] += 1
    return tuple(counts)


def gw_shape(r: int, k: int, rng: np.random.Generator, size_cap: int = DEFAULT_SHAPE_CAP) -> Tuple:
    """Child-count sequence of a Poisson(r) GW tree truncated at depth k"""
    shape = []
    current, total = 1, 1
    for _ in range(k):
        counts = rng.poisson(r, size=current)
        shape.extend(int(c) for c in counts)
        current = int(counts.sum())
        total += current
        if total > size_cap:
            return LUMP
        if not current:
            break
    return tuple(shape)


@dataclass(frozen=True)
class CouplingEstimate:
    n: int
    r: int
    k: int
    trials: int
    tv: float
    distinct_shapes: int
    lumped_graph: float
    lumped_tree: float


def coupling_tv(n: int, r: int, k: int, trials: int, seed, size_cap: int = DEFAULT_SHAPE_CAP) -> CouplingEstimate:
    """
    Empirical TV between T_{<=k}^-(D(n, r), v) shapes and Poisson(r) GW shapes

    Each graph trial draws a fresh D(n, r) and explores the in-neighbourhood
    of vertex 0 (all vertices are exchangeable).
    """
    n = Validator.validate_positive_integer(n, 'n')
    r = Validator.validate_positive_integer(r, 'r')
    k = Validator.validate_non_negative_integer(k, 'k')
    trials = Validator.validate_positive_integer(trials, 'trials')
    seed = as_seed(seed)

    graph_shapes = []
    for t in range(trials):
        g = generate(n, r, seed.derive(0, t))
        graph_shapes.append(bfs_shape(ibfs(g, 0, max_depth=k), k, size_cap))

    rng = seed.derive(1).generator()
    tree_shapes = [gw_shape(r, k, rng, size_cap) for _ in range(trials)]

    graph_law = empirical_law(graph_shapes)
    tree_law = empirical_law(tree_shapes)
    tv = tv_distance(graph_law, tree_law)
    logger.debug(f"coupling n={n} r={r} k={k}: tv={tv:.4f} over {trials} trials")
    return CouplingEstimate(
        n=n, r=r, k=k, trials=trials, tv=tv,
        distinct_shapes=len(set(graph_law) | set(tree_law)),
        lumped_graph=graph_law.get(LUMP, 0.0),
        lumped_tree=tree_law.get(LUMP, 0.0),
    )


@dataclass(frozen=True)
class LayerMarginal:
    """d_1^-(v) against Poisson(r) and against its exact binomial law"""
    n: int
    r: int
    trials: int
    tv_poisson: float
    tv_binomial: float
    mean: float


def first_layer_law(n: int, r: int):
    """Exact law of d_1^-(v): each u != v points at v with probability 1 - (1 - 1/n)^r"""
    return stats.binom(n - 1, -math.expm1(r * math.log1p(-1.0 / n)))


def layer_marginal_tv(n: int, r: int, trials: int, seed) -> LayerMarginal:
    n = Validator.validate_integer(n, min_val=2, field_name='n')
    r = Validator.validate_positive_integer(r, 'r')
    trials = Validator.validate_positive_integer(trials, 'trials')
    seed = as_seed(seed)

    samples = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        g = generate(n, r, seed.derive(t))
        samples[t] = np.count_nonzero((g.heads2d[1:] == 0).any(axis=1))

    return LayerMarginal(
        n=n, r=r, trials=trials,
        tv_poisson=tv_to_discrete(samples, stats.poisson(r)),
        tv_binomial=tv_to_discrete(samples, first_layer_law(n, r)),
        mean=float(samples.mean()),
    )
