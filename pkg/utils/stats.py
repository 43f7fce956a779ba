# -*- coding: utf-8 -*-
"""
Statistical helpers
ابزارهای آماری برای مقایسه توزیع‌ها
"""

import math
from collections import Counter
from typing import Hashable, Iterable, Mapping, Tuple

import numpy as np
from scipy import stats


def mean_and_stderr(values) -> Tuple[float, float]:
    values = np.asarray(values, dtype=float)
    if not values.size:
        return math.nan, math.nan
    stderr = float(values.std(ddof=1) / math.sqrt(values.size)) if values.size > 1 else math.nan
    return float(values.mean()), stderr


def proportion(hits: int, trials: int) -> Tuple[float, float]:
    """Bernoulli frequency with its standard error"""
    p = hits / trials
    return p, math.sqrt(p * (1.0 - p) / trials)


def within_se(estimate: float, target: float, stderr: float, z: float = 3.0) -> bool:
    return abs(estimate - target) <= z * stderr


def empirical_law(samples: Iterable[Hashable]) -> Mapping[Hashable, float]:
    counts = Counter(samples)
    total = sum(counts.values())
    return {key: c / total for key, c in counts.items()}


def tv_distance(p: Mapping[Hashable, float], q: Mapping[Hashable, float]) -> float:
    """Total variation between two finitely supported laws given as dicts"""
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(key, 0.0) - q.get(key, 0.0)) for key in keys)


def tv_to_discrete(samples, dist) -> float:
    """
    TV between the empirical law of integer samples and a scipy discrete law

    Mass the reference law puts outside the sampled range counts in full.
    """
    samples = np.asarray(samples, dtype=np.int64)
    top = int(max(samples.max(), dist.ppf(1.0 - 1e-12)))
    support = np.arange(top + 1)
    empirical = np.bincount(samples, minlength=top + 1) / samples.size
    reference = dist.pmf(support)
    return float(0.5 * (np.abs(empirical - reference).sum() + dist.sf(top)))


def discrete_ks(samples, dist, seed=None):
    """
    KS test of integer samples against a discrete law via the randomized
    probability integral transform U = F(x - 1) + V pmf(x), V ~ U(0, 1),
    which is exactly uniform under the null
    """
    samples = np.asarray(samples, dtype=np.int64)
    rng = np.random.default_rng(seed)
    u = dist.cdf(samples - 1) + rng.random(samples.size) * dist.pmf(samples)
    return stats.kstest(u, 'uniform')
