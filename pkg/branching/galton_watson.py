# -*- coding: utf-8 -*-
"""
Poisson(r) Galton-Watson trees
==============================
درخت گالتون-واتسون پواسون: نمونه‌گیری، احتمال انقراض و احتمال دُم

Every individual has an independent Poisson(r) number of children, so a
generation of size m has Poisson(r m) children in total; sampling draws the
generation total directly. numpy draws Poisson variates by inversion below
mean 10 and by transformed rejection (PTRS) above.

Population is bounded by pop_cap: a tree whose generation exceeds the cap
stops growing, is flagged truncated and counts as surviving.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from config.settings import GW_POP_CAP
from graph_core.digraph import as_seed
from utils.stats import proportion
from utils.validators import ValidationError, Validator
import logging

logger = logging.getLogger(__name__)

# exact recursion keeps sizes up to omega * TAIL_SAFETY and lumps the rest
TAIL_SAFETY = 8
EXACT_STATE_LIMIT = 4096


@dataclass(frozen=True)
class GwSample:
    """|T_0|, ..., |T_K| of one tree"""
    generation_sizes: Tuple[int, ...]
    truncated: bool

    @property
    def extinct(self) -> bool:
        return self.generation_sizes[-1] == 0

    @property
    def total(self) -> int:
        return sum(self.generation_sizes)


def gw_sample(r: int, kmax: int, pop_cap: Optional[int] = None, seed=0) -> GwSample:
    """
    One tree up to generation kmax

    truncated is set when the tree is still alive at kmax or a generation
    exceeded pop_cap (sizes stop at that generation).
    """
    r = Validator.validate_positive_integer(r, 'r')
    kmax = Validator.validate_non_negative_integer(kmax, 'kmax')
    pop_cap = GW_POP_CAP if pop_cap is None else Validator.validate_positive_integer(pop_cap, 'pop_cap')
    rng = as_seed(seed).generator()

    sizes = [1]
    for _ in range(kmax):
        current = sizes[-1]
        if current > pop_cap:
            logger.debug(f"GW tree truncated at generation {len(sizes) - 1} with {current} individuals")
            return GwSample(generation_sizes=tuple(sizes), truncated=True)
        sizes.append(int(rng.poisson(r * current)) if current else 0)
    return GwSample(generation_sizes=tuple(sizes), truncated=sizes[-1] > 0)


def gw_generation_sizes(r: int, kmax: int, trials: int, seed, pop_cap: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Batch of independent trees: (sizes[trials, kmax + 1], truncated[trials])

    Rows that exceed pop_cap are frozen at their last size from then on.
    """
    r = Validator.validate_positive_integer(r, 'r')
    kmax = Validator.validate_non_negative_integer(kmax, 'kmax')
    trials = Validator.validate_positive_integer(trials, 'trials')
    pop_cap = GW_POP_CAP if pop_cap is None else Validator.validate_positive_integer(pop_cap, 'pop_cap')
    rng = as_seed(seed).generator()

    sizes = np.zeros((trials, kmax + 1), dtype=np.int64)
    sizes[:, 0] = 1
    truncated = np.zeros(trials, dtype=bool)
    current = sizes[:, 0].copy()
    for k in range(1, kmax + 1):
        truncated |= current > pop_cap
        growing = ~truncated & (current > 0)
        current[growing] = rng.poisson(r * current[growing])
        sizes[:, k] = current

    if truncated.any():
        logger.warning(f"{int(truncated.sum())} of {trials} GW trees hit pop_cap={pop_cap}")
    return sizes, truncated


def gw_extinction_frequency(r: int, depth: int, trials: int, seed) -> Tuple[float, float]:
    """Fraction (and stderr) of trees with |T_depth| = 0"""
    sizes, _ = gw_generation_sizes(r, depth, trials, seed)
    return proportion(int(np.count_nonzero(sizes[:, -1] == 0)), trials)


@dataclass(frozen=True)
class TailEstimate:
    """P(0 < |T_k| < omega): Monte Carlo with stderr, plus the recursion value when small enough"""
    r: int
    k: int
    omega: int
    trials: int
    estimate: float
    stderr: float
    exact: Optional[float] = None

    def to_row(self) -> dict:
        return {
            'r': self.r, 'k': self.k, 'omega': self.omega, 'trials': self.trials,
            'estimate': self.estimate, 'stderr': self.stderr,
        }


def gw_tail_exact(r: int, k: int, omega: int, safety: int = TAIL_SAFETY) -> float:
    """
    P(0 < |T_k| < omega) by recursion over generation-size laws

    Given |T_j| = m, |T_{j+1}| ~ Poisson(r m). Sizes 0..M (M = omega * safety)
    are tracked exactly; mass above M goes to an absorbing lump state.
    """
    r = Validator.validate_positive_integer(r, 'r')
    k = Validator.validate_non_negative_integer(k, 'k')
    omega = Validator.validate_positive_integer(omega, 'omega')
    if omega == 1:
        return 0.0
    top = omega * safety
    if top > EXACT_STATE_LIMIT:
        raise ValidationError(f"omega={omega} too large for the exact recursion (state limit {EXACT_STATE_LIMIT})")

    states = np.arange(top + 1)
    transition = np.zeros((top + 2, top + 2))
    transition[0, 0] = 1.0
    means = r * states[1:, None]
    transition[1:top + 1, :top + 1] = stats.poisson.pmf(states[None, :], means)
    transition[1:top + 1, top + 1] = stats.poisson.sf(top, r * states[1:])
    transition[top + 1, top + 1] = 1.0

    law = np.zeros(top + 2)
    law[1] = 1.0
    for _ in range(k):
        law = law @ transition
    return float(law[1:omega].sum())


def gw_tail_prob(r: int, k: int, omega: int, trials: int, seed, exact: bool = True) -> TailEstimate:
    """Monte Carlo frequency of {0 < |T_k| < omega}, with the exact value attached when feasible"""
    omega = Validator.validate_positive_integer(omega, 'omega')
    sizes, _ = gw_generation_sizes(r, k, trials, seed)
    last = sizes[:, -1]
    estimate, stderr = proportion(int(np.count_nonzero((last > 0) & (last < omega))), trials)

    exact_value = None
    if exact and omega * TAIL_SAFETY <= EXACT_STATE_LIMIT:
        exact_value = gw_tail_exact(r, k, omega)
    return TailEstimate(r=int(r), k=int(k), omega=omega, trials=int(trials),
                        estimate=estimate, stderr=stderr, exact=exact_value)


def tail_decay_ratios(r: int, ks: Iterable[int], omega: int, trials: Optional[int] = None,
                      seed=0) -> pd.DataFrame:
    """
    Rows k, tail, ratio with ratio = P(0<|T_{k+1}|<omega) / P(0<|T_k|<omega)

    Uses the exact recursion unless `trials` is given. The ratio tends to
    r (1 - λ_r).
    """
    rows = []
    for k in ks:
        if trials is None:
            now, after = gw_tail_exact(r, k, omega), gw_tail_exact(r, k + 1, omega)
        else:
            now = gw_tail_prob(r, k, omega, trials, as_seed(seed).derive(k), exact=False).estimate
            after = gw_tail_prob(r, k + 1, omega, trials, as_seed(seed).derive(k + 1), exact=False).estimate
        ratio = after / now if now > 0 else math.nan
        rows.append({'k': int(k), 'tail': now, 'ratio': ratio})
    return pd.DataFrame(rows, columns=['k', 'tail', 'ratio'])
