# -*- coding: utf-8 -*-
"""
Stationary distribution on D0
=============================
توزیع ایستای گام تصادفی ساده روی D0

The walk picks one of the r out-edges uniformly, so P(u, w) is the edge
multiplicity of u->w divided by r. D0 must be closed (no edge leaves it),
which holds whenever D0 is attractive.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

import numpy as np
from scipy import sparse

from config.settings import DIRECT_CAP, POWER_MAX_ITER, POWER_TOL, RETURN_STEP_BUDGET
from graph_core.digraph import Digraph, as_seed
from structure.scc import SccDecomposition
from utils.errors import AttractivityError, CapExceededError, RoutError, StepBudgetError
from utils.validators import ValidationError, Validator
import logging

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StationaryProfile:
    """π on the support (sorted vertex ids), with solver diagnostics"""
    n: int
    r: int
    support: np.ndarray
    pi: np.ndarray
    residual: float
    iterations: int
    converged: bool
    method: str

    @property
    def pi_max(self) -> float:
        return float(self.pi.max())

    @property
    def pi_min(self) -> float:
        return float(self.pi.min())

    @property
    def argmax(self) -> int:
        return int(self.support[np.argmax(self.pi)])

    @property
    def argmin(self) -> int:
        return int(self.support[np.argmin(self.pi)])

    @property
    def exp_max(self) -> float:
        """-log_n pi_max"""
        return -math.log(self.pi_max) / math.log(self.n) if self.n > 1 else math.nan

    @property
    def exp_min(self) -> float:
        """-log_n pi_min"""
        return -math.log(self.pi_min) / math.log(self.n) if self.n > 1 and self.pi_min > 0 else math.nan

    def pi_of(self, v: int) -> float:
        position = np.searchsorted(self.support, v)
        if position < self.support.size and self.support[position] == v:
            return float(self.pi[position])
        return 0.0

    def to_json(self, full: bool = False) -> dict:
        data = {
            'support_size': int(self.support.size),
            'pi_max': self.pi_max,
            'pi_min': self.pi_min,
            'argmax': self.argmax + 1,
            'argmin': self.argmin + 1,
            'exp_max': self.exp_max,
            'exp_min': self.exp_min,
            'residual': self.residual,
            'iters': self.iterations,
            'converged': self.converged,
            'method': self.method,
        }
        if full:
            data['pi'] = {int(v) + 1: float(p) for v, p in zip(self.support, self.pi)}
        return data


def _require_closed_support(g: Digraph, dec: SccDecomposition) -> np.ndarray:
    support = dec.d0_vertices
    members = dec.d0_mask
    if not members[g.heads2d[support]].all():
        raise AttractivityError("an edge leaves D0: the walk would exit the support")
    return support


def transition_row(g: Digraph, dec: SccDecomposition, v: int) -> Dict[int, Fraction]:
    """Exact transition probabilities out of v: multiplicity / r"""
    Validator.validate_vertex(v, g.n, 'v')
    if not dec.in_d0(v):
        raise ValidationError(f"vertex {v} is not in D0")
    row = {}
    for w in g.heads2d[v]:
        w = int(w)
        if not dec.in_d0(w):
            raise AttractivityError(f"edge {v}->{w} leaves D0")
        row[w] = row.get(w, Fraction(0)) + Fraction(1, g.r)
    return row


def transition_matrix(g: Digraph, support: np.ndarray) -> sparse.csr_matrix:
    """P restricted to a closed support, indexed by position in `support`"""
    index = np.full(g.n, -1, dtype=np.int64)
    index[support] = np.arange(support.size)
    heads = index[g.heads2d[support]].reshape(-1)
    if (heads < 0).any():
        raise AttractivityError("support is not closed under the walk")
    rows = np.repeat(np.arange(support.size), g.r)
    data = np.full(heads.size, 1.0 / g.r)
    matrix = sparse.csr_matrix((data, (rows, heads)), shape=(support.size, support.size))
    matrix.sum_duplicates()
    return matrix


def _residual(pi: np.ndarray, transposed: sparse.csr_matrix) -> float:
    return float(np.abs(transposed @ pi - pi).sum())


def stationary_power(g: Digraph, dec: SccDecomposition, tol: Optional[float] = None,
                     max_iter: Optional[int] = None) -> StationaryProfile:
    """
    Power iteration with the lazy operator (I + P) / 2

    Starts from uniform on D0 and stops once ||xP - x||_1 <= tol against the
    non-lazy P. The lazy step keeps π fixed and converges for periodic D0.
    Exhausting max_iter returns the last iterate with converged=False.
    """
    tol = POWER_TOL if tol is None else Validator.validate_positive_float(tol, 'tol')
    max_iter = POWER_MAX_ITER if max_iter is None else Validator.validate_positive_integer(max_iter, 'max_iter')

    support = _require_closed_support(g, dec)
    transposed = transition_matrix(g, support).T.tocsr()
    pi = np.full(support.size, 1.0 / support.size)

    converged = False
    iterations = 0
    residual = math.inf
    while iterations < max_iter:
        step = transposed @ pi
        residual = float(np.abs(step - pi).sum())
        if residual <= tol:
            converged = True
            break
        pi = 0.5 * (pi + step)
        pi /= pi.sum()
        iterations += 1

    if not converged:
        residual = _residual(pi, transposed)
        logger.warning(f"Power iteration did not converge: residual={residual:.3e} after {iterations} iterations")

    return StationaryProfile(
        n=g.n, r=g.r, support=support, pi=pi, residual=residual,
        iterations=iterations, converged=converged, method='power',
    )


def stationary_direct(g: Digraph, dec: SccDecomposition, cap: Optional[int] = None) -> StationaryProfile:
    """Dense solve of π(P - I) = 0, Σπ = 1 (one equation replaced by the normalisation)"""
    cap = DIRECT_CAP if cap is None else cap
    support = _require_closed_support(g, dec)
    if support.size > cap:
        raise CapExceededError('direct solve support', support.size, cap)

    transposed = transition_matrix(g, support).T.tocsr()
    system = transposed.toarray() - np.eye(support.size)
    system[-1, :] = 1.0
    rhs = np.zeros(support.size)
    rhs[-1] = 1.0
    try:
        pi = np.linalg.solve(system, rhs)
    except np.linalg.LinAlgError as e:
        # cannot happen for an irreducible P
        raise RoutError(f"singular stationary system on |D0|={support.size}: {e}")

    if pi.min() < -1e-12:
        raise RoutError(f"direct solve produced a negative entry {pi.min():.3e}")
    pi = np.clip(pi, 0.0, None)
    pi /= pi.sum()

    return StationaryProfile(
        n=g.n, r=g.r, support=support, pi=pi, residual=_residual(pi, transposed),
        iterations=0, converged=True, method='direct',
    )


def stationary(g: Digraph, dec: SccDecomposition, method: str = 'auto', **kwargs) -> StationaryProfile:
    """Direct solve below the cap, power iteration above it"""
    Validator.validate_choice(method, ('auto', 'power', 'direct'), 'method')
    if method == 'direct' or (method == 'auto' and dec.d0_size <= DIRECT_CAP):
        return stationary_direct(g, dec)
    return stationary_power(g, dec, **kwargs)


@dataclass(frozen=True)
class ReturnTimeEstimate:
    vertex: int
    mean: float
    stderr: float
    trials: int


def mean_return_time(g: Digraph, dec: SccDecomposition, v: int, trials: int, seed,
                     step_budget: Optional[int] = None) -> ReturnTimeEstimate:
    """
    Monte Carlo E_v[tau_v^+] for the non-lazy walk

    All trials advance together; each trial may take at most
    step_budget // trials steps.
    """
    Validator.validate_vertex(v, g.n, 'v')
    trials = Validator.validate_positive_integer(trials, 'trials')
    if not dec.in_d0(v):
        raise ValidationError(f"vertex {v} is not in D0")
    _require_closed_support(g, dec)

    step_budget = RETURN_STEP_BUDGET if step_budget is None else step_budget
    step_cap = max(1, step_budget // trials)

    rng = as_seed(seed).generator()
    heads = g.heads2d
    position = np.full(trials, v, dtype=np.int64)
    times = np.zeros(trials, dtype=np.int64)
    active = np.arange(trials)
    steps = 0

    while active.size:
        if steps >= step_cap:
            raise StepBudgetError(
                f"{active.size} of {trials} walks from {v} had not returned after {step_cap} steps"
            )
        symbols = rng.integers(0, g.r, size=active.size)
        position[active] = heads[position[active], symbols]
        steps += 1
        returned = position[active] == v
        times[active[returned]] = steps
        active = active[~returned]

    mean = float(times.mean())
    stderr = float(times.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.nan
    return ReturnTimeEstimate(vertex=int(v), mean=mean, stderr=stderr, trials=trials)
