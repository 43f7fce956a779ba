# -*- coding: utf-8 -*-
"""
Model constants
===============
ثابت‌های مدل: λ_r و η_r

λ_r is the largest root of 1 - λ = exp(-rλ): the giant SCC fraction of
D(n, r) and the survival probability of a Poisson(r) Galton-Watson tree.
η_r = 1 / (log_r (1 - λ_r)^-1 - 1) = log r / (λ_r r - log r).
"""

import math
from dataclasses import dataclass
from typing import Iterable

import pandas as pd
from scipy import optimize

from utils.validators import ValidationError, Validator
import logging

logger = logging.getLogger(__name__)

ROOT_RESIDUAL = 1e-13
ETA_AGREEMENT = 1e-10
# exp(-r) underflows beyond this
MAX_R = 700


@dataclass(frozen=True)
class ModelConstants:
    r: int
    lambda_r: float
    eta_r: float
    extinction: float
    residual: float
    eta_alt: float

    @property
    def survival(self) -> float:
        return self.lambda_r

    @property
    def diameter_constant(self) -> float:
        """1 + η_r"""
        return 1.0 + self.eta_r

    @property
    def tail_rate(self) -> float:
        """r (1 - λ_r), the geometric decay rate of P(0 < |T_k| < ω)"""
        return self.r * self.extinction


def _extinction_fixed_point(r: int, mu: float) -> float:
    """Polish μ = 1 - λ on μ = exp(-r(1 - μ)); the map contracts near the root (slope rμ < 1)"""
    for _ in range(200):
        updated = math.exp(-r * (1.0 - mu))
        if updated == mu:
            break
        mu = updated
    return mu


def solve_constants(r: int) -> ModelConstants:
    """
    Bisection for the extinction probability μ = 1 - λ_r on [0, 1/2], then η_r
    by both formulas. μ is the small root of μ = exp(-r(1 - μ)), about e^-r for
    large r.
    """
    r = Validator.validate_integer(r, max_val=MAX_R, field_name='r')
    if r < 2:
        raise ValidationError(f"r must be >= 2 (got {r}): for r = 1 the only root is λ = 0")

    def g(mu):
        return mu - math.exp(-r * (1.0 - mu))

    # g(0) = -e^-r < 0 < g(1/2) for every r >= 2
    mu = optimize.bisect(g, 0.0, 0.5, xtol=1e-300, maxiter=2000)
    mu = _extinction_fixed_point(r, mu)
    lam = 1.0 - mu

    residual = abs(mu - math.exp(-r * (1.0 - mu)))
    if residual > ROOT_RESIDUAL:
        logger.warning(f"λ_{r} residual {residual:.3e} above {ROOT_RESIDUAL}")

    log_r = math.log(r)
    # -log μ equals rλ at the root; written via μ it stays accurate when λ rounds to 1
    eta = 1.0 / ((-math.log(mu)) / log_r - 1.0)
    eta_alt = log_r / (lam * r - log_r)
    if abs(eta - eta_alt) > ETA_AGREEMENT:
        logger.warning(f"η_{r} formulas disagree: {eta!r} vs {eta_alt!r}")

    return ModelConstants(r=r, lambda_r=lam, eta_r=eta, extinction=mu, residual=residual, eta_alt=eta_alt)


def constants_table(rs: Iterable[int]) -> pd.DataFrame:
    """Rows r, lambda, eta"""
    rows = []
    for r in rs:
        c = solve_constants(r)
        rows.append({'r': c.r, 'lambda': c.lambda_r, 'eta': c.eta_r})
    return pd.DataFrame(rows, columns=['r', 'lambda', 'eta'])
