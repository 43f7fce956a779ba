# -*- coding: utf-8 -*-
"""
Deterministic bounds on π
=========================
بررسی نامساوی‌های قطعی روی توزیع ایستا

  - maze bound: π(v) · r^h · P_v(escape) <= 1 for an h-hard maze around v
  - diameter bound: π_min >= 1 / (1 + d r^d) when D0 is ergodic with diameter <= d
"""

from dataclasses import dataclass, field

from stationary.maze import EscapeProbability, MazeHardness
from stationary.solvers import StationaryProfile
from utils.errors import BoundViolationError
from utils.validators import ValidationError
import logging

logger = logging.getLogger(__name__)

MAZE_BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class BoundReport:
    name: str
    holds: bool
    lhs: float
    rhs: float
    details: dict = field(default_factory=dict)

    @property
    def margin(self) -> float:
        """rhs - lhs for upper bounds, lhs - rhs for lower bounds (>= 0 when the bound holds)"""
        return self.details.get('margin', self.rhs - self.lhs)


def finish_report(report: BoundReport, strict: bool) -> BoundReport:
    if not report.holds:
        logger.error(f"Bound violated: {report.name} lhs={report.lhs!r} rhs={report.rhs!r} {report.details}")
        if strict:
            raise BoundViolationError(f"{report.name} violated: lhs={report.lhs!r}, rhs={report.rhs!r}")
    return report


def validate_pimax_bound(profile: StationaryProfile, hardness: MazeHardness, escape: EscapeProbability,
                         strict: bool = False) -> BoundReport:
    """Checks π(v) · r^h · escape <= 1 + 1e-9"""
    if (hardness.center, hardness.depth) != (escape.center, escape.depth):
        raise ValidationError("hardness and escape must be computed for the same (v, k)")

    v = hardness.center
    lhs = profile.pi_of(v) * float(profile.r) ** hardness.hardness * escape.value
    report = BoundReport(
        name='maze',
        holds=lhs <= 1.0 + MAZE_BOUND_SLACK,
        lhs=lhs,
        rhs=1.0,
        details={'vertex': v, 'k': hardness.depth, 'h': hardness.hardness, 'escape': escape.value},
    )
    return finish_report(report, strict)


def pimin_lower_bound(d: int, r: int) -> float:
    """1 / (1 + d r^d), exact integer denominator"""
    return 1 / (1 + int(d) * int(r) ** int(d))


def validate_pimin_bound(profile: StationaryProfile, d: int, r: int = None, strict: bool = False) -> BoundReport:
    """Checks π_min >= 1 / (1 + d r^d) up to the solver residual"""
    r = profile.r if r is None else r
    bound = pimin_lower_bound(d, r)
    slack = max(profile.residual, 1e-15)
    report = BoundReport(
        name='diameter',
        holds=profile.pi_min + slack >= bound,
        lhs=profile.pi_min,
        rhs=bound,
        details={'d': int(d), 'r': int(r), 'margin': profile.pi_min - bound},
    )
    return finish_report(report, strict)
