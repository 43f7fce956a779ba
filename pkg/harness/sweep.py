# -*- coding: utf-8 -*-
"""
Monte Carlo sweep engine
========================
اجرای آزمایش‌های مونت‌کارلو روی شبکه‌ای از (n, r)

Every trial is reproducible on its own: its seed is derived from
(master seed, n, r, trial) with numpy's SeedSequence hashing, so any cell
can be re-run without the rest of the sweep. A failing measurement is
logged and stored in the record's `error` field; the sweep continues.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Dict, List, Optional, Sequence

import pandas as pd

from branching.constants import solve_constants
from branching.galton_watson import gw_extinction_frequency
from flags.detector import FlagParams, find_flags
from graph_core.digraph import Seed, generate, generate_simple
from harness.config import SweepConfig
from metrics.diameter import diameter, diameter_restricted
from stationary.solvers import stationary
from structure.scc import is_closed, scc_decompose
from utils.logging_config import PerformanceLogger
from utils.validators import ValidationError
import logging

logger = logging.getLogger(__name__)

STAGES = ('generate', 'scc', 'diam', 'stationary', 'flags', 'gw')


def _clean(value):
    """None for missing or non-finite numbers"""
    if value is None:
        return None
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _round12(value):
    if isinstance(value, float):
        return float(f"{value:.12g}")
    return value


@dataclass(frozen=True)
class TrialRecord:
    """One (n, r, trial) run; metrics that were not measured stay None"""
    n: int
    r: int
    seed: int
    trial: int
    scc_frac: Optional[float] = None
    d0_size: Optional[int] = None
    attractive: Optional[bool] = None
    period: Optional[int] = None
    diam: Optional[int] = None
    diam_d0: Optional[int] = None
    norm_diam: Optional[float] = None
    norm_diam_d0: Optional[float] = None
    pi_max: Optional[float] = None
    pi_min: Optional[float] = None
    exp_max: Optional[float] = None
    exp_min: Optional[float] = None
    residual: Optional[float] = None
    iters: Optional[int] = None
    flag_count: Optional[int] = None
    gw_survival: Optional[float] = None
    error: Optional[str] = None
    timings: Dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def key(self):
        return self.n, self.r, self.trial

    def rounded(self) -> 'TrialRecord':
        """Copy with every float cut to 12 significant digits (the emitted precision)"""
        values = {f.name: _round12(getattr(self, f.name)) for f in fields(self) if f.name != 'timings'}
        return TrialRecord(**values, timings=dict(self.timings))

    def to_row(self, timings: bool = False) -> dict:
        row = asdict(self)
        row.pop('timings')
        if row['attractive'] is not None:
            row['attractive'] = int(row['attractive'])
        if timings:
            for stage in STAGES:
                row[f't_{stage}_ms'] = self.timings.get(stage)
        return row


COLUMNS = tuple(f.name for f in fields(TrialRecord) if f.name != 'timings')
TIMING_COLUMNS = tuple(f't_{stage}_ms' for stage in STAGES)


def trial_seed(master: int, n: int, r: int, trial: int) -> Seed:
    """Seed of one trial: SeedSequence(master, spawn_key=(n, r, trial))"""
    return Seed(master).derive(n, r, trial)


def run_trial(cfg: SweepConfig, n: int, r: int, trial: int) -> TrialRecord:
    seed = trial_seed(cfg.seed, n, r, trial)
    perf = PerformanceLogger()
    metrics = {}
    error = None
    try:
        with perf.stage('generate'):
            g = generate_simple(n, r, seed) if cfg.simple else generate(n, r, seed)

        dec = None
        if {'scc', 'stationary', 'flags', 'diam'} & set(cfg.measurements):
            with perf.stage('scc'):
                dec = scc_decompose(g)
            if 'scc' in cfg.measurements:
                metrics.update(scc_frac=dec.d0_fraction, d0_size=dec.d0_size,
                               attractive=dec.attractive, period=dec.period)

        if 'diam' in cfg.measurements:
            with perf.stage('diam'):
                whole = diameter(g, workers=1)
                inner = diameter_restricted(g, dec.d0_vertices, workers=1)
            metrics.update(diam=whole.value, norm_diam=whole.normalized,
                           diam_d0=inner.value, norm_diam_d0=inner.normalized)

        if 'stationary' in cfg.measurements and is_closed(g, dec):
            with perf.stage('stationary'):
                profile = stationary(g, dec, tol=cfg.tol, max_iter=cfg.max_iter)
            metrics.update(pi_max=profile.pi_max, pi_min=profile.pi_min, exp_max=profile.exp_max,
                           exp_min=profile.exp_min, residual=profile.residual, iters=profile.iterations)

        if 'flags' in cfg.measurements:
            with perf.stage('flags'):
                params = FlagParams.for_graph(n, r, cfg.eps, cfg.threshold, cfg.size_cap)
                metrics['flag_count'] = len(find_flags(g, params, dec, workers=1))

        if 'gw' in cfg.measurements:
            with perf.stage('gw'):
                extinct, _ = gw_extinction_frequency(r, cfg.gw_depth, cfg.gw_trials, seed.derive(2))
            metrics['gw_survival'] = 1.0 - extinct

    except Exception as e:
        error = f"{type(e).__name__}: {e}"
        logger.error(f"Trial n={n} r={r} trial={trial} failed: {error}", exc_info=True)

    metrics = {key: _clean(value) for key, value in metrics.items()}
    if metrics.get('attractive') is not None:
        metrics['attractive'] = bool(metrics['attractive'])
    return TrialRecord(n=n, r=r, seed=seed.value, trial=trial, error=error,
                       timings=dict(perf.timings), **metrics)


def _run_cell(args):
    cfg, n, r, trial = args
    return run_trial(cfg, n, r, trial)


def run_sweep(cfg: SweepConfig) -> List[TrialRecord]:
    """All (n, r, trial) records, sorted by (n, r, trial)"""
    jobs = [(cfg, n, r, t) for n in cfg.n_values for r in cfg.r_values for t in range(cfg.trials)]
    logger.info(f"Sweep: {len(jobs)} trials over n={list(cfg.n_values)} r={list(cfg.r_values)}")

    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_run_cell, jobs))
    else:
        records = [_run_cell(job) for job in jobs]

    failed = sum(1 for record in records if record.error)
    if failed:
        logger.warning(f"{failed} of {len(records)} trials recorded an error")
    return sorted(records, key=lambda record: record.key)


STATISTICS = {
    'scc_frac': 'lambda',
    'norm_diam': 'diam_ref',
    'exp_max': 'exp_max_ref',
    'exp_min': 'exp_min_ref',
}


def _references(r: int) -> dict:
    if r < 2:
        return {'lambda': math.nan, 'diam_ref': math.nan, 'exp_max_ref': 1.0, 'exp_min_ref': math.nan}
    constants = solve_constants(r)
    return {
        'lambda': constants.lambda_r,
        'diam_ref': constants.diameter_constant,
        'exp_max_ref': 1.0,
        'exp_min_ref': constants.diameter_constant,
    }


@dataclass(frozen=True, eq=False)
class ConstantsSummary:
    """
    cells: one row per (r, n) with mean / median / stderr of each statistic
    gaps: one row per r with the reference constants and mean - reference
    at the largest n
    """
    cells: pd.DataFrame
    gaps: pd.DataFrame


def estimate_constants(records: Sequence[TrialRecord]) -> ConstantsSummary:
    if not records:
        raise ValidationError("estimate_constants needs at least one record")
    frame = pd.DataFrame([record.to_row() for record in records])
    frame = frame[frame['error'].isna()] if 'error' in frame else frame
    if frame.empty:
        raise ValidationError("every record carries an error")
    frame = frame.astype({name: float for name in STATISTICS})

    for r, group in frame.groupby('r'):
        distinct = group['n'].nunique()
        if distinct < 2:
            raise ValidationError(f"r={r}: need records for at least 2 distinct n (got {distinct})")

    aggregated = frame.groupby(['r', 'n'])[list(STATISTICS)].agg(['mean', 'median', 'sem', 'count'])
    aggregated.columns = [f"{stat}_{how}" for stat, how in aggregated.columns]
    cells = aggregated.reset_index()

    gap_rows = []
    for r, group in cells.groupby('r'):
        largest = group.loc[group['n'].idxmax()]
        row = {'r': int(r), 'n': int(largest['n'])}
        refs = _references(int(r))
        row.update(refs)
        for stat, ref in STATISTICS.items():
            if group[f'{stat}_count'].sum() == 0:
                logger.warning(f"r={r}: no data for {stat}")
            row[f'{stat}_gap'] = largest[f'{stat}_mean'] - refs[ref]
        gap_rows.append(row)

    return ConstantsSummary(cells=cells, gaps=pd.DataFrame(gap_rows))
