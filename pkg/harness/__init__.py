# -*- coding: utf-8 -*-
"""
Harness Package
===============
موتور آزمایش‌ها، خروجی و خط فرمان
"""

from harness.config import SweepConfig, build_config, read_config_file
from harness.sweep import (
    COLUMNS, TIMING_COLUMNS, ConstantsSummary, TrialRecord, estimate_constants, run_sweep, run_trial, trial_seed,
)
from harness.export import emit, parse, parse_text, render
