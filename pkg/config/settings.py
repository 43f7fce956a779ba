# -*- coding: utf-8 -*-
"""
تنظیمات پروژه
Project settings

All defaults can be overridden from the environment or a local .env file.
"""
import os
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()

# مسیر پروژه
BASE_DIR = Path(__file__).resolve().parent.parent


def _env_int(name, default):
    return int(float(os.getenv(name, default)))


def _env_float(name, default):
    return float(os.getenv(name, default))


# تنظیمات لاگ
LOG_LEVEL = os.getenv('ROUT_LOG_LEVEL', 'INFO')
LOG_DIR = Path(os.getenv('ROUT_LOG_DIR', BASE_DIR / 'logs'))

# Worker pool size for sweeps and all-sources BFS (0 or 1 = run in-process)
WORKERS = _env_int('ROUT_WORKERS', os.cpu_count() or 1)

# Stationary solvers
POWER_TOL = _env_float('ROUT_POWER_TOL', 1e-12)
POWER_MAX_ITER = _env_int('ROUT_POWER_MAX_ITER', 1_000_000)
DIRECT_CAP = _env_int('ROUT_DIRECT_CAP', 2000)
ESCAPE_CAP = _env_int('ROUT_ESCAPE_CAP', 10_000)
RETURN_STEP_BUDGET = _env_int('ROUT_RETURN_STEP_BUDGET', 1_000_000_000)

# Generators
SIMPLE_MAX_ATTEMPTS = _env_int('ROUT_SIMPLE_MAX_ATTEMPTS', 1_000_000)
GW_POP_CAP = _env_int('ROUT_GW_POP_CAP', 10_000_000)

# Flags
FLAG_EPSILON = _env_float('ROUT_FLAG_EPSILON', 0.2)

# Full π vectors are only written out below this support size
FULL_PI_LIMIT = _env_int('ROUT_FULL_PI_LIMIT', 100_000)

# Measurements understood by the sweep engine
MEASUREMENTS = ('scc', 'diam', 'stationary', 'flags', 'gw')
