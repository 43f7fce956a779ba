# -*- coding: utf-8 -*-
"""
Sweep configuration
===================
پیکربندی اجرای آزمایش‌ها

A config file is flat `key = value` text (dotenv syntax); list values are
comma separated. Values given on the command line override file values.

    n = 4096, 16384
    r = 2, 3
    trials = 20
    seed = 12345
    measurements = scc, diam, stationary
"""

import io
from dataclasses import asdict, dataclass
from typing import Mapping, Optional, Tuple

from dotenv import dotenv_values

from config.settings import FLAG_EPSILON, MEASUREMENTS, POWER_MAX_ITER, POWER_TOL, WORKERS
from utils.validators import ValidationError, validate_config_data

FORMATS = ('csv', 'json')

LIST_KEYS = ('n', 'r', 'measurements')
INT_KEYS = ('trials', 'seed', 'max_iter', 'threshold', 'size_cap', 'gw_depth', 'gw_trials', 'workers')
FLOAT_KEYS = ('eps', 'tol')
BOOL_KEYS = ('simple', 'timings')
TEXT_KEYS = ('format', 'out')
KNOWN_KEYS = LIST_KEYS + INT_KEYS + FLOAT_KEYS + BOOL_KEYS + TEXT_KEYS

RULES = {
    'trials': [('positive_integer',)],
    'seed': [('integer', {'min_val': 0, 'max_val': 2 ** 64 - 1})],
    'format': [('choice', {'choices': FORMATS})],
    'eps': [('positive_float',)],
    'tol': [('positive_float',)],
    'max_iter': [('positive_integer',)],
    'gw_depth': [('non_negative_integer',)],
    'gw_trials': [('positive_integer',)],
    'workers': [('positive_integer',)],
}


@dataclass(frozen=True)
class SweepConfig:
    n_values: Tuple[int, ...]
    r_values: Tuple[int, ...]
    trials: int
    seed: int
    measurements: Tuple[str, ...] = MEASUREMENTS
    format: str = 'csv'
    out: str = '-'
    eps: float = FLAG_EPSILON
    tol: float = POWER_TOL
    max_iter: int = POWER_MAX_ITER
    threshold: Optional[int] = None
    size_cap: Optional[int] = None
    simple: bool = False
    gw_depth: int = 20
    gw_trials: int = 1000
    workers: int = WORKERS
    timings: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _parse_bool(key, text):
    lowered = str(text).strip().lower()
    if lowered in ('1', 'true', 'yes', 'on'):
        return True
    if lowered in ('0', 'false', 'no', 'off', ''):
        return False
    raise ValidationError(f"{key} must be a boolean (got {text!r})")


def _parse_int(key, text):
    try:
        return int(str(text).strip())
    except ValueError:
        raise ValidationError(f"{key} must be an integer (got {text!r})")


def coerce(raw: Mapping[str, object]) -> dict:
    """Typed values from strings (file) or already-typed values (CLI)"""
    values = {}
    for key, value in raw.items():
        if value is None:
            continue
        if key not in KNOWN_KEYS:
            raise ValidationError(f"unknown config key: {key}")
        if key in LIST_KEYS:
            items = value.split(',') if isinstance(value, str) else list(value)
            items = [str(item).strip() for item in items if str(item).strip()]
            if key == 'measurements':
                values[key] = tuple(items)
            else:
                values[key] = tuple(_parse_int(key, item) for item in items)
        elif key in INT_KEYS:
            values[key] = _parse_int(key, value)
        elif key in FLOAT_KEYS:
            try:
                values[key] = float(value)
            except (TypeError, ValueError):
                raise ValidationError(f"{key} must be a number (got {value!r})")
        elif key in BOOL_KEYS:
            values[key] = value if isinstance(value, bool) else _parse_bool(key, value)
        else:
            values[key] = str(value).strip()
    return values


def read_config_file(path) -> dict:
    """Raw key/value pairs; OSError propagates with the path"""
    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    return dict(dotenv_values(stream=io.StringIO(text)))


def build_config(file_values: Optional[Mapping] = None, cli_values: Optional[Mapping] = None) -> SweepConfig:
    """Merge file and CLI values (CLI wins) and validate every field"""
    values = coerce(file_values or {})
    values.update(coerce(cli_values or {}))

    errors = []
    for key in ('n', 'r'):
        items = values.get(key)
        if not items:
            errors.append(f"{key} is required (nonempty list)")
        elif any(item < 1 for item in items):
            errors.append(f"{key} values must be positive (got {list(items)})")
    if 'trials' not in values:
        errors.append("trials is required")
    if 'seed' not in values:
        errors.append("seed is required")
    measurements = values.get('measurements', MEASUREMENTS)
    if not measurements:
        errors.append("measurements must be nonempty")
    unknown = [m for m in measurements if m not in MEASUREMENTS]
    if unknown:
        errors.append(f"unknown measurements: {', '.join(unknown)} (choose from {', '.join(MEASUREMENTS)})")
    errors.extend(validate_config_data({k: v for k, v in values.items() if k in RULES}, {
        key: rules for key, rules in RULES.items() if key in values
    }))
    for key in ('threshold', 'size_cap'):
        if values.get(key) is not None and values[key] < 1:
            errors.append(f"{key} must be >= 1 (got {values[key]})")
    if errors:
        raise ValidationError('; '.join(errors))

    return SweepConfig(
        n_values=tuple(values.pop('n')),
        r_values=tuple(values.pop('r')),
        measurements=tuple(measurements),
        **{key: value for key, value in values.items() if key != 'measurements'},
    )
