# -*- coding: utf-8 -*-
"""
Record emission
===============
خروجی گرفتن از نتایج آزمایش به CSV و JSON

CSV columns follow COLUMNS (TIMING_COLUMNS appended with timings=True);
JSON is an array of objects with the same keys. Floats carry 12
significant digits in both formats; missing values are empty / null.
'-' as path means standard output.
"""

import io
import json
import math
import sys
from pathlib import Path
from typing import List, Optional

import pandas as pd

from harness.sweep import COLUMNS, STAGES, TIMING_COLUMNS, TrialRecord
from utils.validators import ValidationError
import logging

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '%.12g'
INT_FIELDS = ('n', 'r', 'seed', 'trial', 'd0_size', 'period', 'diam', 'diam_d0', 'iters', 'flag_count')


def _json_value(value):
    if isinstance(value, float):
        return None if not math.isfinite(value) else float(f"{value:.12g}")
    return value


def render(records: List[TrialRecord], fmt: str = 'csv', timings: bool = False) -> str:
    if not records:
        raise ValidationError("no records to emit")
    columns = list(COLUMNS) + (list(TIMING_COLUMNS) if timings else [])
    rows = [record.to_row(timings=timings) for record in records]

    if fmt == 'json':
        return json.dumps([{key: _json_value(row[key]) for key in columns} for row in rows], indent=2) + '\n'
    if fmt == 'csv':
        frame = pd.DataFrame(rows, columns=columns)
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    raise ValidationError(f"format must be csv or json (got {fmt!r})")


def write_output(text: str, path='-'):
    """Write text to a file or, for '-', to standard output; I/O failures carry the path"""
    if str(path) == '-':
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        Path(path).write_text(text, encoding='utf-8')
    except OSError as e:
        raise OSError(f"cannot write {path}: {e.strerror or e}") from e


def emit(records: List[TrialRecord], fmt: str = 'csv', path='-', timings: bool = False):
    """Write records"""
    write_output(render(records, fmt, timings), path)
    if str(path) != '-':
        logger.info(f"Wrote {len(records)} records to {path}")


def _typed(name: str, value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return None
    if name in INT_FIELDS:
        return int(value)
    if name == 'attractive':
        return bool(int(value))
    if name == 'error':
        return str(value)
    return float(value)


def _record(row: dict) -> TrialRecord:
    values = {name: _typed(name, row.get(name)) for name in COLUMNS}
    timings = {}
    for stage, column in zip(STAGES, TIMING_COLUMNS):
        value = _typed(column, row.get(column))
        if value is not None:
            timings[stage] = value
    return TrialRecord(**values, timings=timings)


def parse_text(text: str, fmt: Optional[str] = None) -> List[TrialRecord]:
    """Records from emitted text; the format is sniffed when not given"""
    if fmt is None:
        fmt = 'json' if text.lstrip().startswith('[') else 'csv'
    if fmt == 'json':
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValidationError(f"malformed JSON records: {e}")
    else:
        frame = pd.read_csv(io.StringIO(text), dtype={'seed': str, 'error': str})
        frame = frame.astype(object).where(frame.notna(), None)
        rows = frame.to_dict(orient='records')
    missing = [name for name in COLUMNS if rows and name not in rows[0]]
    if missing:
        raise ValidationError(f"records are missing columns: {', '.join(missing)}")
    return [_record(row) for row in rows]


def parse(path, fmt: Optional[str] = None) -> List[TrialRecord]:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise OSError(f"cannot read {path}: {e.strerror or e}") from e
    return parse_text(text, fmt)
