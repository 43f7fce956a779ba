# -*- coding: utf-8 -*-
"""
Logging Configuration
پیکربندی logging برای کل پروژه
"""

import logging
import logging.handlers
import time
from contextlib import contextmanager
from pathlib import Path

import psutil


def setup_logging(log_level='INFO', log_dir=None, console=True):
    """
    Setup logging for the library and the CLI

    Creates:
        - <log_dir>/rout.log: General logs (rotating)
        - <log_dir>/error.log: Error logs only
        - Console output on stderr (data never goes there)

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory for log files; None disables file handlers
        console: Attach a stderr handler
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, log_level.upper()))

    # Remove existing handlers
    root_logger.handlers = []

    detailed_formatter = logging.Formatter(
        '[%(asctime)s] %(levelname)s in %(module)s.%(funcName)s:%(lineno)d - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    simple_formatter = logging.Formatter(
        '[%(asctime)s] %(levelname)s - %(message)s',
        datefmt='%H:%M:%S'
    )

    if console:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(getattr(logging, log_level.upper()))
        console_handler.setFormatter(simple_formatter)
        root_logger.addHandler(console_handler)

    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)

        file_handler = logging.handlers.RotatingFileHandler(
            log_dir / 'rout.log',
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=10,
            encoding='utf-8'
        )
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(detailed_formatter)
        root_logger.addHandler(file_handler)

        error_handler = logging.handlers.RotatingFileHandler(
            log_dir / 'error.log',
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5,
            encoding='utf-8'
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(detailed_formatter)
        root_logger.addHandler(error_handler)

    root_logger.debug(f"Logging initialized - Level: {log_level}, dir: {log_dir}")
    return root_logger


class PerformanceLogger:
    """
    Stage timer for the sweep engine

    Usage:
        perf = PerformanceLogger()
        with perf.stage('diam'):
            ...
        perf.timings  # {'diam': 12.5}
    """

    def __init__(self, slow_threshold_s=60.0, logger_name='performance'):
        self.slow_threshold_s = slow_threshold_s
        self.timings = {}
        self.logger = logging.getLogger(logger_name)

    @contextmanager
    def stage(self, name):
        start = time.perf_counter()
        try:
            yield
        finally:
            duration = time.perf_counter() - start
            self.timings[name] = duration * 1000.0
            self.log_slow_stage(name, duration)

    def log_slow_stage(self, name, duration):
        """Log stages that take longer than threshold"""
        if duration > self.slow_threshold_s:
            rss_mb = psutil.Process().memory_info().rss / (1024 * 1024)
            self.logger.warning(
                f"Slow stage detected ({duration:.2f}s, rss={rss_mb:.0f}MB): {name}"
            )
