# -*- coding: utf-8 -*-
"""
Analysis Service
================
سرویس اجرای تحلیل‌ها برای خط فرمان

Every call returns a dict with success, message, data and error_kind
('config', 'io' or 'runtime' when success is False).
"""

from typing import Dict, Optional, Sequence

from branching.constants import constants_table
from branching.galton_watson import gw_tail_prob
from config.settings import FULL_PI_LIMIT
from dfa.automaton import random_dfa, run_word
from flags.detector import FlagParams, find_flags
from graph_core.digraph import Digraph, generate, generate_simple
from graph_core.serialization import read_graph, to_json, to_text
from harness.config import SweepConfig
from harness.sweep import run_sweep
from metrics.diameter import diameter, diameter_restricted, trivial_lower_bound
from stationary.solvers import stationary
from structure.scc import scc_decompose
from utils.validators import ValidationError
import logging

logger = logging.getLogger(__name__)


def _ok(message: str, data) -> Dict:
    return {'success': True, 'message': message, 'data': data, 'error_kind': None}


def _failed(e: Exception) -> Dict:
    if isinstance(e, ValidationError):
        kind = 'config'
    elif isinstance(e, OSError):
        kind = 'io'
    else:
        kind = 'runtime'
        logger.error(f"Analysis failed: {e}", exc_info=True)
    return {'success': False, 'message': str(e), 'data': None, 'error_kind': kind}


class AnalysisService:
    """سرویس تحلیل گراف‌های r-خروجی"""

    @staticmethod
    def load_graph(n: Optional[int], r: Optional[int], seed: Optional[int], simple: bool = False,
                   path: Optional[str] = None) -> Digraph:
        """A graph file when given, otherwise D(n, r) from the seed"""
        if path:
            return read_graph(path)
        if n is None or r is None or seed is None:
            raise ValidationError("--n, --r and --seed are required unless --graph is given")
        return generate_simple(n, r, seed) if simple else generate(n, r, seed)

    @staticmethod
    def generate_graph(n: int, r: int, seed: int, simple: bool = False, fmt: str = 'text') -> Dict:
        try:
            g = AnalysisService.load_graph(n, r, seed, simple)
            text = to_json(g) + '\n' if fmt == 'json' else to_text(g)
            return _ok(f"generated D({n}, {r})", text)
        except Exception as e:
            return _failed(e)

    @staticmethod
    def analyze_scc(g: Digraph) -> Dict:
        try:
            dec = scc_decompose(g)
            return _ok(f"{dec.count} components, |D0|={dec.d0_size}", dec.to_json())
        except Exception as e:
            return _failed(e)

    @staticmethod
    def analyze_diameter(g: Digraph, restrict_d0: bool = False) -> Dict:
        try:
            if restrict_d0:
                report = diameter_restricted(g, scc_decompose(g).d0_vertices)
            else:
                report = diameter(g)
            data = report.to_json()
            data['lower_bound'] = trivial_lower_bound(g.n, g.r)
            return _ok(f"diam={report.value}", data)
        except Exception as e:
            return _failed(e)

    @staticmethod
    def analyze_stationary(g: Digraph, method: str = 'auto', tol: Optional[float] = None,
                           max_iter: Optional[int] = None, full: bool = False) -> Dict:
        try:
            dec = scc_decompose(g)
            kwargs = {key: value for key, value in (('tol', tol), ('max_iter', max_iter)) if value is not None}
            profile = stationary(g, dec, method=method, **kwargs)
            return _ok(
                f"pi_max={profile.pi_max:.6g} pi_min={profile.pi_min:.6g} ({profile.method})",
                profile.to_json(full=full and profile.support.size <= FULL_PI_LIMIT),
            )
        except Exception as e:
            return _failed(e)

    @staticmethod
    def analyze_flags(g: Digraph, seed, epsilon: Optional[float] = None, threshold: Optional[int] = None,
                      size_cap: Optional[int] = None) -> Dict:
        try:
            params = FlagParams.for_graph(g.n, g.r, epsilon, threshold, size_cap)
            flags = find_flags(g, params)
            rows = [report.csv_row(g.n, g.r, '' if seed is None else seed) for report in flags]
            return _ok(f"{len(flags)} flags (k*={params.k_star})", {'params': params.to_json(), 'flags': rows})
        except Exception as e:
            return _failed(e)

    @staticmethod
    def branching_summary(r: int, k: int, omega: int, trials: int, seed: int) -> Dict:
        try:
            tail = gw_tail_prob(r, k, omega, trials, seed)
            table = constants_table([r])
            data = {
                'tail': tail.to_row(),
                'exact': tail.exact,
                'constants': table.to_dict(orient='records')[0],
            }
            return _ok(f"P(0<|T_{k}|<{omega}) ~ {tail.estimate:.6g}", data)
        except Exception as e:
            return _failed(e)

    @staticmethod
    def run_dfa_word(n: int, r: int, seed: int, word: Sequence[int]) -> Dict:
        try:
            automaton = random_dfa(n, r, seed)
            state, accepted = run_word(automaton, word)
            return _ok(
                f"state {state + 1} ({'accept' if accepted else 'reject'})",
                {'start': automaton.start + 1, 'state': state + 1, 'accept': accepted, 'length': len(word)},
            )
        except Exception as e:
            return _failed(e)

    @staticmethod
    def sweep(cfg: SweepConfig) -> Dict:
        try:
            records = run_sweep(cfg)
            failed = sum(1 for record in records if record.error)
            return _ok(f"{len(records)} records ({failed} with errors)", records)
        except Exception as e:
            return _failed(e)
