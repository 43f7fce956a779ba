# -*- coding: utf-8 -*-
"""
ε-flags
=======
پرچم‌ها: برج‌های باریک درختی در همسایگی ورودی

v is an ε-flag when its in-layers first reach `threshold` at a depth
k1 >= k*, the in-ball N_{<=k1}^-(v) has at most `size_cap` vertices, and
D[N_{<=k1}^-(v)] is a tree. Flags carry the second-order term of the
diameter and the smallest stationary probabilities.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from branching.constants import solve_constants
from config.settings import FLAG_EPSILON, WORKERS
from exploration.bfs import IN, default_thresholds, ibfs, iter_layers
from graph_core.digraph import Digraph
from stationary.bounds import BoundReport, finish_report
from stationary.solvers import StationaryProfile
from structure.scc import SccDecomposition, scc_decompose
from utils.validators import ValidationError, Validator
import logging

logger = logging.getLogger(__name__)

PARALLEL_MIN_VERTICES = 16384
FLAG_BOUND_SLACK = 1e-12

CSV_COLUMNS = ('n', 'r', 'seed', 'vertex', 'k1', 'maze_size', 'is_tree', 'is_flag')


@dataclass(frozen=True)
class FlagParams:
    """All thresholds are integers (ceilings of the real-valued definitions)"""
    epsilon: float
    k_star: int
    threshold: int
    size_cap: int
    eta: float

    @classmethod
    def for_graph(cls, n: int, r: int, epsilon: Optional[float] = None, threshold: Optional[int] = None,
                  size_cap: Optional[int] = None) -> 'FlagParams':
        """
        k* = ceil((η_r - ε/2) log_r n), threshold = ceil(ln^4 n),
        size_cap = ceil(ln^7 n); the last two may be overridden
        """
        n = Validator.validate_integer(n, min_val=2, field_name='n')
        epsilon = FLAG_EPSILON if epsilon is None else Validator.validate_positive_float(epsilon, 'epsilon')
        eta = solve_constants(r).eta_r
        k_star = math.ceil((eta - epsilon / 2.0) * math.log(n) / math.log(r))
        if k_star < 1:
            raise ValidationError(
                f"epsilon={epsilon} too large for n={n}, r={r}: k* = {k_star} (need k* >= 1)"
            )
        default_threshold, default_cap = default_thresholds(n)
        threshold = default_threshold if threshold is None else Validator.validate_positive_integer(threshold, 'threshold')
        size_cap = default_cap if size_cap is None else Validator.validate_positive_integer(size_cap, 'size_cap')
        return cls(epsilon=float(epsilon), k_star=int(k_star), threshold=threshold, size_cap=size_cap, eta=eta)

    def to_json(self) -> dict:
        return {
            'epsilon': self.epsilon, 'k_star': self.k_star,
            'threshold': self.threshold, 'size_cap': self.size_cap, 'eta': self.eta,
        }


@dataclass(frozen=True)
class FlagReport:
    """
    k1 is None when the in-layers die out (or the scan stopped) before the
    threshold; truncated marks scans stopped early because the ball outgrew
    size_cap or the threshold was met before k*.
    """
    vertex: int
    is_flag: bool
    k1: Optional[int]
    maze_size: int
    is_tree: bool
    in_d0: bool
    entrance_size: int = 0
    truncated: bool = False

    def csv_row(self, n: int, r: int, seed) -> dict:
        return {
            'n': n, 'r': r, 'seed': seed, 'vertex': self.vertex + 1,
            'k1': '' if self.k1 is None else self.k1,
            'maze_size': self.maze_size, 'is_tree': int(self.is_tree), 'is_flag': int(self.is_flag),
        }


def _scan(g: Digraph, v: int, p: FlagParams, in_d0: bool) -> FlagReport:
    """Walks the in-layers of v, stopping as soon as v is ruled out"""
    ball = []
    size = 0
    for k, layer in enumerate(iter_layers(g, [v], IN)):
        ball.append(layer)
        size += layer.size
        if size > p.size_cap:
            return FlagReport(vertex=v, is_flag=False, k1=None, maze_size=size, is_tree=False,
                              in_d0=in_d0, truncated=True)
        if layer.size >= p.threshold:
            if k < p.k_star:
                return FlagReport(vertex=v, is_flag=False, k1=k, maze_size=size, is_tree=False,
                                  in_d0=in_d0, entrance_size=int(layer.size), truncated=True)
            vertices = np.concatenate(ball)
            members = np.zeros(g.n, dtype=bool)
            members[vertices] = True
            # multiplicities count: a parallel edge or a loop breaks the tree
            inside = int(np.count_nonzero(members[g.heads2d[vertices]]))
            is_tree = inside == vertices.size - 1
            return FlagReport(vertex=v, is_flag=is_tree, k1=k, maze_size=size, is_tree=is_tree,
                              in_d0=in_d0, entrance_size=int(layer.size))
    return FlagReport(vertex=v, is_flag=False, k1=None, maze_size=size, is_tree=False, in_d0=in_d0)


def is_flag(g: Digraph, v: int, p: FlagParams, dec: Optional[SccDecomposition] = None) -> FlagReport:
    v = Validator.validate_vertex(v, g.n, 'v')
    dec = scc_decompose(g) if dec is None else dec
    return _scan(g, v, p, dec.in_d0(v))


def _scan_chunk(args):
    g, vertices, p, d0_mask = args
    found = []
    for v in vertices:
        report = _scan(g, int(v), p, bool(d0_mask[v]))
        if report.is_flag:
            found.append(report)
    return found


def find_flags(g: Digraph, p: FlagParams, dec: Optional[SccDecomposition] = None,
               workers: Optional[int] = None) -> List[FlagReport]:
    """All ε-flags of g in increasing vertex order"""
    dec = scc_decompose(g) if dec is None else dec
    workers = WORKERS if workers is None else workers
    vertices = np.arange(g.n)
    if workers > 1 and g.n >= PARALLEL_MIN_VERTICES:
        jobs = [(g, chunk, p, dec.d0_mask) for chunk in np.array_split(vertices, workers * 8) if chunk.size]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_scan_chunk, jobs))
    else:
        chunks = [_scan_chunk((g, vertices, p, dec.d0_mask))]

    flags = [report for chunk in chunks for report in chunk]
    outside = sum(1 for report in flags if not report.in_d0)
    logger.info(f"{len(flags)} flags (k*={p.k_star}, threshold={p.threshold}), {outside} outside D0")
    return flags


def validate_flag_bound(profile: StationaryProfile, report: FlagReport, g: Digraph, k_star: int,
                        strict: bool = False) -> BoundReport:
    """
    π(v) <= |N_{k*}^-(v)| r^{-k*} π_max for a flag v

    In a tree maze every walk of length k* ending at v starts in
    N_{k*}^-(v) and follows the unique tree path.
    """
    if not report.is_flag:
        raise ValidationError(f"vertex {report.vertex} is not a flag")
    if report.k1 is not None and k_star > report.k1:
        raise ValidationError(f"k_star={k_star} exceeds k1={report.k1}")
    entrance = int(ibfs(g, report.vertex, max_depth=k_star).layer(k_star).size)
    rhs = entrance * float(g.r) ** -k_star * profile.pi_max
    lhs = profile.pi_of(report.vertex)
    bound = BoundReport(
        name='flag',
        holds=lhs <= rhs * (1.0 + FLAG_BOUND_SLACK) + profile.residual,
        lhs=lhs,
        rhs=rhs,
        details={'vertex': report.vertex, 'k_star': int(k_star), 'entrance': entrance},
    )
    return finish_report(bound, strict)
