# -*- coding: utf-8 -*-
"""
Outward / inward breadth-first search
=====================================
جستجوی سطح‌به‌سطح در جهت یال‌ها (oBFS) و خلاف جهت آن‌ها (iBFS)

Search runs layer by layer on numpy arrays. Within a layer the discovery
order is the FIFO order of the exploration process: vertices are explored
in queue order and each explored vertex appends its newly discovered
neighbours in increasing vertex id. Parallel edges collapse (set semantics).
"""

import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

import numpy as np
from scipy import stats

from graph_core.digraph import Digraph
from utils.validators import ValidationError, Validator

OUT = 'out'
IN = 'in'
DIRECTIONS = (OUT, IN)

# distance sentinel for vertices the search never reaches
UNREACHED = -1


def _check_direction(direction):
    Validator.validate_choice(direction, DIRECTIONS, 'direction')


def _expand(g: Digraph, frontier: np.ndarray, direction: str) -> Tuple[np.ndarray, np.ndarray]:
    """Candidates out of (or into) the frontier and the frontier position that produced each"""
    if direction == OUT:
        candidates = g.heads2d[frontier].reshape(-1)
        positions = np.repeat(np.arange(frontier.size), g.r)
        return candidates, positions

    ptr, tails = g.reverse_index()
    starts = ptr[frontier]
    counts = ptr[frontier + 1] - starts
    total = int(counts.sum())
    positions = np.repeat(np.arange(frontier.size), counts)
    offsets = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
    return tails[np.repeat(starts, counts) + offsets], positions


def iter_layers(g: Digraph, sources, direction: str = OUT, within: Optional[np.ndarray] = None,
                max_depth: Optional[int] = None) -> Iterator[np.ndarray]:
    """
    Yield BFS layers (sorted vertex arrays) starting with the sources

    `within` restricts the search to an induced subgraph (boolean mask).
    Stops after the last non-empty layer or at max_depth.
    """
    _check_direction(direction)
    frontier = np.unique(np.asarray(sources, dtype=np.int64).reshape(-1))
    visited = np.zeros(g.n, dtype=bool)
    visited[frontier] = True
    depth = 0
    yield frontier

    while frontier.size and (max_depth is None or depth < max_depth):
        candidates, _ = _expand(g, frontier, direction)
        keep = ~visited[candidates]
        if within is not None:
            keep &= within[candidates]
        frontier = np.unique(candidates[keep])
        if not frontier.size:
            return
        visited[frontier] = True
        depth += 1
        yield frontier


def reach_set(g: Digraph, sources, direction: str = OUT, within: Optional[np.ndarray] = None) -> np.ndarray:
    """Boolean mask of the vertices reachable from (OUT) or reaching (IN) the sources"""
    reached = np.zeros(g.n, dtype=bool)
    for layer in iter_layers(g, sources, direction, within):
        reached[layer] = True
    return reached


@dataclass(frozen=True, eq=False)
class BfsResult:
    """
    Result of one oBFS / iBFS run

    order lists the discovered vertices in discovery sequence; layers are
    contiguous slices of it (layer k = order[offsets[k]:offsets[k+1]]).
    dist is UNREACHED for vertices at infinite distance, parent is -1 for
    the root and for undiscovered vertices.
    """
    root: int
    direction: str
    dist: np.ndarray
    parent: np.ndarray
    order: np.ndarray
    offsets: np.ndarray
    _positions: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def depth(self) -> int:
        return self.offsets.size - 2

    @property
    def layers(self) -> List[np.ndarray]:
        return [self.order[self.offsets[k]:self.offsets[k + 1]] for k in range(self.offsets.size - 1)]

    @property
    def sizes(self) -> np.ndarray:
        return np.diff(self.offsets)

    def layer(self, k: int) -> np.ndarray:
        if k < 0 or k > self.depth:
            return self.order[:0]
        return self.order[self.offsets[k]:self.offsets[k + 1]]

    def ball(self, k: int) -> np.ndarray:
        """N_{<=k}: all vertices at distance at most k"""
        k = min(k, self.depth)
        return self.order[:self.offsets[k + 1]]

    def distance(self, u: int):
        d = int(self.dist[u])
        return math.inf if d == UNREACHED else d

    def reached(self) -> np.ndarray:
        return self.dist != UNREACHED

    def step_sets(self, m: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        (R_m, S_m) after m exploration steps

        R_m is the first m explored vertices; S_m is the queue of discovered
        but unexplored vertices at that time, in queue order.
        """
        if 'parent_pos' not in self._positions:
            position = np.full(self.dist.size, -1, dtype=np.int64)
            position[self.order] = np.arange(self.order.size)
            self._positions['parent_pos'] = position[self.parent[self.order[1:]]]
        parent_pos = self._positions['parent_pos']
        m = max(0, min(m, self.order.size))
        discovered = 1 + int(np.count_nonzero(parent_pos < m))
        return self.order[:m], self.order[m:discovered]

    def to_json(self) -> dict:
        return {
            'root': self.root + 1,
            'direction': self.direction,
            'layers': [(layer + 1).tolist() for layer in self.layers],
        }


def explore(g: Digraph, v: int, direction: str = OUT, max_depth: Optional[int] = None,
            within: Optional[np.ndarray] = None) -> BfsResult:
    """BFS with tree and discovery order, in the exact FIFO order of the exploration process"""
    _check_direction(direction)
    v = Validator.validate_vertex(v, g.n, 'v')
    if max_depth is not None:
        max_depth = Validator.validate_non_negative_integer(max_depth, 'max_depth')

    dist = np.full(g.n, UNREACHED, dtype=np.int64)
    parent = np.full(g.n, -1, dtype=np.int64)
    dist[v] = 0
    frontier = np.array([v], dtype=np.int64)
    chunks = [frontier]
    offsets = [0, 1]
    depth = 0

    while max_depth is None or depth < max_depth:
        candidates, positions = _expand(g, frontier, direction)
        keep = dist[candidates] == UNREACHED
        if within is not None:
            keep &= within[candidates]
        candidates, positions = candidates[keep], positions[keep]
        if not candidates.size:
            break

        # each new vertex is claimed by the first frontier vertex (queue order) pointing at it
        by_vertex = np.lexsort((positions, candidates))
        candidates, positions = candidates[by_vertex], positions[by_vertex]
        first = np.ones(candidates.size, dtype=bool)
        first[1:] = candidates[1:] != candidates[:-1]
        candidates, positions = candidates[first], positions[first]

        # queue order: by claiming parent, then by vertex id
        queue = np.lexsort((candidates, positions))
        new = candidates[queue]
        depth += 1
        dist[new] = depth
        parent[new] = frontier[positions[queue]]
        chunks.append(new)
        offsets.append(offsets[-1] + new.size)
        frontier = new

    return BfsResult(
        root=v,
        direction=direction,
        dist=dist,
        parent=parent,
        order=np.concatenate(chunks),
        offsets=np.asarray(offsets, dtype=np.int64),
    )


def obfs(g: Digraph, v: int, max_depth: Optional[int] = None) -> BfsResult:
    """Outward BFS: dist(u) = dist_D(v, u)"""
    return explore(g, v, OUT, max_depth)


def ibfs(g: Digraph, v: int, max_depth: Optional[int] = None) -> BfsResult:
    """Inward BFS: dist(u) = dist_D(u, v), following edges from head to tail"""
    return explore(g, v, IN, max_depth)


def default_thresholds(n: int) -> Tuple[int, int]:
    """(ceil(ln^4 n), ceil(ln^7 n)), at least 1"""
    log_n = math.log(n) if n > 1 else 0.0
    return max(1, math.ceil(log_n ** 4)), max(1, math.ceil(log_n ** 7))


def k0(g: Digraph, v: int, threshold: int) -> int:
    """min{k : d_k^-(v) = 0 or d_k^-(v) >= threshold}"""
    threshold = Validator.validate_positive_integer(threshold, 'threshold')
    Validator.validate_vertex(v, g.n, 'v')
    k = -1
    for k, layer in enumerate(iter_layers(g, [v], IN)):
        if layer.size >= threshold:
            return k
    return k + 1


def k1(g: Digraph, v: int, threshold: int) -> Optional[int]:
    """min{k : d_k^-(v) >= threshold}, None when the in-layers die out first"""
    threshold = Validator.validate_positive_integer(threshold, 'threshold')
    Validator.validate_vertex(v, g.n, 'v')
    for k, layer in enumerate(iter_layers(g, [v], IN)):
        if layer.size >= threshold:
            return k
    return None


@dataclass(frozen=True)
class GrowthProfile:
    """Layer sizes d_0, d_1, ..., d_K around a root"""
    root: int
    direction: str
    sizes: Tuple[int, ...]

    def __post_init__(self):
        if any(s < 0 for s in self.sizes):
            raise ValidationError("layer sizes must be non-negative")

    @property
    def cumulative(self) -> Tuple[int, ...]:
        return tuple(int(c) for c in np.cumsum(self.sizes))

    def csv_rows(self) -> List[str]:
        return [f"{k},{d},{c}" for k, (d, c) in enumerate(zip(self.sizes, self.cumulative))]


def _growth_profile(g, v, kmax, direction) -> GrowthProfile:
    kmax = Validator.validate_non_negative_integer(kmax, 'kmax')
    Validator.validate_vertex(v, g.n, 'v')
    sizes = [0] * (kmax + 1)
    for k, layer in enumerate(iter_layers(g, [v], direction, max_depth=kmax)):
        sizes[k] = int(layer.size)
    return GrowthProfile(root=int(v), direction=direction, sizes=tuple(sizes))


def in_growth_profile(g: Digraph, v: int, kmax: int) -> GrowthProfile:
    return _growth_profile(g, v, kmax, IN)


def out_growth_profile(g: Digraph, v: int, kmax: int) -> GrowthProfile:
    return _growth_profile(g, v, kmax, OUT)


def next_layer_law(n: int, r: int, q: int, p: int, p_prev: int):
    """
    Conditional law of d_{j+1}^- given the in-layers up to j

    q = d_j^-, p = d_{<=j}^-, p_prev = d_{<=j-1}^-. Each of the n - p unseen
    vertices has r heads uniform outside the already explored N_{<=j-1}^-,
    so it joins layer j+1 with probability 1 - (1 - q/(n - p_prev))^r.
    """
    success = 1.0 - (1.0 - q / (n - p_prev)) ** r
    return stats.binom(n - p, success)
