# -*- coding: utf-8 -*-
"""
Random r-out digraphs
=====================
تولید گراف‌های جهت‌دار تصادفی r-خروجی

Vertices are 0..n-1 internally; every human-facing format (text, JSON, CLI)
prints them 1-based. Heads are stored flat: entry i*r + j is the head of the
j-th edge out of vertex i.
"""

import math
import threading
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import sparse

from config.settings import SIMPLE_MAX_ATTEMPTS
from utils.errors import RetryExhaustedError
from utils.validators import ValidationError, Validator
import logging

logger = logging.getLogger(__name__)

_UINT64_MAX = 2 ** 64 - 1


@dataclass(frozen=True)
class Seed:
    """
    64-bit seed for the PCG64 generator

    Streams are split with numpy's SeedSequence: `derive(*key)` hashes the
    parent value together with an integer key, so derived streams do not
    depend on the order in which they are requested.
    """
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, (int, np.integer)):
            raise ValidationError(f"seed must be an integer (got {self.value!r})")
        if not 0 <= int(self.value) <= _UINT64_MAX:
            raise ValidationError(f"seed must fit in 64 unsigned bits (got {self.value})")
        object.__setattr__(self, 'value', int(self.value))

    def sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(self.value)

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.sequence()))

    def derive(self, *key) -> 'Seed':
        spawn_key = tuple(int(k) for k in key)
        state = np.random.SeedSequence(self.value, spawn_key=spawn_key).generate_state(1, np.uint64)
        return Seed(int(state[0]))


def as_seed(seed) -> Seed:
    if isinstance(seed, Seed):
        return seed
    return Seed(seed)


class Digraph:
    """
    Immutable r-out regular directed multigraph

    Loops and parallel edges are kept: transition probabilities depend on
    edge multiplicities. The reverse-adjacency index is built on first use
    and cached; the build is guarded by a lock.
    """

    __slots__ = ('n', 'r', 'heads', '_reverse', '_lock')

    def __init__(self, n: int, r: int, heads):
        n = Validator.validate_positive_integer(n, 'n')
        r = Validator.validate_positive_integer(r, 'r')
        heads = np.array(heads, dtype=np.int64).reshape(-1)
        if heads.size != n * r:
            raise ValidationError(f"heads must have n*r={n * r} entries (got {heads.size})")
        if heads.size and (heads.min() < 0 or heads.max() >= n):
            raise ValidationError("every head must be a vertex id in 0..n-1")
        heads.setflags(write=False)
        self.n = n
        self.r = r
        self.heads = heads
        self._reverse = None
        self._lock = threading.Lock()

    def __getstate__(self):
        return {'n': self.n, 'r': self.r, 'heads': self.heads}

    def __setstate__(self, state):
        heads = np.array(state['heads'], dtype=np.int64)
        heads.setflags(write=False)
        self.n = state['n']
        self.r = state['r']
        self.heads = heads
        self._reverse = None
        self._lock = threading.Lock()

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.r == other.r and np.array_equal(self.heads, other.heads)

    def __hash__(self):
        return hash((self.n, self.r, self.heads.tobytes()))

    def __repr__(self):
        return f"Digraph(n={self.n}, r={self.r})"

    @property
    def heads2d(self) -> np.ndarray:
        """(n, r) read-only view: row i lists the heads out of i"""
        return self.heads.reshape(self.n, self.r)

    def out_heads(self, v: int) -> np.ndarray:
        return self.heads2d[v]

    def reverse_index(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        CSR in-adjacency (ptr, tails)

        tails[ptr[w]:ptr[w+1]] are the tails of the edges into w, one entry
        per edge (parallel edges repeat), in increasing tail order.
        """
        if self._reverse is None:
            with self._lock:
                if self._reverse is None:
                    order = np.argsort(self.heads, kind='stable')
                    tails = order // self.r
                    counts = np.bincount(self.heads, minlength=self.n)
                    ptr = np.zeros(self.n + 1, dtype=np.int64)
                    np.cumsum(counts, out=ptr[1:])
                    tails.setflags(write=False)
                    ptr.setflags(write=False)
                    self._reverse = (ptr, tails)
                    logger.debug(f"Built reverse index for {self!r}")
        return self._reverse

    def in_tails(self, w: int) -> np.ndarray:
        ptr, tails = self.reverse_index()
        return tails[ptr[w]:ptr[w + 1]]

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.heads, minlength=self.n)

    def edge_tails(self) -> np.ndarray:
        return np.repeat(np.arange(self.n, dtype=np.int64), self.r)

    def adjacency(self) -> sparse.csr_matrix:
        """Sparse adjacency with entry (u, w) = multiplicity of edge u->w"""
        indptr = np.arange(0, self.n * self.r + 1, self.r, dtype=np.int64)
        data = np.ones(self.n * self.r, dtype=np.int64)
        matrix = sparse.csr_matrix((data, self.heads, indptr), shape=(self.n, self.n))
        matrix.sum_duplicates()
        return matrix

    def edges_into(self, u: int, members: np.ndarray) -> int:
        """|E(u, S)| counted with multiplicity, S given as a boolean mask"""
        return int(np.count_nonzero(members[self.heads2d[u]]))

    def is_simple(self) -> bool:
        rows = np.sort(self.heads2d, axis=1)
        has_loop = bool((self.heads2d == np.arange(self.n)[:, None]).any())
        has_parallel = bool((rows[:, 1:] == rows[:, :-1]).any()) if self.r > 1 else False
        return not (has_loop or has_parallel)


def from_heads(n: int, r: int, heads) -> Digraph:
    return Digraph(n, r, heads)


def cycle_digraph(n: int, r: int) -> Digraph:
    """Directed cycle with r parallel edges: heads(i, j) = i+1 mod n"""
    heads = np.repeat((np.arange(n) + 1) % n, r)
    return Digraph(n, r, heads)


def loop_digraph(n: int, r: int) -> Digraph:
    """Every edge is a self-loop"""
    return Digraph(n, r, np.repeat(np.arange(n), r))


def generate(n: int, r: int, seed) -> Digraph:
    """
    Sample D(n, r)

    The n*r heads are drawn as independent uniform vertices in (i, j)
    lexicographic order from PCG64 seeded by `seed`.
    """
    n = Validator.validate_positive_integer(n, 'n')
    r = Validator.validate_positive_integer(r, 'r')
    rng = as_seed(seed).generator()
    heads = rng.integers(0, n, size=n * r, dtype=np.int64)
    return Digraph(n, r, heads)


def sample_simple(n: int, r: int, seed, max_attempts: Optional[int] = None) -> Tuple[Digraph, int]:
    """
    Rejection-sample a simple r-out digraph

    Returns the graph and the number of attempts used. The conditional law of
    D(n, r) given simplicity is the uniform simple r-out digraph.
    """
    n = Validator.validate_positive_integer(n, 'n')
    r = Validator.validate_positive_integer(r, 'r')
    if n <= r:
        raise ValidationError(f"simple r-out digraphs need n > r (got n={n}, r={r})")
    max_attempts = Validator.validate_positive_integer(
        SIMPLE_MAX_ATTEMPTS if max_attempts is None else max_attempts, 'max_attempts'
    )

    rng = as_seed(seed).generator()
    for attempt in range(1, max_attempts + 1):
        heads = rng.integers(0, n, size=n * r, dtype=np.int64)
        graph = Digraph(n, r, heads)
        if graph.is_simple():
            if attempt > 1:
                logger.debug(f"Simple sample accepted after {attempt} attempts (n={n}, r={r})")
            return graph, attempt

    logger.warning(f"Simple sampler exhausted: n={n}, r={r}, attempts={max_attempts}")
    raise RetryExhaustedError(max_attempts)


def generate_simple(n: int, r: int, seed, max_attempts: Optional[int] = None) -> Digraph:
    graph, _ = sample_simple(n, r, seed, max_attempts)
    return graph


def simple_acceptance_rate(n: int, r: int, trials: int, seed) -> Tuple[float, float]:
    """Monte Carlo estimate of Pr(D(n, r) is simple) with its standard error"""
    trials = Validator.validate_positive_integer(trials, 'trials')
    base = as_seed(seed)
    accepted = sum(generate(n, r, base.derive(t)).is_simple() for t in range(trials))
    rate = accepted / trials
    return rate, math.sqrt(rate * (1.0 - rate) / trials)


def loop_vertices(g: Digraph) -> set:
    """Vertices all of whose r out-edges are self-loops"""
    own = np.arange(g.n)[:, None]
    return {int(v) for v in np.flatnonzero((g.heads2d == own).all(axis=1))}


def loop_vertex_probability(n: int, r: int) -> float:
    """Pr(some vertex is a loop vertex) = 1 - (1 - n^-r)^n"""
    return -math.expm1(n * math.log1p(-float(n) ** (-r)))
