# -*- coding: utf-8 -*-
"""
Random DFA over D(n, r)
=======================
ماشین متناهی قطعی تصادفی روی گراف r-خروجی

States are vertices; reading symbol j in state i moves along the j-th out
edge of i. A uniform random word of length m therefore ends where a simple
random walk of length m from the start state ends.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from graph_core.digraph import Digraph, as_seed, generate
from utils.validators import ValidationError, Validator
import logging

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Dfa:
    graph: Digraph
    start: int
    accepting: np.ndarray

    def __post_init__(self):
        Validator.validate_vertex(self.start, self.graph.n, 'start')
        accepting = np.asarray(self.accepting, dtype=bool)
        if accepting.shape != (self.graph.n,):
            raise ValidationError(f"accepting must have one bit per state (got shape {accepting.shape})")
        accepting.setflags(write=False)
        object.__setattr__(self, 'accepting', accepting)
        object.__setattr__(self, 'start', int(self.start))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def r(self) -> int:
        return self.graph.r

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (self.graph == other.graph and self.start == other.start
                and np.array_equal(self.accepting, other.accepting))

    def __hash__(self):
        return hash((self.graph, self.start, self.accepting.tobytes()))


def random_dfa(n: int, r: int, seed) -> Dfa:
    """Transitions from generate(n, r, seed); start and accepting bits from a derived stream"""
    seed = as_seed(seed)
    graph = generate(n, r, seed)
    rng = seed.derive(1).generator()
    start = int(rng.integers(0, n))
    accepting = rng.integers(0, 2, size=n).astype(bool)
    logger.debug(f"random DFA n={n} r={r} start={start} accepting={int(accepting.sum())}")
    return Dfa(graph=graph, start=start, accepting=accepting)


def _symbols(d: Dfa, word) -> np.ndarray:
    symbols = np.asarray(word, dtype=np.int64).reshape(-1)
    bad = (symbols < 0) | (symbols >= d.r)
    if bad.any():
        position = int(np.flatnonzero(bad)[0])
        raise ValidationError(f"symbol {int(symbols[position])} at position {position} is outside [0, {d.r - 1}]")
    return symbols


def run_word(d: Dfa, word: Sequence[int]) -> Tuple[int, bool]:
    """(final state, accepted)"""
    state = d.start
    heads = d.graph.heads2d
    for symbol in _symbols(d, word):
        state = int(heads[state, symbol])
    return state, bool(d.accepting[state])


def walk_trajectory(d: Dfa, m: int, seed) -> Tuple[np.ndarray, np.ndarray]:
    """
    Simple random walk of m steps from the start state

    Returns (symbols, states) with states[0] = start; feeding `symbols` to
    run_word visits exactly `states`.
    """
    m = Validator.validate_non_negative_integer(m, 'm')
    symbols = as_seed(seed).generator().integers(0, d.r, size=m)
    states = np.empty(m + 1, dtype=np.int64)
    states[0] = d.start
    heads = d.graph.heads2d
    for i, symbol in enumerate(symbols):
        states[i + 1] = heads[states[i], symbol]
    return symbols, states


def uniform_word_visit_law(d: Dfa, m: int, trials: int, seed) -> np.ndarray:
    """Frequency of each final state over `trials` uniform words of length m"""
    m = Validator.validate_non_negative_integer(m, 'm')
    trials = Validator.validate_positive_integer(trials, 'trials')
    rng = as_seed(seed).generator()
    heads = d.graph.heads2d
    states = np.full(trials, d.start, dtype=np.int64)
    for _ in range(m):
        states = heads[states, rng.integers(0, d.r, size=trials)]
    return np.bincount(states, minlength=d.n) / trials


def _push(d: Dfa, law: np.ndarray) -> np.ndarray:
    """One application of x -> xP"""
    return np.bincount(d.graph.heads, weights=np.repeat(law, d.r) / d.r, minlength=d.n)


def m_step_law(d: Dfa, m: int) -> np.ndarray:
    """Exact distribution of the walk after m steps, by m applications of the transition operator"""
    m = Validator.validate_non_negative_integer(m, 'm')
    law = np.zeros(d.n)
    law[d.start] = 1.0
    for _ in range(m):
        law = _push(d, law)
    return law


def tv_envelope(law: np.ndarray, trials: int, z: float = 3.0) -> float:
    """
    z-SE envelope for the TV distance between a law and its empirical
    estimate from `trials` draws: 0.5 Σ z sqrt(p (1 - p) / trials)
    """
    return float(0.5 * z * np.sqrt(law * (1.0 - law) / trials).sum())


def to_text(d: Dfa) -> str:
    """Header `n r start`, then `i: h1 ... hr bit` per state (1-based)"""
    lines = [f"{d.n} {d.r} {d.start + 1}"]
    for i, row in enumerate(d.graph.heads2d):
        heads = ' '.join(str(int(h) + 1) for h in row)
        lines.append(f"{i + 1}: {heads} {int(d.accepting[i])}")
    return '\n'.join(lines) + '\n'


def from_text(text: str) -> Dfa:
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.lstrip().startswith('#')]
    if not lines:
        raise ValidationError("empty DFA description")
    try:
        n, r, start = (int(x) for x in lines[0].split())
        if len(lines) - 1 != n:
            raise ValidationError(f"expected {n} state lines, found {len(lines) - 1}")
        heads = np.empty((n, r), dtype=np.int64)
        accepting = np.zeros(n, dtype=bool)
        for expected, line in enumerate(lines[1:], start=1):
            label, _, rest = line.partition(':')
            if int(label) != expected:
                raise ValidationError(f"state lines out of order: expected {expected}, got {label}")
            fields = [int(x) for x in rest.split()]
            if len(fields) != r + 1 or fields[-1] not in (0, 1):
                raise ValidationError(f"state {expected}: expected {r} heads and an accept bit")
            heads[expected - 1] = np.asarray(fields[:r]) - 1
            accepting[expected - 1] = bool(fields[-1])
    except ValueError as e:
        if isinstance(e, ValidationError):
            raise
        raise ValidationError(f"malformed DFA description: {e}")
    return Dfa(graph=Digraph(n, r, heads.reshape(-1)), start=start - 1, accepting=accepting)


def parse_word(text: str) -> np.ndarray:
    """Whitespace-separated symbol indices"""
    try:
        return np.asarray([int(token) for token in text.split()], dtype=np.int64)
    except ValueError as e:
        raise ValidationError(f"malformed word: {e}")


def l1_to(law: np.ndarray, target: np.ndarray) -> float:
    return float(np.abs(law - target).sum())


def convergence_profile(d: Dfa, target: np.ndarray, steps: Sequence[int]) -> np.ndarray:
    """l1 distance between the m-step law and `target` (full length n) for each m in steps"""
    steps = sorted(int(m) for m in steps)
    distances = []
    law = np.zeros(d.n)
    law[d.start] = 1.0
    done = 0
    for m in steps:
        for _ in range(m - done):
            law = _push(d, law)
        done = m
        distances.append(l1_to(law, target))
    return np.asarray(distances)
