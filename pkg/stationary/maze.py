# -*- coding: utf-8 -*-
"""
Mazes around a vertex
=====================
هزارتوی همسایگی ورودی: سختی و احتمال فرار

The maze of v at depth k is D[N_{<=k}^-(v)]; its entrances are N_k^-(v).
A maze vertex is single-exit when exactly one of its r out-edges (counted
with multiplicity) stays inside the maze.
"""

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import spsolve

from config.settings import ESCAPE_CAP
from exploration.bfs import ibfs
from graph_core.digraph import Digraph, as_seed
from utils.errors import CapExceededError, EmptyEntranceError, StepBudgetError
from utils.validators import Validator


@dataclass(frozen=True, eq=False)
class Maze:
    center: int
    depth: int
    vertices: np.ndarray
    entrance: np.ndarray
    members: np.ndarray
    inside_edges: np.ndarray

    @property
    def size(self) -> int:
        return int(self.vertices.size)

    @property
    def is_tree(self) -> bool:
        return int(self.inside_edges.sum()) == self.size - 1


def build_maze(g: Digraph, v: int, k: int) -> Maze:
    k = Validator.validate_non_negative_integer(k, 'k')
    search = ibfs(g, v, max_depth=k)
    entrance = search.layer(k)
    if not entrance.size:
        raise EmptyEntranceError(f"N_{k}^-({v}) is empty")
    vertices = np.sort(search.ball(k))
    members = np.zeros(g.n, dtype=bool)
    members[vertices] = True
    inside_edges = np.count_nonzero(members[g.heads2d[vertices]], axis=1)
    return Maze(
        center=int(v), depth=k, vertices=vertices, entrance=np.sort(entrance),
        members=members, inside_edges=inside_edges,
    )


@dataclass(frozen=True)
class MazeHardness:
    """
    hardness is the largest h such that the maze is h-hard: the minimum, over
    directed maze paths from an entrance to the center, of the number of
    single-exit vertices the walk has to leave (the center is not counted).
    """
    center: int
    depth: int
    maze: Tuple[int, ...]
    single_exit: Tuple[int, ...]
    hardness: int
    witness: Tuple[int, ...]
    is_tree: bool


def maze_hardness(g: Digraph, v: int, k: int) -> MazeHardness:
    """0/1-weight shortest path (deque BFS) from the entrances to v inside the maze"""
    maze = build_maze(g, v, k)
    single = {int(u) for u, count in zip(maze.vertices, maze.inside_edges) if count == 1}
    weight = {int(u): int(int(u) in single and int(u) != v) for u in maze.vertices}

    cost = {}
    previous = {}
    queue = deque()
    for u in maze.entrance:
        u = int(u)
        cost[u] = weight[u]
        previous[u] = None
        if weight[u]:
            queue.append(u)
        else:
            queue.appendleft(u)

    done = set()
    while queue:
        u = queue.popleft()
        if u in done:
            continue
        done.add(u)
        if u == v:
            break
        for w in g.heads2d[u]:
            w = int(w)
            if not maze.members[w] or w in done:
                continue
            candidate = cost[u] + weight[w]
            if candidate < cost.get(w, math.inf):
                cost[w] = candidate
                previous[w] = u
                if weight[w]:
                    queue.append(w)
                else:
                    queue.appendleft(w)

    path = [v]
    while previous[path[-1]] is not None:
        path.append(previous[path[-1]])

    return MazeHardness(
        center=int(v),
        depth=maze.depth,
        maze=tuple(int(u) for u in maze.vertices),
        single_exit=tuple(sorted(single)),
        hardness=int(cost[v]),
        witness=tuple(reversed(path)),
        is_tree=maze.is_tree,
    )


@dataclass(frozen=True)
class EscapeProbability:
    """P_v(walk leaves N_{<=k}^-(v) no later than it returns to v)"""
    center: int
    depth: int
    value: float
    maze_size: int


def escape_probability(g: Digraph, v: int, k: int, cap: Optional[int] = None) -> EscapeProbability:
    """
    Exact absorbing-chain solve on the maze

    For transient states u != v, q(u) = P_u(exit before v) solves
    (I - Q) q = b; the first step out of v is unrolled.
    """
    cap = ESCAPE_CAP if cap is None else cap
    maze = build_maze(g, v, k)
    if maze.size > cap:
        raise CapExceededError('escape maze', maze.size, cap)

    transient = maze.vertices[maze.vertices != v]
    index = np.full(g.n, -1, dtype=np.int64)
    index[transient] = np.arange(transient.size)
    step = 1.0 / g.r

    q = np.zeros(0)
    if transient.size:
        heads = g.heads2d[transient]
        rows = np.repeat(np.arange(transient.size), g.r)
        cols = index[heads].reshape(-1)
        stay = cols >= 0
        inner = sparse.csc_matrix(
            (np.full(int(stay.sum()), step), (rows[stay], cols[stay])),
            shape=(transient.size, transient.size),
        )
        exits = step * np.count_nonzero(~maze.members[heads], axis=1)
        system = (sparse.identity(transient.size, format='csc') - inner).tocsc()
        q = np.atleast_1d(spsolve(system, exits))

    value = 0.0
    for w in g.heads2d[v]:
        if not maze.members[w]:
            value += step
        elif w != v:
            value += step * q[index[w]]

    return EscapeProbability(center=int(v), depth=maze.depth, value=float(min(1.0, max(0.0, value))),
                             maze_size=maze.size)


def simulate_escape(g: Digraph, v: int, k: int, trials: int, seed,
                    step_cap: int = 10_000_000) -> Tuple[float, float]:
    """Monte Carlo estimate (mean, stderr) of the escape probability"""
    trials = Validator.validate_positive_integer(trials, 'trials')
    maze = build_maze(g, v, k)
    rng = as_seed(seed).generator()
    heads = g.heads2d

    position = heads[np.full(trials, v), rng.integers(0, g.r, size=trials)]
    escaped = np.zeros(trials, dtype=bool)
    active = np.arange(trials)
    steps = 1
    while active.size:
        outside = ~maze.members[position[active]]
        home = position[active] == v
        escaped[active[outside]] = True
        active = active[~(outside | home)]
        if not active.size:
            break
        if steps >= step_cap:
            raise StepBudgetError(f"{active.size} escape walks from {v} still inside the maze")
        position[active] = heads[position[active], rng.integers(0, g.r, size=active.size)]
        steps += 1

    mean = float(escaped.mean())
    return mean, math.sqrt(mean * (1.0 - mean) / trials)
