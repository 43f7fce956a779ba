# -*- coding: utf-8 -*-
"""
Strongly connected components
=============================
مولفه‌های قویاً همبند، مولفه بزرگ D0، جذب‌کنندگی و دوره تناوب

Component ids are canonical: components are numbered by their smallest
vertex, so ids and the D0 tie-break do not depend on the SCC routine.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.sparse.csgraph import connected_components

from exploration.bfs import IN, OUT, explore, reach_set
from graph_core.digraph import Digraph
import logging

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SccDecomposition:
    """
    comp_id[v] is the component of v; comp_sizes[c] its size; d0 the largest
    component (ties: smallest labelled vertex). period is 0 when D0 is a
    single vertex without a loop.
    """
    comp_id: np.ndarray
    comp_sizes: np.ndarray
    d0: int
    attractive: bool = False
    period: int = 0

    @property
    def n(self) -> int:
        return int(self.comp_id.size)

    @property
    def count(self) -> int:
        return int(self.comp_sizes.size)

    @property
    def d0_mask(self) -> np.ndarray:
        return self.comp_id == self.d0

    @property
    def d0_vertices(self) -> np.ndarray:
        return np.flatnonzero(self.d0_mask)

    @property
    def d0_size(self) -> int:
        return int(self.comp_sizes[self.d0])

    @property
    def d0_fraction(self) -> float:
        return self.d0_size / self.n

    def in_d0(self, v: int) -> bool:
        return bool(self.comp_id[v] == self.d0)

    def to_json(self) -> dict:
        return {
            'sizes': sorted((int(s) for s in self.comp_sizes), reverse=True),
            'd0_size': self.d0_size,
            'attractive': bool(self.attractive),
            'period': int(self.period),
        }


def _components(g: Digraph) -> SccDecomposition:
    _, labels = connected_components(g.adjacency(), directed=True, connection='strong')
    # renumber components by smallest member
    _, first_member = np.unique(labels, return_index=True)
    rank = np.empty(first_member.size, dtype=np.int64)
    rank[np.argsort(first_member)] = np.arange(first_member.size)
    comp_id = rank[labels]
    comp_sizes = np.bincount(comp_id)
    return SccDecomposition(comp_id=comp_id, comp_sizes=comp_sizes, d0=int(np.argmax(comp_sizes)))


def scc_decompose(g: Digraph) -> SccDecomposition:
    """SCCs, D0, attractivity of D0 and its period"""
    dec = _components(g)
    dec = replace(dec, attractive=is_attractive(g, dec), period=period(g, dec))
    logger.debug(
        f"SCC: {dec.count} components, |D0|={dec.d0_size}, attractive={dec.attractive}, period={dec.period}"
    )
    return dec


def is_attractive(g: Digraph, dec: SccDecomposition) -> bool:
    """True iff every vertex has a directed path into D0"""
    return bool(reach_set(g, dec.d0_vertices, IN).all())


def is_closed(g: Digraph, dec: SccDecomposition) -> bool:
    """True iff no edge leaves D0"""
    members = dec.d0_mask
    return bool(members[g.heads2d[members]].all())


def period(g: Digraph, dec: SccDecomposition) -> int:
    """
    gcd of cycle lengths in D0

    Levels come from a BFS inside D0; every edge (u, w) inside D0 contributes
    level(u) + 1 - level(w).
    """
    members = dec.d0_mask
    vertices = np.flatnonzero(members)
    levels = explore(g, int(vertices[0]), OUT, within=members).dist

    tails = np.repeat(vertices, g.r)
    heads = g.heads2d[vertices].reshape(-1)
    inside = members[heads]
    gaps = np.abs(levels[tails[inside]] + 1 - levels[heads[inside]])
    if not gaps.size:
        return 0
    return int(math.gcd(*(int(x) for x in np.unique(gaps))))
