# -*- coding: utf-8 -*-
"""
تست‌های مولفه‌های قویاً همبند
Strong component tests
"""

import pytest
import sys
import os
import math

import numpy as np
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from graph_core.digraph import Digraph, Seed, cycle_digraph, generate, loop_digraph
from branching.constants import solve_constants
from structure.scc import scc_decompose, is_attractive, is_closed


def closure(g):
    """ماتریس دسترسی (شامل خود رأس)"""
    reach = np.eye(g.n, dtype=bool)
    reach[np.repeat(np.arange(g.n), g.r), g.heads] = True
    for k in range(g.n):
        reach |= reach[:, [k]] & reach[[k], :]
    return reach


def brute_period(g, members):
    """gcd طول چرخه‌ها در D0 با توان‌های ماتریس مجاورت"""
    vertices = np.flatnonzero(members)
    adjacency = np.zeros((vertices.size, vertices.size), dtype=np.int64)
    index = {int(v): i for i, v in enumerate(vertices)}
    for v in vertices:
        for w in g.heads2d[v]:
            if int(w) in index:
                adjacency[index[int(v)], index[int(w)]] = 1
    value = 0
    power = np.eye(vertices.size, dtype=np.int64)
    for k in range(1, 2 * vertices.size + 1):
        power = np.minimum(power @ adjacency, 1)
        if power[0, 0]:
            value = math.gcd(value, k)
    return value


graphs = st.builds(
    lambda n, r, seed: generate(n, r, seed),
    st.integers(1, 20), st.integers(1, 3), st.integers(0, 2 ** 32),
)


class TestDecomposition:
    """تست‌های تجزیه"""

    @given(g=graphs)
    @settings(max_examples=60, deadline=None)
    def test_components_match_transitive_closure(self, g):
        reach = closure(g)
        mutual = reach & reach.T
        dec = scc_decompose(g)
        for u in range(g.n):
            same = dec.comp_id == dec.comp_id[u]
            assert same.tolist() == mutual[u].tolist()

    @given(g=graphs)
    @settings(max_examples=60, deadline=None)
    def test_d0_is_largest_with_smallest_vertex_tie_break(self, g):
        dec = scc_decompose(g)
        sizes = dec.comp_sizes
        best = sizes.max()
        assert dec.d0_size == best
        first_of_best = min(v for v in range(g.n) if sizes[dec.comp_id[v]] == best)
        assert dec.in_d0(first_of_best)

    @given(g=graphs)
    @settings(max_examples=60, deadline=None)
    def test_attractive_iff_every_vertex_reaches_d0(self, g):
        dec = scc_decompose(g)
        reach = closure(g)
        expected = bool(reach[:, dec.d0_vertices].any(axis=1).all())
        assert dec.attractive == expected == is_attractive(g, dec)

    @given(g=graphs)
    @settings(max_examples=40, deadline=None)
    def test_period_matches_cycle_gcd(self, g):
        dec = scc_decompose(g)
        assert dec.period == brute_period(g, dec.d0_mask)

    def test_component_ids_are_canonical(self):
        g = generate(40, 2, 5)
        dec = scc_decompose(g)
        firsts = [int(np.flatnonzero(dec.comp_id == c)[0]) for c in range(dec.count)]
        assert firsts == sorted(firsts)


class TestSpecialFamilies:
    """تست‌های خانواده‌های قطعی"""

    def test_cycle(self):
        dec = scc_decompose(cycle_digraph(7, 2))
        assert dec.count == 1
        assert dec.d0_size == 7
        assert dec.attractive
        assert dec.period == 7
        assert dec.to_json()['sizes'] == [7]

    def test_all_loops(self):
        dec = scc_decompose(loop_digraph(4, 2))
        assert dec.count == 4
        assert dec.d0_vertices.tolist() == [0]
        assert not dec.attractive
        assert dec.period == 1

    def test_loopless_singleton_d0_has_period_zero(self):
        # 0 -> 1 -> 1: both components are singletons, D0 = {0} has no loop
        g = Digraph(2, 1, [1, 1])
        dec = scc_decompose(g)
        assert dec.d0_vertices.tolist() == [0]
        assert dec.period == 0

    def test_closed_d0(self):
        g = Digraph(3, 1, [1, 0, 0])
        dec = scc_decompose(g)
        assert dec.d0_vertices.tolist() == [0, 1]
        assert is_closed(g, dec)
        assert dec.attractive
        assert dec.period == 2


class TestGiantFraction:
    """تست‌های اندازه مولفه بزرگ"""

    def test_fraction_near_lambda(self):
        """|D0|/n concentrates at λ_r"""
        n, r = 20000, 2
        lam = solve_constants(r).lambda_r
        fractions = [scc_decompose(generate(n, r, Seed(3).derive(t))).d0_fraction for t in range(5)]
        assert abs(np.mean(fractions) - lam) < 0.02

    def test_attractive_whp(self):
        hits = sum(scc_decompose(generate(5000, 3, Seed(9).derive(t))).attractive for t in range(10))
        assert hits >= 8
