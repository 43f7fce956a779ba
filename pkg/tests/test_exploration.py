# -*- coding: utf-8 -*-
"""
تست‌های جستجوی سطح‌به‌سطح
BFS exploration tests
"""

import pytest
import sys
import os
import math
from collections import deque

import numpy as np
from hypothesis import given, settings, strategies as st
from scipy import stats

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from exploration.bfs import (
    IN, OUT, UNREACHED, obfs, ibfs, iter_layers, reach_set, k0, k1, default_thresholds,
    in_growth_profile, out_growth_profile, next_layer_law,
)
from graph_core.digraph import Digraph, Seed, cycle_digraph, generate, loop_digraph
from utils.stats import discrete_ks
from utils.validators import ValidationError


def floyd_warshall(g):
    """فاصله‌های همه جفت‌ها (np.inf برای ناممکن)"""
    dist = np.full((g.n, g.n), np.inf)
    np.fill_diagonal(dist, 0)
    for u in range(g.n):
        for w in g.heads2d[u]:
            if u != w:
                dist[u, w] = 1
    for k in range(g.n):
        dist = np.minimum(dist, dist[:, [k]] + dist[[k], :])
    return dist


def naive_bfs(g, v, direction):
    """BFS مرجع: صف FIFO، همسایه‌های جدید به ترتیب شماره"""
    neighbours = {u: set() for u in range(g.n)}
    for u in range(g.n):
        for w in g.heads2d[u]:
            if direction == OUT:
                neighbours[u].add(int(w))
            else:
                neighbours[int(w)].add(u)
    order, seen, queue = [v], {v}, deque([v])
    while queue:
        u = queue.popleft()
        for w in sorted(neighbours[u]):
            if w not in seen:
                seen.add(w)
                order.append(w)
                queue.append(w)
    return order


graphs = st.builds(
    lambda n, r, seed: generate(n, r, seed),
    st.integers(1, 25), st.integers(1, 3), st.integers(0, 2 ** 32),
)


class TestBfsDistances:
    """تست‌های فاصله‌ها"""

    @given(g=graphs)
    @settings(max_examples=60, deadline=None)
    def test_obfs_matches_floyd_warshall(self, g):
        dist = floyd_warshall(g)
        for v in range(min(g.n, 5)):
            search = obfs(g, v)
            expected = np.where(np.isinf(dist[v]), UNREACHED, dist[v]).astype(np.int64)
            assert search.dist.tolist() == expected.tolist()

    @given(g=graphs)
    @settings(max_examples=60, deadline=None)
    def test_ibfs_matches_transpose_distances(self, g):
        dist = floyd_warshall(g)
        for v in range(min(g.n, 5)):
            search = ibfs(g, v)
            expected = np.where(np.isinf(dist[:, v]), UNREACHED, dist[:, v]).astype(np.int64)
            assert search.dist.tolist() == expected.tolist()

    @given(g=graphs)
    @settings(max_examples=40, deadline=None)
    def test_layers_partition_reached_set(self, g):
        search = obfs(g, 0)
        layers = search.layers
        assert layers[0].tolist() == [0]
        assert all(layer.size for layer in layers)
        combined = np.concatenate(layers)
        assert np.unique(combined).size == combined.size
        assert set(combined.tolist()) == set(np.flatnonzero(search.reached()).tolist())

    def test_cycle_distances(self):
        g = cycle_digraph(6, 2)
        search = obfs(g, 0)
        assert search.dist.tolist() == [0, 1, 2, 3, 4, 5]
        assert search.depth == 5
        assert ibfs(g, 0).distance(1) == 5

    def test_unreachable_distance_is_inf(self):
        g = loop_digraph(3, 2)
        assert obfs(g, 0).distance(2) == math.inf
        assert len(obfs(g, 0).layers) == 1


class TestExplorationOrder:
    """تست‌های ترتیب کشف"""

    @given(g=graphs, direction=st.sampled_from([OUT, IN]))
    @settings(max_examples=60, deadline=None)
    def test_order_is_fifo(self, g, direction):
        v = g.n // 2
        search = obfs(g, v) if direction == OUT else ibfs(g, v)
        assert search.order.tolist() == naive_bfs(g, v, direction)

    def test_parent_is_first_queue_vertex(self):
        # 0 <- 1, 0 <- 2, 1 <- 3, 2 <- 3: in-search from 0 discovers 3 through 1
        g = Digraph(4, 2, [0, 0, 0, 0, 0, 0, 1, 2])
        search = ibfs(g, 0)
        assert search.parent[3] == 1

    def test_step_sets(self):
        g = generate(30, 2, 4)
        search = ibfs(g, 0)
        order = search.order.tolist()
        for m in range(len(order) + 1):
            explored, queue = search.step_sets(m)
            assert explored.tolist() == order[:m]
            discovered = set(order[:m])
            for u in order[:m]:
                discovered |= set(np.flatnonzero(search.parent == u).tolist())
            discovered.add(order[0])
            assert set(queue.tolist()) == discovered - set(order[:m])


class TestMultiSource:
    """تست‌های جستجوی چندمبدأ"""

    def test_reach_set_out_and_in(self):
        g = Digraph(4, 1, [1, 2, 2, 0])
        assert reach_set(g, [0], OUT).tolist() == [True, True, True, False]
        assert reach_set(g, [2], IN).tolist() == [True, True, True, True]

    def test_within_restricts_search(self):
        g = cycle_digraph(5, 1)
        mask = np.array([True, True, True, False, True])
        layers = list(iter_layers(g, [0], OUT, within=mask))
        assert [layer.tolist() for layer in layers] == [[0], [1], [2]]

    def test_max_depth(self):
        g = cycle_digraph(10, 2)
        assert len(list(iter_layers(g, [0], OUT, max_depth=3))) == 4

    def test_bad_direction(self):
        with pytest.raises(ValidationError):
            list(iter_layers(cycle_digraph(3, 1), [0], 'sideways'))


class TestThresholdDepths:
    """تست‌های k0 و k1"""

    def test_default_thresholds(self):
        assert default_thresholds(1) == (1, 1)
        low, high = default_thresholds(2 ** 16)
        assert low == math.ceil(math.log(2 ** 16) ** 4)
        assert high == math.ceil(math.log(2 ** 16) ** 7)

    def test_dead_end_vertex(self):
        # vertex 3 has no in-edges
        g = Digraph(4, 1, [1, 2, 0, 0])
        assert k0(g, 3, 2) == 1
        assert k1(g, 3, 2) is None

    def test_threshold_reached(self):
        # binary in-tree: 0 -> 0 ; 1, 2 -> 0 ; 3, 4 -> 1 ; 5, 6 -> 2
        heads = [0, 0, 0, 1, 1, 2, 2]
        g = Digraph(7, 1, heads)
        assert k1(g, 0, 4) == 2
        assert k0(g, 0, 4) == 2
        assert k1(g, 0, 1) == 0

    @given(g=graphs, threshold=st.integers(1, 8))
    @settings(max_examples=40, deadline=None)
    def test_k0_equals_k1_when_threshold_met(self, g, threshold):
        value = k1(g, 0, threshold)
        if value is not None:
            assert k0(g, 0, threshold) == value


class TestGrowthProfiles:
    """تست‌های رشد همسایگی"""

    def test_in_profile_matches_layers(self):
        g = generate(200, 2, 8)
        profile = in_growth_profile(g, 5, 6)
        search = ibfs(g, 5, max_depth=6)
        assert list(profile.sizes) == [int(search.layer(k).size) for k in range(7)]
        assert profile.cumulative[-1] == int(search.ball(6).size)
        assert profile.csv_rows()[0] == '0,1,1'

    @given(g=graphs)
    @settings(max_examples=40, deadline=None)
    def test_out_ball_bound(self, g):
        """|N^+_{<=d}(u)| < r^{d+1}"""
        profile = out_growth_profile(g, 0, 5)
        for d, total in enumerate(profile.cumulative):
            assert total < g.r ** (d + 1) or g.r == 1 and total <= d + 1

    def test_next_layer_law_first_layer(self):
        """d_1^- of a fixed vertex against its conditional binomial law"""
        n, r = 400, 2
        law = next_layer_law(n, r, q=1, p=1, p_prev=0)
        samples = [ibfs(generate(n, r, Seed(13).derive(t)), 0, max_depth=1).layer(1).size for t in range(3000)]
        result = discrete_ks(samples, law, seed=1)
        assert result.pvalue > 1e-3

    def test_next_layer_law_second_layer(self):
        """d_2^- given d_1^- = q: Bin(n - 1 - q, 1 - (1 - q/(n - 1))^r)"""
        n, r, trials = 1000, 2, 3000
        rng = np.random.default_rng(2)
        u = np.empty(trials)
        for t in range(trials):
            search = ibfs(generate(n, r, Seed(17).derive(t)), 0, max_depth=2)
            q = int(search.layer(1).size)
            law = next_layer_law(n, r, q=q, p=1 + q, p_prev=1)
            x = int(search.layer(2).size)
            u[t] = law.cdf(x - 1) + rng.random() * law.pmf(x)
        assert stats.kstest(u, 'uniform').pvalue > 1e-3


class TestStepSets:
    """تست‌های مجموعه‌های R_m و S_m"""

    def test_step_sets_partition_discovery(self):
        g = generate(300, 3, 4)
        search = obfs(g, 0)
        for m in (0, 1, 5, 20):
            explored, queued = search.step_sets(m)
            assert explored.tolist() == search.order[:m].tolist()
            assert not set(explored.tolist()) & set(queued.tolist())
            assert explored.size + queued.size <= g.r * m + 1

    def test_unexplored_edges_dominated_by_binomial(self):
        """|E(w, R_m ∪ S_m)| برای w کاوش‌نشده کوچک‌تر تصادفی از Bin(r, (rm+1)/n)"""
        n, r, m, trials = 100, 2, 10, 4000
        w = n - 1
        counts = []
        for t in range(trials):
            g = generate(n, r, Seed(23).derive(t))
            explored, queued = obfs(g, 0).step_sets(m)
            if w in set(explored.tolist()):
                continue
            members = np.zeros(n, dtype=bool)
            members[explored] = True
            members[queued] = True
            counts.append(g.edges_into(w, members))
        counts = np.array(counts)
        assert counts.size > trials // 2
        bound = stats.binom(r, (r * m + 1) / n)
        for x in range(r + 1):
            empirical = np.mean(counts <= x)
            se = math.sqrt(max(empirical * (1 - empirical), 1e-4) / counts.size)
            assert empirical >= bound.cdf(x) - 4 * se
