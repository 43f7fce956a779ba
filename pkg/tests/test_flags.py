# -*- coding: utf-8 -*-
"""
تست‌های تشخیص پرچم
Flag detection tests
"""

import pytest
import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from flags.detector import FlagParams, find_flags, is_flag, validate_flag_bound
from graph_core.digraph import Digraph, Seed, generate, loop_digraph
from stationary.maze import maze_hardness
from stationary.solvers import stationary
from structure.scc import is_closed, scc_decompose
from utils.validators import ValidationError


# complete binary in-tree of depth 3 rooted at 0; second edges point into the last layer
TREE_HEADS = [
    7, 8,
    0, 9, 0, 10,
    1, 11, 1, 12, 2, 13, 2, 14,
    3, 8, 3, 9, 4, 10, 4, 11, 5, 12, 5, 13, 6, 14, 6, 7,
]


@pytest.fixture
def tree_graph():
    """فیکسچر درخت دودویی ورودی"""
    return Digraph(15, 2, TREE_HEADS)


@pytest.fixture
def tree_params():
    """k* = 2, آستانه ۴"""
    return FlagParams.for_graph(15, 2, epsilon=1.0, threshold=4, size_cap=100)


class TestFlagParams:
    """تست‌های پارامترها"""

    def test_k_star(self, tree_params):
        assert tree_params.k_star == 2
        assert tree_params.threshold == 4
        assert tree_params.to_json()['size_cap'] == 100

    def test_defaults_follow_log_powers(self):
        params = FlagParams.for_graph(10 ** 6, 2)
        assert params.threshold < params.size_cap
        assert params.k_star >= 1

    def test_epsilon_too_large(self):
        with pytest.raises(ValidationError):
            FlagParams.for_graph(100, 2, epsilon=2.0)

    def test_needs_two_vertices(self):
        with pytest.raises(ValidationError):
            FlagParams.for_graph(1, 2)


class TestIsFlag:
    """تست‌های تشخیص تک‌رأسی"""

    def test_tree_root_is_flag(self, tree_graph, tree_params):
        report = is_flag(tree_graph, 0, tree_params)
        assert report.is_flag
        assert report.k1 == 2
        assert report.maze_size == 7
        assert report.is_tree
        assert report.entrance_size == 4
        assert report.in_d0

    def test_hardness_equals_k1_on_flag(self, tree_graph, tree_params):
        report = is_flag(tree_graph, 0, tree_params)
        assert maze_hardness(tree_graph, 0, report.k1).hardness == report.k1

    def test_non_tree_ball(self, tree_graph):
        params = FlagParams.for_graph(15, 2, epsilon=1.0, threshold=8, size_cap=100)
        report = is_flag(tree_graph, 0, params)
        assert report.k1 == 3
        assert not report.is_tree
        assert not report.is_flag

    def test_size_cap_stops_scan(self, tree_graph):
        params = FlagParams.for_graph(15, 2, epsilon=1.0, threshold=4, size_cap=5)
        report = is_flag(tree_graph, 0, params)
        assert report.truncated
        assert not report.is_flag

    def test_threshold_before_k_star(self, tree_graph):
        params = FlagParams.for_graph(15, 2, epsilon=0.1, threshold=4, size_cap=100)
        assert params.k_star == 3
        report = is_flag(tree_graph, 0, params)
        assert report.k1 == 2
        assert report.truncated
        assert not report.is_flag

    def test_csv_row(self, tree_graph, tree_params):
        row = is_flag(tree_graph, 0, tree_params).csv_row(15, 2, 7)
        assert row == {'n': 15, 'r': 2, 'seed': 7, 'vertex': 1, 'k1': 2,
                       'maze_size': 7, 'is_tree': 1, 'is_flag': 1}

    def test_bad_vertex(self, tree_graph, tree_params):
        with pytest.raises(ValidationError):
            is_flag(tree_graph, 15, tree_params)


class TestFindFlags:
    """تست‌های جستجوی همه پرچم‌ها"""

    def test_all_loops_has_no_flags(self):
        params = FlagParams.for_graph(8, 2, epsilon=1.0, threshold=2, size_cap=100)
        assert find_flags(loop_digraph(8, 2), params) == []

    def test_tree_graph(self, tree_graph, tree_params):
        flags = find_flags(tree_graph, tree_params, workers=1)
        assert 0 in [report.vertex for report in flags]
        assert [report.vertex for report in flags] == sorted(report.vertex for report in flags)

    def test_flags_on_random_graphs(self):
        """every flag has a tree maze whose hardness is k1"""
        seen = 0
        for t in range(5):
            g = generate(3000, 2, Seed(17).derive(t))
            params = FlagParams.for_graph(g.n, g.r, epsilon=1.0, threshold=8, size_cap=4000)
            for report in find_flags(g, params, workers=1):
                seen += 1
                assert report.is_tree
                assert report.k1 >= params.k_star
                assert maze_hardness(g, report.vertex, report.k1).hardness == report.k1
        assert seen > 0

    def test_pool_matches_serial(self):
        g = generate(16384, 2, 1)
        params = FlagParams.for_graph(g.n, g.r, epsilon=1.0, threshold=10, size_cap=1000)
        dec = scc_decompose(g)
        assert find_flags(g, params, dec, workers=2) == find_flags(g, params, dec, workers=1)


class TestFlagBound:
    """تست‌های کران π روی پرچم"""

    def test_bound_on_tree_graph(self, tree_graph, tree_params):
        dec = scc_decompose(tree_graph)
        assert is_closed(tree_graph, dec)
        profile = stationary(tree_graph, dec)
        report = is_flag(tree_graph, 0, tree_params, dec)
        bound = validate_flag_bound(profile, report, tree_graph, tree_params.k_star)
        assert bound.holds
        assert bound.details['entrance'] == 4

    def test_bound_on_random_flags(self):
        for t in range(20):
            g = generate(1500, 2, Seed(23).derive(t))
            dec = scc_decompose(g)
            if is_closed(g, dec):
                break
        else:
            pytest.skip("no closed D0 among the sampled graphs")
        profile = stationary(g, dec)
        params = FlagParams.for_graph(g.n, g.r, epsilon=1.0, threshold=8, size_cap=2000)
        for report in find_flags(g, params, dec, workers=1):
            assert validate_flag_bound(profile, report, g, params.k_star).holds

    def test_rejects_non_flag(self, tree_graph):
        params = FlagParams.for_graph(15, 2, epsilon=1.0, threshold=8, size_cap=100)
        dec = scc_decompose(tree_graph)
        profile = stationary(tree_graph, dec)
        with pytest.raises(ValidationError):
            validate_flag_bound(profile, is_flag(tree_graph, 0, params, dec), tree_graph, params.k_star)

    def test_rejects_k_star_above_k1(self, tree_graph, tree_params):
        dec = scc_decompose(tree_graph)
        profile = stationary(tree_graph, dec)
        report = is_flag(tree_graph, 0, tree_params, dec)
        with pytest.raises(ValidationError):
            validate_flag_bound(profile, report, tree_graph, 3)
