# -*- coding: utf-8 -*-
"""
تست‌های نمایش و تولید گراف
Graph representation and generation tests
"""

import pytest
import sys
import os
import math
import pickle
from collections import Counter

import numpy as np
from hypothesis import given, settings, strategies as st
from scipy import stats

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from graph_core.digraph import (
    Digraph, Seed, as_seed, generate, generate_simple, sample_simple, simple_acceptance_rate,
    loop_vertices, loop_vertex_probability, cycle_digraph, loop_digraph,
)
from graph_core.serialization import to_text, from_text, to_json, from_json, read_graph, write_graph
from utils.errors import RetryExhaustedError
from utils.validators import ValidationError


@pytest.fixture
def small_graph():
    """فیکسچر گراف کوچک دست‌ساز"""
    # 0 -> 1, 2 ; 1 -> 2, 2 ; 2 -> 0, 2
    return Digraph(3, 2, [1, 2, 2, 2, 0, 2])


class TestSeed:
    """تست‌های بذر تصادفی"""

    def test_rejects_negative_and_oversized(self):
        with pytest.raises(ValidationError):
            Seed(-1)
        with pytest.raises(ValidationError):
            Seed(2 ** 64)

    def test_rejects_bool(self):
        with pytest.raises(ValidationError):
            Seed(True)

    def test_derive_is_deterministic_and_key_sensitive(self):
        base = Seed(42)
        assert base.derive(1, 2) == base.derive(1, 2)
        assert base.derive(1, 2) != base.derive(2, 1)
        assert base.derive(1) != Seed(43).derive(1)

    def test_as_seed_passthrough(self):
        seed = Seed(7)
        assert as_seed(seed) is seed
        assert as_seed(7) == seed


class TestGenerate:
    """تست‌های تولید D(n, r)"""

    @given(n=st.integers(1, 60), r=st.integers(1, 6), seed=st.integers(0, 2 ** 64 - 1))
    @settings(max_examples=50, deadline=None)
    def test_every_vertex_has_r_out_edges(self, n, r, seed):
        g = generate(n, r, seed)
        assert g.heads2d.shape == (n, r)
        assert g.heads.min() >= 0 and g.heads.max() < n
        assert int(g.in_degrees().sum()) == n * r

    @given(seed=st.integers(0, 2 ** 64 - 1))
    @settings(max_examples=25, deadline=None)
    def test_same_seed_same_graph(self, seed):
        assert generate(50, 3, seed) == generate(50, 3, seed)

    def test_different_seeds_differ(self):
        assert generate(100, 2, 1) != generate(100, 2, 2)

    def test_single_vertex_is_all_loops(self):
        g = generate(1, 3, 0)
        assert g.heads.tolist() == [0, 0, 0]
        assert loop_vertices(g) == {0}

    def test_invalid_parameters(self):
        with pytest.raises(ValidationError):
            generate(0, 2, 1)
        with pytest.raises(ValidationError):
            generate(5, 0, 1)

    def test_heads_are_read_only(self):
        g = generate(10, 2, 3)
        with pytest.raises(ValueError):
            g.heads[0] = 1

    def test_heads_are_uniform(self):
        """chi-square against the uniform law on the vertex set"""
        n = 20
        g = generate(n, 500, 11)
        counts = np.bincount(g.heads, minlength=n)
        _, p_value = stats.chisquare(counts)
        assert p_value > 1e-4

    def test_all_outcomes_equally_likely(self):
        """n=3, r=2: هر یک از 3^6 = 729 بردار سر با احتمال 1/729"""
        weights = 3 ** np.arange(6)
        trials = 729 * 20
        index = [int(generate(3, 2, Seed(29).derive(t)).heads @ weights) for t in range(trials)]
        counts = np.bincount(index, minlength=729)
        assert counts.size == 729
        _, p_value = stats.chisquare(counts)
        assert p_value > 1e-4

    def test_in_degree_is_binomial(self):
        """in-degree of a fixed vertex ~ Bin(nr, 1/n)"""
        n, r = 200, 2
        degrees = np.array([generate(n, r, Seed(5).derive(t)).in_degrees()[0] for t in range(2000)])
        assert abs(degrees.mean() - r) < 3 * math.sqrt(r * (1 - 1 / n) / degrees.size)


class TestStructureHelpers:
    """تست‌های توابع کمکی ساختاری"""

    def test_reverse_index(self, small_graph):
        assert small_graph.in_tails(2).tolist() == [0, 1, 1, 2]
        assert small_graph.in_tails(0).tolist() == [2]
        assert small_graph.in_degrees().tolist() == [1, 1, 4]

    def test_adjacency_counts_multiplicity(self, small_graph):
        matrix = small_graph.adjacency().toarray()
        assert matrix[1, 2] == 2
        assert matrix.sum() == 6

    def test_is_simple(self, small_graph):
        assert not small_graph.is_simple()
        assert Digraph(3, 2, [1, 2, 0, 2, 0, 1]).is_simple()

    def test_cycle_and_loop_families(self):
        assert cycle_digraph(4, 2).heads2d[3].tolist() == [0, 0]
        assert loop_vertices(loop_digraph(5, 2)) == set(range(5))

    def test_pickle_roundtrip_drops_lock(self):
        g = generate(30, 2, 9)
        g.reverse_index()
        clone = pickle.loads(pickle.dumps(g))
        assert clone == g
        assert clone.in_tails(3).tolist() == g.in_tails(3).tolist()


class TestSimpleSampler:
    """تست‌های نمونه‌گیری ساده"""

    def test_result_is_simple(self):
        g, attempts = sample_simple(40, 3, 17)
        assert g.is_simple()
        assert attempts >= 1
        assert generate_simple(40, 3, 17) == g

    def test_needs_n_greater_than_r(self):
        with pytest.raises(ValidationError):
            generate_simple(3, 3, 0)
        with pytest.raises(ValidationError):
            generate_simple(2, 2, 0)

    def test_uniform_over_simple_digraphs(self):
        """n=3, r=2: هر رأس به دو رأس دیگر، ۲ ترتیب برای هر رأس، ۸ گراف"""
        trials = 2400
        outcomes = [tuple(generate_simple(3, 2, Seed(31).derive(t)).heads.tolist()) for t in range(trials)]
        for heads in set(outcomes):
            g = Digraph(3, 2, heads)
            assert g.is_simple()
            assert all(sorted(g.out_heads(v).tolist()) == [u for u in range(3) if u != v] for v in range(3))
        counts = np.array(sorted(Counter(outcomes).values()))
        assert counts.size == 8
        _, p_value = stats.chisquare(counts)
        assert p_value > 1e-4

    def test_retry_cap(self, monkeypatch):
        monkeypatch.setattr(Digraph, 'is_simple', lambda self: False)
        with pytest.raises(RetryExhaustedError) as excinfo:
            generate_simple(10, 2, 0, max_attempts=5)
        assert excinfo.value.attempts == 5

    def test_acceptance_rate_matches_exact_probability(self):
        # Pr(simple) for n=4, r=2: per vertex 3*2/16, independent
        rate, se = simple_acceptance_rate(4, 2, 4000, 3)
        exact = (6 / 16) ** 4
        assert abs(rate - exact) <= 4 * max(se, 1e-3)


class TestLoopVertices:
    """تست‌های رأس‌های حلقه"""

    def test_probability_formula(self):
        assert loop_vertex_probability(2, 1) == pytest.approx(0.75)
        assert loop_vertex_probability(10 ** 6, 2) < 1e-5

    def test_loop_vertex_frequency(self):
        n, r, trials = 5, 2, 4000
        hits = sum(bool(loop_vertices(generate(n, r, Seed(21).derive(t)))) for t in range(trials))
        p = loop_vertex_probability(n, r)
        assert abs(hits / trials - p) <= 4 * math.sqrt(p * (1 - p) / trials)


class TestSerialization:
    """تست‌های ذخیره و بازخوانی"""

    def test_text_format(self, small_graph):
        text = to_text(small_graph)
        assert text.splitlines()[0] == 'n=3 r=2'
        assert text.splitlines()[1] == '1: 2 3'
        assert from_text(text) == small_graph

    def test_json_roundtrip(self, small_graph):
        assert from_json(to_json(small_graph)) == small_graph

    def test_file_autodetect(self, tmp_path, small_graph):
        for fmt in ('text', 'json'):
            path = tmp_path / f'g.{fmt}'
            write_graph(small_graph, path, fmt)
            assert read_graph(path) == small_graph

    @pytest.mark.parametrize('text', [
        '',
        'n=2\n1: 1\n2: 1\n',
        'n=2 r=1\n1: 1\n',
        'n=2 r=1\n2: 1\n1: 1\n',
        'n=2 r=1\n1: 3\n2: 1\n',
        'n=2 r=1\n1: x\n2: 1\n',
    ])
    def test_malformed_text_rejected(self, text):
        with pytest.raises(ValidationError):
            from_text(text)
