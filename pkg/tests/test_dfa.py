# -*- coding: utf-8 -*-
"""
تست‌های ماشین متناهی تصادفی
Random DFA tests
"""

import pytest
import sys
import os

import numpy as np
from hypothesis import given, settings, strategies as st

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from dfa.automaton import (
    Dfa, convergence_profile, from_text, m_step_law, parse_word, random_dfa, run_word, to_text,
    tv_envelope, uniform_word_visit_law, walk_trajectory,
)
from graph_core.digraph import Seed, cycle_digraph, generate
from stationary.solvers import stationary
from structure.scc import is_closed, scc_decompose
from utils.validators import ValidationError


def naive_run(d, word):
    state = d.start
    rows = d.graph.heads2d.tolist()
    for symbol in word:
        state = rows[state][symbol]
    return state


class TestConstruction:
    """تست‌های ساخت DFA"""

    def test_deterministic_in_seed(self):
        assert random_dfa(30, 2, 4) == random_dfa(30, 2, 4)
        assert random_dfa(30, 2, 4) != random_dfa(30, 2, 5)

    def test_transitions_come_from_generate(self):
        assert random_dfa(30, 3, 8).graph == generate(30, 3, 8)

    def test_single_state(self):
        d = random_dfa(1, 3, 0)
        assert d.start == 0
        assert run_word(d, [0, 2, 1, 1])[0] == 0

    def test_accepting_shape_checked(self):
        with pytest.raises(ValidationError):
            Dfa(graph=cycle_digraph(3, 2), start=0, accepting=np.ones(2, dtype=bool))

    def test_start_checked(self):
        with pytest.raises(ValidationError):
            Dfa(graph=cycle_digraph(3, 2), start=3, accepting=np.ones(3, dtype=bool))

    def test_hashable(self):
        d = random_dfa(10, 2, 1)
        assert len({d, random_dfa(10, 2, 1)}) == 1


class TestRunWord:
    """تست‌های اجرای کلمه"""

    @given(seed=st.integers(0, 2 ** 32), word=st.lists(st.integers(0, 2), max_size=40))
    @settings(max_examples=50, deadline=None)
    def test_matches_naive(self, seed, word):
        d = random_dfa(12, 3, seed)
        state, accepted = run_word(d, word)
        assert state == naive_run(d, word)
        assert accepted == bool(d.accepting[state])

    def test_cycle_counts_length(self):
        d = Dfa(graph=cycle_digraph(5, 2), start=0, accepting=np.array([1, 0, 0, 0, 0], dtype=bool))
        assert run_word(d, [0, 1, 1]) == (3, False)
        assert run_word(d, [1] * 10) == (0, True)

    def test_empty_word(self):
        d = random_dfa(8, 2, 3)
        assert run_word(d, [])[0] == d.start

    def test_symbol_outside_alphabet(self):
        d = random_dfa(8, 2, 3)
        with pytest.raises(ValidationError):
            run_word(d, [0, 2])
        with pytest.raises(ValidationError):
            run_word(d, [-1])


class TestWalks:
    """تست‌های گام تصادفی"""

    def test_trajectory_replays(self):
        d = random_dfa(50, 2, 6)
        symbols, states = walk_trajectory(d, 100, seed=2)
        assert states[0] == d.start
        assert run_word(d, symbols)[0] == states[-1]
        assert run_word(d, symbols[:37])[0] == states[37]

    def test_m_step_law_is_distribution(self):
        law = m_step_law(random_dfa(40, 3, 1), 25)
        assert law.sum() == pytest.approx(1.0)
        assert (law >= 0).all()

    def test_cycle_m_step_law(self):
        d = Dfa(graph=cycle_digraph(6, 2), start=2, accepting=np.zeros(6, dtype=bool))
        assert m_step_law(d, 7).tolist() == [0, 0, 0, 1, 0, 0]

    def test_uniform_words_match_exact_law(self):
        d = random_dfa(60, 2, 12)
        exact = m_step_law(d, 30)
        trials = 20000
        empirical = uniform_word_visit_law(d, 30, trials, seed=4)
        assert 0.5 * np.abs(empirical - exact).sum() <= tv_envelope(exact, trials)

    def test_convergence_to_stationary(self):
        for t in range(30):
            g = generate(300, 2, Seed(41).derive(t))
            dec = scc_decompose(g)
            if is_closed(g, dec):
                break
        else:
            pytest.skip("no closed D0 among the sampled graphs")
        profile = stationary(g, dec)
        target = np.zeros(g.n)
        target[profile.support] = profile.pi
        d = Dfa(graph=g, start=int(dec.d0_vertices[0]), accepting=np.zeros(g.n, dtype=bool))
        distances = convergence_profile(d, target, [0, 10, 50, 200])
        assert (np.diff(distances) <= 1e-12).all()
        assert distances[-1] < distances[0]


class TestTextFormat:
    """تست‌های قالب متنی"""

    def test_roundtrip(self):
        d = random_dfa(7, 3, 9)
        assert from_text(to_text(d)) == d

    def test_header_is_one_based(self):
        d = Dfa(graph=cycle_digraph(3, 1), start=0, accepting=np.array([0, 1, 0], dtype=bool))
        assert to_text(d) == '3 1 1\n1: 2 0\n2: 3 1\n3: 1 0\n'

    @pytest.mark.parametrize('text', [
        '',
        '2 1 1\n1: 2 0\n',
        '2 1 1\n2: 2 0\n1: 1 0\n',
        '2 1 1\n1: 2 3\n2: 1 0\n',
        '2 1 x\n1: 2 0\n2: 1 0\n',
    ])
    def test_malformed(self, text):
        with pytest.raises(ValidationError):
            from_text(text)

    def test_parse_word(self):
        assert parse_word(' 0 1\n1 ').tolist() == [0, 1, 1]
        with pytest.raises(ValidationError):
            parse_word('0 a')
