# -*- coding: utf-8 -*-
"""
DFA Package
===========
ماشین متناهی قطعی تصادفی
"""

from dfa.automaton import (
    Dfa, random_dfa, run_word, walk_trajectory, uniform_word_visit_law, m_step_law,
    tv_envelope, convergence_profile, to_text, from_text, parse_word,
)
