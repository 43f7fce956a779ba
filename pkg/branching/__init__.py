# -*- coding: utf-8 -*-
"""
Branching Package
=================
ثابت‌های مدل و فرایند شاخه‌ای گالتون-واتسون
"""

from branching.constants import ModelConstants, solve_constants, constants_table
from branching.galton_watson import (
    GwSample, TailEstimate, gw_sample, gw_generation_sizes, gw_extinction_frequency,
    gw_tail_exact, gw_tail_prob, tail_decay_ratios,
)
from branching.coupling import (
    CouplingEstimate, LayerMarginal, bfs_shape, gw_shape, coupling_tv, first_layer_law, layer_marginal_tv,
)
