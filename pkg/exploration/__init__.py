# -*- coding: utf-8 -*-
"""
Exploration Package
===================
جستجوی همسایگی‌های ورودی و خروجی
"""

from exploration.bfs import (
    OUT, IN, UNREACHED, BfsResult, GrowthProfile,
    explore, obfs, ibfs, iter_layers, reach_set,
    k0, k1, default_thresholds, in_growth_profile, out_growth_profile, next_layer_law,
)
