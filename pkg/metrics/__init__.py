# -*- coding: utf-8 -*-
"""
Metrics Package
===============
قطر و فاصله‌ها
"""

from metrics.diameter import (
    DiameterReport, diameter, diameter_restricted, sample_distance, typical_distances,
    eccentricity, trivial_lower_bound,
)
