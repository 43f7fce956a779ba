# -*- coding: utf-8 -*-
"""
Structure Package
=================
مولفه‌های قویاً همبند
"""

from structure.scc import SccDecomposition, scc_decompose, is_attractive, is_closed, period
