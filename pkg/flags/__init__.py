# -*- coding: utf-8 -*-
"""
Flags Package
=============
تشخیص ε-پرچم‌ها
"""

from flags.detector import CSV_COLUMNS, FlagParams, FlagReport, is_flag, find_flags, validate_flag_bound
