# -*- coding: utf-8 -*-
"""
Services Package
================
سرویس‌های اجرای تحلیل
"""

from services.analysis_service import AnalysisService

__all__ = [
    'AnalysisService',
]
