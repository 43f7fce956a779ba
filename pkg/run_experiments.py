#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Entry point for the r-out digraph experiments
اجرای آزمایش‌ها از خط فرمان
"""

import sys

from harness.cli import main

if __name__ == '__main__':
    sys.exit(main())
