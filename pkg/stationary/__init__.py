# -*- coding: utf-8 -*-
"""
Stationary Package
==================
توزیع ایستا، هزارتوها و کران‌ها
"""

from stationary.solvers import (
    StationaryProfile, ReturnTimeEstimate, transition_row, transition_matrix,
    stationary_power, stationary_direct, stationary, mean_return_time,
)
from stationary.maze import (
    Maze, MazeHardness, EscapeProbability, build_maze, maze_hardness, escape_probability, simulate_escape,
)
from stationary.bounds import BoundReport, validate_pimax_bound, validate_pimin_bound, pimin_lower_bound
