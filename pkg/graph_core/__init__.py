# -*- coding: utf-8 -*-
"""
Graph Core Package
==================
نمایش و تولید گراف‌های r-خروجی
"""

from graph_core.digraph import (
    Digraph, Seed, as_seed, generate, generate_simple, sample_simple,
    simple_acceptance_rate, loop_vertices, loop_vertex_probability,
    from_heads, cycle_digraph, loop_digraph,
)
from graph_core.serialization import to_text, from_text, to_json, from_json, read_graph, write_graph
