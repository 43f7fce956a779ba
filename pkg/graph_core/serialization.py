# -*- coding: utf-8 -*-
"""
Graph serializers
=================
Edge-list text format (1-based):

    n=<n> r=<r>
    1: h1 h2 ... hr
    2: ...

JSON form: {"n": .., "r": .., "heads": [..]} with 1-based heads in (i, j)
lexicographic order.
"""

import json
from pathlib import Path

import numpy as np

from graph_core.digraph import Digraph
from utils.validators import ValidationError


def to_text(g: Digraph) -> str:
    lines = [f"n={g.n} r={g.r}"]
    for i, row in enumerate(g.heads2d, start=1):
        lines.append(f"{i}: " + " ".join(str(int(h) + 1) for h in row))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Digraph:
    lines = [line.strip() for line in text.splitlines() if line.strip() and not line.startswith('#')]
    if not lines:
        raise ValidationError("empty graph text")

    try:
        header = dict(part.split('=', 1) for part in lines[0].split())
        n, r = int(header['n']), int(header['r'])
    except (KeyError, ValueError):
        raise ValidationError(f"bad header line: {lines[0]!r} (expected 'n=<n> r=<r>')")

    if len(lines) - 1 != n:
        raise ValidationError(f"expected {n} vertex lines, found {len(lines) - 1}")

    heads = np.empty((n, r), dtype=np.int64)
    for expected, line in enumerate(lines[1:], start=1):
        label, _, rest = line.partition(':')
        try:
            values = [int(tok) - 1 for tok in rest.split()]
            ordered = int(label) == expected
        except ValueError:
            raise ValidationError(f"bad vertex line: {line!r}")
        if not ordered:
            raise ValidationError(f"vertex lines must be in order: expected {expected}, found {label}")
        if len(values) != r:
            raise ValidationError(f"vertex {expected} has {len(values)} heads, expected r={r}")
        heads[expected - 1] = values

    return Digraph(n, r, heads.reshape(-1))


def to_json(g: Digraph) -> str:
    return json.dumps({'n': g.n, 'r': g.r, 'heads': (g.heads + 1).tolist()})


def from_json(text: str) -> Digraph:
    try:
        data = json.loads(text)
        n, r, heads = int(data['n']), int(data['r']), data['heads']
    except (ValueError, KeyError, TypeError) as e:
        raise ValidationError(f"bad graph JSON: {e}")
    return Digraph(n, r, np.asarray(heads, dtype=np.int64) - 1)


def write_graph(g: Digraph, path, fmt='text'):
    payload = to_json(g) if fmt == 'json' else to_text(g)
    Path(path).write_text(payload, encoding='utf-8')


def read_graph(path) -> Digraph:
    text = Path(path).read_text(encoding='utf-8')
    if text.lstrip().startswith('{'):
        return from_json(text)
    return from_text(text)
