# -*- coding: utf-8 -*-
"""
Command line interface
======================
رابط خط فرمان

    python run_experiments.py gen --n 16 --r 2 --seed 7
    python run_experiments.py diam --n 4096 --r 2 --seed 7 --d0
    python run_experiments.py sweep --config sweep.env --trials 5 --out results.csv

Data goes to --out (default stdout); logs and diagnostics go to stderr.
Exit codes: 0 success, 1 configuration error, 2 I/O error.
"""

import argparse
import json
import sys
from typing import List, Optional

from config.settings import LOG_DIR, LOG_LEVEL
from dfa.automaton import parse_word
from flags.detector import CSV_COLUMNS
from harness.config import build_config, read_config_file
from harness.export import emit, write_output
from services.analysis_service import AnalysisService
from utils.logging_config import setup_logging
from utils.validators import ValidationError
import logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2


class _Parser(argparse.ArgumentParser):
    """Usage errors are configuration errors (exit 1)"""

    def error(self, message):
        raise ValidationError(message)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, help='number of vertices')
    common.add_argument('--r', type=int, help='out-degree')
    common.add_argument('--seed', type=int, help='64-bit master seed')
    common.add_argument('--trials', type=int)
    common.add_argument('--format', choices=('csv', 'json', 'text'))
    common.add_argument('--out', default='-', help="output path ('-' = stdout)")
    common.add_argument('--eps', type=float, help='flag epsilon')
    common.add_argument('--tol', type=float, help='power iteration tolerance')
    common.add_argument('--max-iter', type=int, help='power iteration cap')
    common.add_argument('--simple', action='store_true', help='sample D(n, r) conditioned on being simple')
    common.add_argument('--graph', help='read the graph from a text/JSON file instead of sampling')
    common.add_argument('--log-level', default=LOG_LEVEL)
    common.add_argument('--log-dir', default=str(LOG_DIR))
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog='run_experiments', description='Random r-out digraphs: structure, diameter, stationary law')
    sub = parser.add_subparsers(dest='command', parser_class=_Parser)
    sub.required = True

    sub.add_parser('gen', parents=[common], help='sample and print D(n, r)')
    sub.add_parser('scc', parents=[common], help='strongly connected components and D0')

    diam = sub.add_parser('diam', parents=[common], help='exact diameter')
    diam.add_argument('--d0', action='store_true', help='restrict to the giant component')

    stat = sub.add_parser('stat', parents=[common], help='stationary distribution on D0')
    stat.add_argument('--method', choices=('auto', 'power', 'direct'), default='auto')
    stat.add_argument('--full', action='store_true', help='include every π(v)')

    flags = sub.add_parser('flags', parents=[common], help='ε-flags')
    flags.add_argument('--threshold', type=int, help='layer threshold (default ceil(ln^4 n))')
    flags.add_argument('--size-cap', type=int, help='in-ball size cap (default ceil(ln^7 n))')

    gw = sub.add_parser('gw', parents=[common], help='Galton-Watson tail probability')
    gw.add_argument('--k', type=int, default=10)
    gw.add_argument('--omega', type=int, default=4)

    dfa = sub.add_parser('dfa', parents=[common], help='run a word (stdin) through a random DFA')
    dfa.add_argument('--word', help='symbols separated by spaces (default: read stdin)')

    sweep = sub.add_parser('sweep', parents=[common], help='Monte Carlo sweep')
    sweep.add_argument('--config', help='flat key = value config file')
    sweep.add_argument('--n-values', help='comma separated n list')
    sweep.add_argument('--r-values', help='comma separated r list')
    sweep.add_argument('--measurements', help='comma separated: scc, diam, stationary, flags, gw')
    sweep.add_argument('--threshold', type=int)
    sweep.add_argument('--size-cap', type=int)
    sweep.add_argument('--workers', type=int)
    sweep.add_argument('--timings', action='store_true', help='append per-stage runtimes (not reproducible)')
    return parser


def _graph(args):
    return AnalysisService.load_graph(args.n, args.r, args.seed, args.simple, args.graph)


def _sweep_values(args) -> dict:
    values = {
        'n': args.n_values or (str(args.n) if args.n is not None else None),
        'r': args.r_values or (str(args.r) if args.r is not None else None),
        'trials': args.trials,
        'seed': args.seed,
        'measurements': args.measurements,
        'format': args.format,
        'out': None if args.out == '-' else args.out,
        'eps': args.eps,
        'tol': args.tol,
        'max_iter': args.max_iter,
        'threshold': args.threshold,
        'size_cap': args.size_cap,
        'workers': args.workers,
        'simple': args.simple or None,
        'timings': args.timings or None,
    }
    return {key: value for key, value in values.items() if value is not None}


def _flags_csv(rows) -> str:
    lines = [','.join(CSV_COLUMNS)]
    lines.extend(','.join(str(row[column]) for column in CSV_COLUMNS) for row in rows)
    return '\n'.join(lines) + '\n'


def _dispatch(args) -> dict:
    command = args.command
    if command == 'gen':
        if args.n is None or args.r is None or args.seed is None:
            raise ValidationError("gen needs --n, --r and --seed")
        return AnalysisService.generate_graph(args.n, args.r, args.seed, args.simple,
                                              'json' if args.format == 'json' else 'text')
    if command == 'scc':
        return AnalysisService.analyze_scc(_graph(args))
    if command == 'diam':
        return AnalysisService.analyze_diameter(_graph(args), args.d0)
    if command == 'stat':
        return AnalysisService.analyze_stationary(_graph(args), args.method, args.tol, args.max_iter, args.full)
    if command == 'flags':
        return AnalysisService.analyze_flags(_graph(args), args.seed, args.eps, args.threshold, args.size_cap)
    if command == 'gw':
        if args.r is None or args.seed is None:
            raise ValidationError("gw needs --r and --seed")
        return AnalysisService.branching_summary(args.r, args.k, args.omega, args.trials or 10_000, args.seed)
    if command == 'dfa':
        if args.n is None or args.r is None or args.seed is None:
            raise ValidationError("dfa needs --n, --r and --seed")
        word = parse_word(args.word if args.word is not None else sys.stdin.read())
        return AnalysisService.run_dfa_word(args.n, args.r, args.seed, word)

    file_values = read_config_file(args.config) if args.config else {}
    cfg = build_config(file_values, _sweep_values(args))
    result = AnalysisService.sweep(cfg)
    result['config'] = cfg
    return result


def _render(args, result) -> str:
    data = result['data']
    if args.command == 'gen':
        return data
    if args.command == 'flags' and args.format == 'csv':
        return _flags_csv(data['flags'])
    if args.command == 'gw' and args.format == 'csv':
        row = data['tail']
        return 'r,k,omega,trials,estimate,stderr\n' + ','.join(
            f"{row[key]:.12g}" if isinstance(row[key], float) else str(row[key])
            for key in ('r', 'k', 'omega', 'trials', 'estimate', 'stderr')
        ) + '\n'
    return json.dumps(data, indent=2) + '\n'


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    setup_logging(args.log_level, args.log_dir)
    try:
        result = _dispatch(args)
        if not result['success']:
            print(f"error: {result['message']}", file=sys.stderr)
            return EXIT_IO if result['error_kind'] == 'io' else EXIT_CONFIG
        if args.command == 'sweep':
            cfg = result['config']
            emit(result['data'], cfg.format, cfg.out, cfg.timings)
        else:
            write_output(_render(args, result), args.out)
        logger.info(result['message'])
        return EXIT_OK
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except Exception as e:
        logger.error(f"Unexpected failure: {e}", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
