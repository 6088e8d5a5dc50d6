#!/usr/bin/env python
# encoding: utf-8

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from gaussoids.execute import EXIT_DOMAIN, EXIT_GUARD, EXIT_USAGE, execute
from gaussoids import globals as gaussoids_globals
from gaussoids.classify import ClassSpec
from gaussoids.common import get_version
from gaussoids.errors import (FaceParseError, GaussoidError, GraphParseError,
                              ResourceGuardError, StructureParseError)

PARSE_ERRORS = (FaceParseError, StructureParseError, GraphParseError)


def spec_letters(text: str) -> str:
    ClassSpec.parse(text)
    return text


def add_spec_arguments(parser: argparse.ArgumentParser, guarded: bool = True) -> None:
    parser.add_argument('--n', type=int, required=True, help='Ground set size')
    parser.add_argument(
        '--spec',
        type=spec_letters,
        required=True,
        help='Allowed minor letters, a subset of ELUBF - E.g. EUB'
    )
    if not guarded:
        return
    parser.add_argument(
        '--unsafe',
        action='store_true',
        help='Skip the resource guard'
    )


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    logging.debug("Parsing command line arguments")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='Emit JSON instead of text')

    parser = argparse.ArgumentParser(
        prog='gaussoids',
        description='Gaussoids, their minors and letter-restricted classes.'
    )

    # General options
    general_group = parser.add_argument_group('General Options')
    general_group.add_argument(
        '-v', '--version',
        action='version',
        version=f'gaussoids {get_version()}',
        help='Print version info'
    )
    general_group.add_argument(
        '-d', '--debug',
        action='store_true',
        help='Enable debug mode'
    )

    subparsers = parser.add_subparsers(dest='command', required=True)

    # Structure options
    check = subparsers.add_parser('check', parents=[common], help='Gaussoid verdict for a CI structure')
    check.add_argument('file', help='CI structure file')
    check.add_argument('--belts', action='store_true', help='Use the knee/belt checker')

    minor = subparsers.add_parser('minor', parents=[common], help='Minor at a frame')
    minor.add_argument('file', help='CI structure file')
    minor.add_argument('--frame', required=True, help='Frame face - E.g. *1*0 or 1,3|2')

    dual = subparsers.add_parser('dual', parents=[common], help='Dual CI structure')
    dual.add_argument('file', help='CI structure file')

    classify = subparsers.add_parser('classify', parents=[common], help='Letter profile of the 3-minors')
    classify.add_argument('file', help='CI structure file')

    # Class options
    count = subparsers.add_parser('count', parents=[common], help='Exact class size')
    add_spec_arguments(count)
    count.add_argument('--workers', type=int, help='Worker processes')
    count.add_argument('--no-cache', action='store_true', help='Bypass the count cache')
    count.add_argument('--brute-force', action='store_true', help='Filter all subsets (n <= 4)')

    enumerate_parser = subparsers.add_parser('enumerate', parents=[common], help='List the class members')
    add_spec_arguments(enumerate_parser)
    enumerate_parser.add_argument('--limit', type=int, help='Emit at most this many structures')

    cnf = subparsers.add_parser('cnf', help='DIMACS encoding of a class')
    add_spec_arguments(cnf, guarded=False)
    cnf.add_argument('-o', '--output', help='Output file (default: stdout)')

    # Graph options
    qgraph = subparsers.add_parser('qgraph', parents=[common], help='Queries on Q(n,k,p,q)')
    for name in ('n', 'k', 'p', 'q'):
        qgraph.add_argument(f'--{name}', type=int, required=True)
    mode = qgraph.add_mutually_exclusive_group(required=True)
    for flag in ('degree', 'complete', 'independent-set', 'clique', 'verify-degree', 'coloring'):
        mode.add_argument(f'--{flag}', dest='mode', action='store_const',
                          const=flag.replace('-', '_'))

    puzzle = subparsers.add_parser('puzzle', parents=[common], help='Puzzle random gaussoids together')
    puzzle.add_argument('--n', type=int, required=True)
    puzzle.add_argument('--k', type=int, default=3)
    puzzle.add_argument('--seed', type=int, required=True)
    puzzle.add_argument('--count', type=int, default=1, help='Number of trials')

    graph = subparsers.add_parser('graph-gaussoid', parents=[common],
                                  help='Separation gaussoid of a graph, or the graph of a gaussoid')
    graph.add_argument('file', help='Graph file, or CI structure file with --invert')
    graph.add_argument('--invert', action='store_true', help='Recover the graph')

    bounds = subparsers.add_parser('bounds', parents=[common], help='Counting bounds')
    bounds.add_argument('--n', type=int, required=True)

    args = parser.parse_args(argv)

    if args.debug:
        gaussoids_globals.setup_logging(debug=True)
        logging.debug("Debug mode enabled")

    return args


def to_params(args: argparse.Namespace) -> Dict[str, Any]:
    params = {key: value for key, value in vars(args).items() if key != 'debug'}
    params.setdefault('json', False)
    return params


def main(argv: Optional[List[str]] = None) -> int:
    gaussoids_globals.setup_logging()
    args = parse_arguments(argv)

    try:
        return execute(to_params(args))
    except ResourceGuardError as e:
        logging.error("Resource guard: %s", e)
        return EXIT_GUARD
    except (OSError, *PARSE_ERRORS) as e:
        logging.error("Invalid input: %s", e)
        return EXIT_USAGE
    except (GaussoidError, ValueError) as e:
        logging.error("%s", e)
        return EXIT_DOMAIN
    except KeyboardInterrupt:
        logging.debug("Interrupted by user")
        return 130


if __name__ == "__main__":
    sys.exit(main())
