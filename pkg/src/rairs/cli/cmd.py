import argparse
import json
import logging
import pathlib
import sys

import pytel

import rairs
import rairs.utils
from rairs.cli import CmdContext, EnergyCommand, PlanCommand, SweepCommand, ValidateCommand
from rairs.context import Context
from rairs.errors import RaIrsError
from rairs.model.solver import STRATEGIES

log = logging.getLogger(__name__)

EXIT_ERROR = 2


def build_parser():
    parser = argparse.ArgumentParser(prog='rairs')
    parser.add_argument('--config', '-c', type=pathlib.Path, metavar='path',
                        help='Scenario YAML overlaid on the packaged defaults')
    parser.add_argument('--seed', '-s', type=int, metavar='int', help='Master seed of the random substreams')
    parser.add_argument('--trials', '-n', type=int, metavar='count', help='Monte Carlo trials per sigma')
    parser.add_argument('--sigma', action='append', type=float, metavar='value',
                        help='Log-normal traffic sigma; repeat for a sweep')
    parser.add_argument('--strategy', action='append', choices=STRATEGIES, metavar='name',
                        help='One of %(choices)s; repeat to select several. Default is all')
    parser.add_argument('--out', '-o', type=pathlib.Path, default=pathlib.Path('out'), metavar='dir',
                        help='Output directory. Default is %(default)s')
    parser.add_argument('--workers', '-w', type=int, metavar='count', help='Trial worker threads')
    parser.add_argument('--quiet', '-q', action='store_true', default=False, help='Log warnings and errors only')
    parser.add_argument('--version', '-v', action='version', version=rairs.__version__)
    parser.set_defaults(func=lambda _: parser.print_help())
    subparsers = parser.add_subparsers()

    for c in [
        EnergyCommand,
        PlanCommand,
        SweepCommand,
        ValidateCommand,
    ]:
        c.build_argparse(subparsers)

    return parser


def report_error(x: BaseException):
    print('error: ' + json.dumps({'type': type(x).__name__, 'message': str(x)}), file=sys.stderr)


def run(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    rairs.utils.configure_logging(ns.quiet)
    log.info("Starting")

    try:
        with pytel.Pytel([
            Context(),
            CmdContext(ns),
            {
                'ns': ns,
            },
        ]) as context:
            return ns.func(context) or 0
    except (RaIrsError, OSError) as x:
        report_error(x)
        return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
