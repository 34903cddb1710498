import sys

import yaml


class EnergyCommand:
    @staticmethod
    def build_argparse(subparsers):
        energy_parser = subparsers.add_parser('energy', help='Report flight range, energy budget and IRS sizing')
        energy_parser.set_defaults(func=EnergyCommand.report)

    @staticmethod
    def report(ctx) -> int:
        yaml.safe_dump(ctx.mission_svc.report(), sys.stdout, sort_keys=False, default_flow_style=False)
        return 0
