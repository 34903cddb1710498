class SweepCommand:
    @staticmethod
    def build_argparse(subparsers):
        sweep_parser = subparsers.add_parser('sweep', help='Run every strategy over the sigma list and trials')
        sweep_parser.set_defaults(func=SweepCommand.sweep)

    @staticmethod
    def sweep(ctx) -> int:
        result = ctx.experiment_svc.sweep()
        infeasible = sum(r.energy_feasible is False for r in result.rows)
        if infeasible:
            print(f'{infeasible} robotic trial(s) exceed the battery budget')
        return 0
