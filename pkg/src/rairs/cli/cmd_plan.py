class PlanCommand:
    @staticmethod
    def build_argparse(subparsers):
        plan_parser = subparsers.add_parser('plan', help='Plan a single trial and write placement and trajectories')
        plan_parser.add_argument('--trial', type=int, default=0, metavar='index',
                                 help='Trial index selecting the random substreams. Default is %(default)s')
        plan_parser.set_defaults(func=PlanCommand.plan)

    @staticmethod
    def plan(ctx) -> int:
        ctx.experiment_svc.plan(ctx.ns.trial)
        return 0
