class ValidateCommand:
    @staticmethod
    def build_argparse(subparsers):
        validate_parser = subparsers.add_parser('validate', help='Run the numerical oracle checks')
        validate_parser.add_argument('--full', action='store_true', default=False,
                                     help='Include the full-size Monte Carlo runs (slow)')
        validate_parser.set_defaults(func=ValidateCommand.validate)

    @staticmethod
    def validate(ctx) -> int:
        results = ctx.oracle_suite.run(ctx.ns.full)
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}")
        failed = sum(not r.passed for r in results)
        print(f'{len(results) - failed}/{len(results)} checks passed')
        return 1 if failed else 0
