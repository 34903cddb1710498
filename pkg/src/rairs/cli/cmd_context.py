from argparse import Namespace

from rairs.config import load_scenario
from rairs.service import ExperimentConfig


class CmdContext:
    def __init__(self, ns: Namespace):
        self._ns = ns

    def experiment_config(self) -> ExperimentConfig:
        ns = self._ns
        return ExperimentConfig.from_scenario(
            load_scenario(ns.config),
            ns.out,
            ns.config,
            strategies=ns.strategy,
            sigmas=ns.sigma,
            trials=ns.trials,
            master_seed=ns.seed,
            workers=ns.workers,
        )
