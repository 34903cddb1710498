import contextlib
from concurrent import futures

import rairs.service
from rairs.config import Scenario
from rairs.service import ExperimentConfig


class Context:
    experiment_svc = rairs.service.ExperimentService

    def export_svc(self) -> rairs.service.ExportService:
        return rairs.service.ExportService()

    @contextlib.contextmanager
    def executor(self, experiment_config: ExperimentConfig) -> futures.ThreadPoolExecutor:
        executor = futures.ThreadPoolExecutor(max_workers=experiment_config.workers)
        try:
            yield executor
        finally:
            executor.shutdown(True)

    mission_svc = rairs.service.MissionService

    oracle_suite = rairs.service.OracleSuite

    def scenario(self, experiment_config: ExperimentConfig) -> Scenario:
        return experiment_config.scenario
