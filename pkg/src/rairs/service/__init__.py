from .experiment import ExperimentConfig, ExperimentService, TrialMetrics, run_experiment, run_trial
from .export import ExportService
from .mission import MissionService
from .oracle import OracleResult, OracleSuite
from .planner import GainTensor, PlacementPlan, PlannerService
from .routing import TrajectoryPlan, solve_p2
