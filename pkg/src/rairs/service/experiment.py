import itertools
import logging
import pathlib
import typing
from concurrent import futures

import attr
import numpy as np
from scipy import stats

from rairs.config import Scenario
from rairs.errors import ConfigError, RaIrsError, TrialError, require
from rairs.model import ChannelRealization, DistanceTables, ScenarioLayout, TrafficField, TrafficModel
from rairs.model.channel import realize_channel
from rairs.model.geometry import build_layout, compute_distances
from rairs.model.traffic import field_from_normals, standard_normals
from rairs.service.export import ExportService
from rairs.service.planner import (RANDOM, ROBOTIC, TERRESTRIAL, GainTensor, PlacementPlan, PlannerService,
                                   build_gain_tensor, evaluate_plan)
from rairs.service.routing import TrajectoryPlan, solve_p2
from rairs.service.validation import validate_trajectory
from rairs.utils import substream

log = logging.getLogger(__name__)

STREAM_CHANNEL = 0
STREAM_TRAFFIC = 1
STREAM_PLACEMENT = 2

CONFIDENCE = 0.95


def sigma_key(sigma: float) -> int:
    return int(round(sigma * 1e6))


@attr.s(frozen=True, slots=True, auto_attribs=True)
class ExperimentConfig:
    scenario: Scenario
    strategies: typing.Tuple[str, ...]
    sigma_list: typing.Tuple[float, ...]
    trials: int
    master_seed: int
    output: pathlib.Path
    scenario_path: typing.Optional[pathlib.Path] = None
    workers: int = 1

    @classmethod
    def from_scenario(cls, scenario: Scenario, output: pathlib.Path,
                      scenario_path: typing.Optional[pathlib.Path] = None, **overrides) -> 'ExperimentConfig':
        """Experiment section of the scenario with non-None ``overrides`` applied and re-validated."""
        overrides = {k: v for k, v in overrides.items() if v is not None}
        try:
            experiment = attr.evolve(scenario.experiment, **overrides)
        except (TypeError, ValueError) as x:
            raise ConfigError(f'section [experiment]: {x}') from x
        scenario = attr.evolve(scenario, experiment=experiment)
        return cls(scenario, experiment.strategies, experiment.sigmas, experiment.trials, experiment.master_seed,
                   pathlib.Path(output), scenario_path, experiment.workers)


@attr.s(frozen=True, slots=True, auto_attribs=True)
class TrialMetrics:
    strategy: str
    sigma: float
    trial: int
    mean_gain: float
    weight: float
    served_traffic: float
    total_distance: float
    weak_grids: int
    uavs: int
    uav_feasible: typing.Tuple[bool, ...] = ()

    @property
    def energy_feasible(self) -> typing.Optional[bool]:
        return all(self.uav_feasible) if self.strategy == ROBOTIC else None


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class TrialRealization:
    sigma: float
    trial: int
    traffic_model: TrafficModel
    layout: ScenarioLayout
    distances: DistanceTables
    channel: ChannelRealization
    traffic: TrafficField
    tensor: GainTensor


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class TrialOutcome:
    metrics: TrialMetrics
    plan: PlacementPlan
    trajectory: typing.Optional[TrajectoryPlan]
    realization: TrialRealization


@attr.s(frozen=True, slots=True, auto_attribs=True)
class Statistic:
    mean: float
    std: float
    ci: float

    @classmethod
    def of(cls, values: typing.Sequence[float]) -> 'Statistic':
        a = np.asarray(values, dtype=float)
        if len(a) < 2:
            return cls(float(a.mean()) if len(a) else 0.0, 0.0, 0.0)
        half = stats.sem(a) * stats.t.ppf((1 + CONFIDENCE) / 2.0, len(a) - 1)
        return cls(float(a.mean()), float(a.std(ddof=1)), float(half))


@attr.s(frozen=True, slots=True, auto_attribs=True)
class SummaryRow:
    strategy: str
    sigma: float
    trials: int
    mean_gain: Statistic
    served_traffic: Statistic
    total_distance: Statistic


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class ExperimentResult:
    rows: typing.List[TrialMetrics]
    summary: typing.List[SummaryRow]
    trajectories: typing.Dict[float, typing.List[typing.Tuple[int, TrajectoryPlan]]]


def realize_trial(scenario: Scenario, sigma: float, trial_index: int, master_seed: int) -> TrialRealization:
    geometry = scenario.geometry
    layout = build_layout(geometry.rows, geometry.cols, geometry.cell_side, geometry.heights)
    distances = compute_distances(layout)
    channel = realize_channel(distances, scenario.radio, substream(master_seed, STREAM_CHANNEL, trial_index))

    # same normals for every sigma, so sweeps compare on common random numbers
    model = attr.evolve(scenario.traffic, sigma_log=sigma)
    z = standard_normals(model, layout.grid_count, substream(master_seed, STREAM_TRAFFIC, trial_index))
    traffic = field_from_normals(model, z)

    tensor = build_gain_tensor(channel, distances, traffic, scenario.radio)
    return TrialRealization(sigma, trial_index, model, layout, distances, channel, traffic, tensor)


def execute_strategy(config: ExperimentConfig, realization: TrialRealization, strategy: str) -> TrialOutcome:
    scenario = config.scenario
    sigma, trial_index = realization.sigma, realization.trial
    try:
        rng = substream(config.master_seed, STREAM_PLACEMENT, sigma_key(sigma), trial_index)
        plan = PlannerService(scenario.solver).plan(strategy, realization.tensor, rng)
        evaluation = evaluate_plan(plan, realization.tensor)

        trajectory = None
        distance = 0.0
        feasible = ()
        if strategy == ROBOTIC:
            trajectory = solve_p2(plan, realization.layout, scenario.platform)
            validate_trajectory(trajectory, plan)
            distance = trajectory.total_distance
            feasible = tuple(e.feasible for e in trajectory.energy)
    except RaIrsError as x:
        raise TrialError(strategy, sigma, trial_index, x) from x

    metrics = TrialMetrics(strategy, sigma, trial_index, evaluation.objective, evaluation.weight,
                           evaluation.total_served, distance, len(realization.tensor.weak_grids), plan.uavs, feasible)
    return TrialOutcome(metrics, plan, trajectory, realization)


def run_trial(config: ExperimentConfig, sigma: float, trial_index: int, strategy: str) -> TrialMetrics:
    try:
        realization = realize_trial(config.scenario, sigma, trial_index, config.master_seed)
    except RaIrsError as x:
        raise TrialError(strategy, sigma, trial_index, x) from x
    return execute_strategy(config, realization, strategy).metrics


def _run_cell(config: ExperimentConfig, sigma: float, trial_index: int) -> typing.List[TrialOutcome]:
    try:
        realization = realize_trial(config.scenario, sigma, trial_index, config.master_seed)
    except RaIrsError as x:
        raise TrialError(','.join(config.strategies), sigma, trial_index, x) from x
    return [execute_strategy(config, realization, s) for s in config.strategies]


class SummaryModel:
    """Per-(strategy, sigma) accumulation of trial metrics."""

    def __init__(self, strategies: typing.Sequence[str], sigmas: typing.Sequence[float]):
        self._keys = list(itertools.product(strategies, sigmas))
        self._values = {key: [] for key in self._keys}

    def update(self, metrics: TrialMetrics):
        self._values[(metrics.strategy, metrics.sigma)].append(metrics)

    def model(self) -> typing.List[SummaryRow]:
        result = []
        for strategy, sigma in self._keys:
            rows = self._values[(strategy, sigma)]
            result.append(SummaryRow(
                strategy, sigma, len(rows),
                Statistic.of([r.mean_gain for r in rows]),
                Statistic.of([r.served_traffic for r in rows]),
                Statistic.of([r.total_distance for r in rows]),
            ))
        return result


def summarize(rows: typing.Iterable[TrialMetrics], strategies: typing.Sequence[str],
              sigmas: typing.Sequence[float]) -> typing.List[SummaryRow]:
    model = SummaryModel(strategies, sigmas)
    for row in rows:
        model.update(row)
    return model.model()


def _log_ratios(summary: typing.List[SummaryRow]):
    by_key = {(row.strategy, row.sigma): row for row in summary}
    for (strategy, sigma), row in by_key.items():
        if strategy != ROBOTIC:
            continue
        for baseline in (TERRESTRIAL, RANDOM):
            other = by_key.get((baseline, sigma))
            if other is None:
                continue
            log.info('sigma=%.2f robotic/%s: gain x%.3f, served traffic x%.3f', sigma, baseline,
                     row.mean_gain.mean / other.mean_gain.mean,
                     row.served_traffic.mean / other.served_traffic.mean if other.served_traffic.mean else np.inf)


def run_experiment(config: ExperimentConfig, executor: typing.Optional[futures.Executor] = None) -> ExperimentResult:
    cells = list(itertools.product(config.sigma_list, range(config.trials)))
    log.info('Running %d trials x %d sigma values x %d strategies', config.trials, len(config.sigma_list),
             len(config.strategies))

    if executor is None:
        outcomes = [_run_cell(config, sigma, trial) for sigma, trial in cells]
    else:
        outcomes = list(executor.map(lambda cell: _run_cell(config, *cell), cells))

    order = {s: k for k, s in enumerate(config.strategies)}
    flat = sorted(itertools.chain.from_iterable(outcomes),
                  key=lambda o: (order[o.metrics.strategy], o.metrics.sigma, o.metrics.trial))
    rows = [o.metrics for o in flat]

    trajectories = {sigma: [] for sigma in config.sigma_list}
    for outcome in flat:
        if outcome.trajectory is not None:
            trajectories[outcome.metrics.sigma].append((outcome.metrics.trial, outcome.trajectory))

    summary = summarize(rows, config.strategies, config.sigma_list)
    for row in summary:
        log.info('%s sigma=%.2f: mean gain %.4f +- %.4f, served traffic %.1f', row.strategy, row.sigma,
                 row.mean_gain.mean, row.mean_gain.ci, row.served_traffic.mean)
    _log_ratios(summary)
    return ExperimentResult(rows, summary, trajectories)


class ExperimentService:
    def __init__(self, experiment_config: ExperimentConfig, export_svc: ExportService,
                 executor: futures.ThreadPoolExecutor):
        self._config = experiment_config
        self._export = export_svc
        self._executor = executor

    def sweep(self) -> ExperimentResult:
        output = self._export.prepare(self._config.output)
        result = run_experiment(self._config, self._executor)
        self._export.write_sweep(output, self._config, result)
        return result

    def plan(self, trial_index: int = 0) -> typing.List[TrialOutcome]:
        require(trial_index >= 0, f'trial index must be non-negative, got {trial_index}')
        output = self._export.prepare(self._config.output)
        sigma = self._config.sigma_list[0]
        outcomes = _run_cell(self._config, sigma, trial_index)
        for outcome in outcomes:
            m = outcome.metrics
            log.info('%s: mean gain %.4f, served traffic %.1f, distance %.1f m', m.strategy, m.mean_gain,
                     m.served_traffic, m.total_distance)
        self._export.write_plan(output, self._config, outcomes)
        return outcomes

