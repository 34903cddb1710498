import csv
import logging
import pathlib
import tempfile
import typing

import yaml

import rairs
from rairs.model import ChannelRealization, DistanceTables, ScenarioLayout, TrafficField, TrafficModel
from rairs.model.energy import fly_energy
from rairs.model.geometry import build_layout
from rairs.utils import GENERATOR_NAME, fmt

if typing.TYPE_CHECKING:
    from rairs.model import PlatformParams
    from rairs.service.experiment import ExperimentConfig, ExperimentResult, SummaryRow, TrialMetrics, TrialOutcome
    from rairs.service.planner import GainTensor, PlacementPlan
    from rairs.service.routing import TrajectoryPlan

log = logging.getLogger(__name__)

TRIALS_CSV = 'trials.csv'
SUMMARY_CSV = 'summary.csv'
PLANS_CSV = 'plans.csv'
TRAFFIC_CSV = 'traffic.csv'
TRAJECTORIES_CSV = 'trajectories.csv'
CHANNEL_CSV = 'channel.csv'
METADATA_YAML = 'metadata.yaml'

TRIAL_COLUMNS = ['strategy', 'sigma', 'trial', 'mean_gain', 'weight', 'served_traffic', 'total_distance',
                 'weak_grids', 'uavs', 'energy_feasible']
SUMMARY_STATS = ['mean_gain', 'served_traffic', 'total_distance']
SUMMARY_COLUMNS = ['strategy', 'sigma', 'trials'] + [f'{name}_{stat}' for name in SUMMARY_STATS
                                                     for stat in ('mean', 'std', 'ci95')]
PLAN_COLUMNS = ['strategy', 'trial', 'epoch', 'grid_row', 'grid_col', 'site_x', 'site_y', 'gain', 'demand']
TRAJECTORY_COLUMNS = ['trial', 'uav_id', 'epoch', 'site_x', 'site_y', 'leg_m', 'cumulative_m', 'e_fly_J',
                      'feasible_flag']
TRAFFIC_COLUMNS = ['epoch', 'hour', 'grid_index', 'grid_row', 'grid_col', 'demand', 'threshold']
CHANNEL_COLUMNS = ['grid_index', 'grid_row', 'grid_col', 'distance_m', 'los_draw', 'nlos', 'rician_k',
                   'direct_snr_db', 'weak']


def trajectories_name(sigma: float) -> str:
    return f'trajectories_sigma-{fmt(sigma)}.csv'


def _flag(value: typing.Optional[bool]) -> str:
    return '' if value is None else str(bool(value)).lower()


def write_csv(path: pathlib.Path, header: typing.List[str], rows: typing.Iterable[typing.Sequence]) -> int:
    count = 0
    with open(path, 'wt', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
            count += 1
    log.debug('Wrote %d rows to %s', count, path)
    return count


def trial_row(m: 'TrialMetrics') -> list:
    return [m.strategy, fmt(m.sigma), m.trial, fmt(m.mean_gain), fmt(m.weight), fmt(m.served_traffic),
            fmt(m.total_distance), m.weak_grids, m.uavs, _flag(m.energy_feasible)]


def summary_row(s: 'SummaryRow') -> list:
    row = [s.strategy, fmt(s.sigma), s.trials]
    for name in SUMMARY_STATS:
        stat = getattr(s, name)
        row += [fmt(stat.mean), fmt(stat.std), fmt(stat.ci)]
    return row


class TrajectoryModel:
    """Per-UAV rows of one or more trajectories, closing each route with the return leg to the base station."""

    def __init__(self, layout: ScenarioLayout, platform: 'PlatformParams'):
        self._layout = layout
        self._platform = platform
        self._model = []

    def update(self, trial: int, trajectory: 'TrajectoryPlan'):
        sites = self._layout.candidate_sites
        bs = self._layout.bs_position
        for uav, route in enumerate(trajectory.routes):
            legs = trajectory.leg_distances[uav]
            cumulative = trajectory.cumulative[uav]
            feasible = _flag(trajectory.energy[uav].feasible)
            points = [sites[j] for j in route] + [bs]
            for epoch, point in enumerate(points, start=1):
                self._model.append([
                    trial, uav, epoch, fmt(point[0]), fmt(point[1]), fmt(legs[epoch - 1]),
                    fmt(cumulative[epoch - 1]), fmt(fly_energy(float(cumulative[epoch - 1]), self._platform)),
                    feasible,
                ])

    def model(self) -> list:
        return self._model


class PlanModel:
    def __init__(self, layout: ScenarioLayout):
        self._layout = layout
        self._model = []

    def update(self, trial: int, plan: 'PlacementPlan', tensor: 'GainTensor'):
        sites = self._layout.candidate_sites
        for t, pairs in enumerate(plan.assignments):
            for grid, site in pairs:
                q = tensor.position(grid)
                row, col = self._layout.grid_cell(grid)
                self._model.append([
                    plan.strategy, trial, t + 1, row, col, fmt(sites[site][0]), fmt(sites[site][1]),
                    fmt(tensor.gains[t, q, site]), fmt(tensor.demand[t, q]),
                ])

    def model(self) -> list:
        return self._model


def traffic_rows(layout: ScenarioLayout, field: TrafficField, model: TrafficModel) -> typing.Iterator[list]:
    for t in range(field.epochs):
        for i in range(field.demand.shape[1]):
            row, col = layout.grid_cell(i)
            yield [t + 1, model.epoch_label(t), i, row, col, fmt(field.demand[t, i]), fmt(field.threshold[t])]


def channel_rows(layout: ScenarioLayout, distances: DistanceTables,
                 channel: ChannelRealization) -> typing.Iterator[list]:
    for i in range(layout.grid_count):
        row, col = layout.grid_cell(i)
        yield [i, row, col, fmt(distances.d2_bs_ut[i]), fmt(channel.los_draws[i]), _flag(i in channel.nlos_set),
               fmt(channel.rician_k[i]), fmt(channel.direct_snr_db[i]), _flag(i in channel.weak_set)]


def metadata(config: 'ExperimentConfig') -> dict:
    return {
        'generator': GENERATOR_NAME,
        'master_seed': config.master_seed,
        'version': rairs.__version__,
        'strategies': list(config.strategies),
        'sigmas': list(config.sigma_list),
        'trials': config.trials,
        'scenario_path': None if config.scenario_path is None else str(config.scenario_path),
        'scenario': config.scenario.to_dict(),
    }


class ExportService:
    def prepare(self, output: pathlib.Path) -> pathlib.Path:
        """Create ``output`` and prove it is writable before any trial runs."""
        output = pathlib.Path(output).expanduser()
        output.mkdir(parents=True, exist_ok=True)
        with tempfile.TemporaryFile(dir=str(output)):
            pass
        return output

    def write_metadata(self, output: pathlib.Path, config: 'ExperimentConfig'):
        with open(output / METADATA_YAML, 'wt') as f:
            yaml.safe_dump(metadata(config), f, sort_keys=False, default_flow_style=False)

    def write_sweep(self, output: pathlib.Path, config: 'ExperimentConfig', result: 'ExperimentResult'):
        log.info('Writing results to %s', output)
        write_csv(output / TRIALS_CSV, TRIAL_COLUMNS, (trial_row(m) for m in result.rows))
        write_csv(output / SUMMARY_CSV, SUMMARY_COLUMNS, (summary_row(s) for s in result.summary))

        layout = _layout(config)
        for sigma, records in result.trajectories.items():
            if not records:
                continue
            model = TrajectoryModel(layout, config.scenario.platform)
            for trial, trajectory in records:
                model.update(trial, trajectory)
            write_csv(output / trajectories_name(sigma), TRAJECTORY_COLUMNS, model.model())
        self.write_metadata(output, config)

    def write_plan(self, output: pathlib.Path, config: 'ExperimentConfig', outcomes: typing.List['TrialOutcome']):
        log.info('Writing plan to %s', output)
        realization = outcomes[0].realization
        plans = PlanModel(realization.layout)
        trajectories = TrajectoryModel(realization.layout, config.scenario.platform)
        for outcome in outcomes:
            plans.update(outcome.metrics.trial, outcome.plan, realization.tensor)
            if outcome.trajectory is not None:
                trajectories.update(outcome.metrics.trial, outcome.trajectory)

        write_csv(output / TRIALS_CSV, TRIAL_COLUMNS, (trial_row(o.metrics) for o in outcomes))
        write_csv(output / PLANS_CSV, PLAN_COLUMNS, plans.model())
        if trajectories.model():
            write_csv(output / TRAJECTORIES_CSV, TRAJECTORY_COLUMNS, trajectories.model())
        write_csv(output / TRAFFIC_CSV, TRAFFIC_COLUMNS,
                  traffic_rows(realization.layout, realization.traffic, realization.traffic_model))
        write_csv(output / CHANNEL_CSV, CHANNEL_COLUMNS,
                  channel_rows(realization.layout, realization.distances, realization.channel))
        self.write_metadata(output, config)


def _layout(config: 'ExperimentConfig') -> ScenarioLayout:
    g = config.scenario.geometry
    return build_layout(g.rows, g.cols, g.cell_side, g.heights)
