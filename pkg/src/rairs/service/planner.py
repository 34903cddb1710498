import itertools
import logging
import typing

import attr
import numpy as np
from scipy.optimize import linear_sum_assignment

from rairs.errors import InfeasibleError, TerminationError
from rairs.model import ChannelRealization, DistanceTables, RadioParams, TrafficField
from rairs.model.channel import cascaded_snr_db, snr_ratio
from rairs.model.solver import (MODE_CLAIRVOYANT, MODE_DIRECT, MODE_EPOCH1, MODE_REJECTION, RANDOM, ROBOTIC,
                                TERRESTRIAL, SolverParams)
from rairs.model.traffic import gate_gain
from rairs.service.validation import validate_placement

log = logging.getLogger(__name__)

Pair = typing.Tuple[int, int]
EpochAssignment = typing.Tuple[Pair, ...]


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class GainTensor:
    """Traffic-gated SNR gains over (epoch, weak grid, site) plus the demand of each weak grid per epoch."""
    gains: np.ndarray
    demand: np.ndarray
    weak_grids: typing.Tuple[int, ...]
    sites: int

    @property
    def epochs(self) -> int:
        return self.gains.shape[0]

    def position(self, grid: int) -> int:
        return self.weak_grids.index(grid)


@attr.s(frozen=True, slots=True, auto_attribs=True)
class PlacementPlan:
    """Per-epoch (grid, site) service pairs; grid ids are layout grid indices, not positions in Q."""
    assignments: typing.Tuple[EpochAssignment, ...]
    objective: float
    weight: float
    strategy: str

    @property
    def uavs(self) -> int:
        return len(self.assignments[0]) if self.assignments else 0


@attr.s(frozen=True, slots=True, auto_attribs=True)
class EpochSolution:
    pairs: EpochAssignment
    weight: float
    objective: float


@attr.s(frozen=True, slots=True, auto_attribs=True)
class PlanEvaluation:
    objective: float
    weight: float
    served_traffic: typing.Tuple[float, ...]

    @property
    def total_served(self) -> float:
        return float(sum(self.served_traffic))


def build_gain_tensor(realization: ChannelRealization, distances: DistanceTables, traffic: TrafficField,
                      params: RadioParams) -> GainTensor:
    weak = tuple(realization.weak_grids)
    sites = distances.r_bs_site.shape[0]
    if not weak:
        log.info('No weakly covered grids in this realization, nothing to serve')
        return GainTensor(np.ones((traffic.epochs, 0, sites)), np.zeros((traffic.epochs, 0)), weak, sites)

    idx = list(weak)
    gamma_c = cascaded_snr_db(distances.r_bs_site[None, :], distances.d_site_ut[idx, :], params)
    g = snr_ratio(realization.direct_snr_db[idx, None], gamma_c)
    demand = traffic.demand[:, idx]
    gains = gate_gain(g[None, :, :], demand[:, :, None], traffic.threshold[:, None, None])
    return GainTensor(np.asarray(gains, dtype=float), demand, weak, sites)


def _check_m(rows: int, cols: int, m: int) -> None:
    if m < 0 or m > min(rows, cols):
        raise InfeasibleError(f'cannot place exactly {m} IRSs with {rows} grids and {cols} sites')


def solve_epoch(gains: np.ndarray, m: int) -> EpochSolution:
    """Exact cardinality-m maximum of sum(G - 1) with exclusive rows and columns.

    Pairs are (row, column) positions in ``gains``.
    """
    gains = np.asarray(gains, dtype=float)
    rows, cols = gains.shape
    _check_m(rows, cols, m)
    if m == 0:
        return EpochSolution((), 0.0, 1.0)

    weights = gains - 1.0
    size = rows + cols - m
    cost = np.zeros((size, size))
    cost[:rows, :cols] = -weights
    cost[rows:, cols:] = np.inf
    row_ind, col_ind = linear_sum_assignment(cost)

    chosen = [(int(r), int(c)) for r, c in zip(row_ind, col_ind) if r < rows and c < cols]
    positive = sorted(p for p in chosen if weights[p] > 0)
    # zero-weight fillers: lowest free grid with lowest free site
    used_rows = {r for r, _ in positive}
    used_cols = {c for _, c in positive}
    free_rows = (r for r in range(rows) if r not in used_rows)
    free_cols = (c for c in range(cols) if c not in used_cols)
    fillers = list(itertools.islice(zip(free_rows, free_cols), m - len(positive)))

    pairs = tuple(sorted(positive + fillers))
    weight = float(sum(weights[p] for p in pairs))
    return EpochSolution(pairs, weight, 1.0 + weight / rows)


def _objective(weight: float, tensor: GainTensor) -> float:
    cells = tensor.epochs * len(tensor.weak_grids)
    return 1.0 + weight / cells if cells else 1.0


def _to_grid_ids(tensor: GainTensor, pairs: typing.Iterable[Pair]) -> EpochAssignment:
    return tuple(sorted((tensor.weak_grids[q], j) for q, j in pairs))


def _replicate(tensor: GainTensor, pairs: typing.Sequence[Pair], strategy: str) -> PlacementPlan:
    rows = [q for q, _ in pairs]
    cols = [j for _, j in pairs]
    weight = float(np.sum(tensor.gains[:, rows, cols] - 1.0)) if pairs else 0.0
    assignment = _to_grid_ids(tensor, pairs)
    return PlacementPlan(tuple(assignment for _ in range(tensor.epochs)), _objective(weight, tensor), weight,
                         strategy)


def solve_p1(tensor: GainTensor, m: int) -> PlacementPlan:
    assignments = []
    weight = 0.0
    for t in range(tensor.epochs):
        solution = solve_epoch(tensor.gains[t], m)
        log.debug('Epoch %d: matching weight %.4f', t + 1, solution.weight)
        assignments.append(_to_grid_ids(tensor, solution.pairs))
        weight += solution.weight
    return PlacementPlan(tuple(assignments), _objective(weight, tensor), weight, ROBOTIC)


def solve_terrestrial(tensor: GainTensor, m: int, mode: str = MODE_EPOCH1) -> PlacementPlan:
    if mode == MODE_EPOCH1:
        weights = tensor.gains[0]
    elif mode == MODE_CLAIRVOYANT:
        weights = 1.0 + np.sum(tensor.gains - 1.0, axis=0)
    else:
        raise ValueError(mode)
    solution = solve_epoch(weights, m)
    return _replicate(tensor, solution.pairs, TERRESTRIAL)


def solve_random(tensor: GainTensor, m: int, rng: np.random.Generator, max_iterations: int = 10_000,
                 mode: str = MODE_DIRECT) -> PlacementPlan:
    rows, cols = len(tensor.weak_grids), tensor.sites
    _check_m(rows, cols, m)
    if mode == MODE_DIRECT:
        grids = rng.choice(rows, size=m, replace=False)
        sites = rng.choice(cols, size=m, replace=False)
        pairs = [(int(q), int(j)) for q, j in zip(grids, sites)]
    elif mode == MODE_REJECTION:
        pairs = _rejection_sample(rows, cols, m, rng, max_iterations)
    else:
        raise ValueError(mode)
    return _replicate(tensor, pairs, RANDOM)


def _rejection_sample(rows: int, cols: int, m: int, rng: np.random.Generator,
                      max_iterations: int) -> typing.List[Pair]:
    for iteration in range(1, max_iterations + 1):
        flat = rng.choice(rows * cols, size=m, replace=False)
        pairs = [divmod(int(k), cols) for k in flat]
        if len({q for q, _ in pairs}) == m and len({j for _, j in pairs}) == m:
            log.debug('Random support accepted after %d draws', iteration)
            return pairs
    raise TerminationError(f'no feasible random support found in {max_iterations} iterations')


def evaluate_plan(plan: PlacementPlan, tensor: GainTensor) -> PlanEvaluation:
    validate_placement(plan, tensor)

    weight = 0.0
    served = []
    for t, pairs in enumerate(plan.assignments):
        rows = [tensor.position(i) for i, _ in pairs]
        cols = [j for _, j in pairs]
        weight += float(np.sum(tensor.gains[t, rows, cols] - 1.0))
        served.append(float(np.sum(tensor.demand[t, rows])))
    return PlanEvaluation(_objective(weight, tensor), weight, tuple(served))


class PlannerService:
    """Dispatches a gain tensor to the configured P1 variant."""

    def __init__(self, solver_params: SolverParams):
        self._params = solver_params

    def uavs_for(self, tensor: GainTensor) -> int:
        m = self._params.uavs
        available = min(len(tensor.weak_grids), tensor.sites)
        if m > available:
            log.warning('Only %d weakly covered grids, serving %d instead of %d', available, available, m)
            return available
        return m

    def plan(self, strategy: str, tensor: GainTensor, rng: np.random.Generator) -> PlacementPlan:
        m = self.uavs_for(tensor)
        if strategy == ROBOTIC:
            return solve_p1(tensor, m)
        if strategy == TERRESTRIAL:
            return solve_terrestrial(tensor, m, self._params.terrestrial_mode)
        if strategy == RANDOM:
            return solve_random(tensor, m, rng, self._params.max_iterations, self._params.random_mode)
        raise ValueError(strategy)
