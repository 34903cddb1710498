import logging
import typing

import attr
import numpy as np
from scipy.optimize import linear_sum_assignment

from rairs.errors import InvalidArgumentError, PlanValidationError
from rairs.model import EnergyLedger, PlatformParams, ScenarioLayout
from rairs.model.energy import ledger
from rairs.service.planner import PlacementPlan

log = logging.getLogger(__name__)

_TIE_TOLERANCE = 1e-9


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class TransitionCosts:
    """Planar distances between occupied sites of consecutive epochs.

    ``epoch_sites[t]`` fixes the row/column order: ascending site index.
    """
    epoch_sites: typing.Tuple[typing.Tuple[int, ...], ...]
    transitions: typing.Tuple[np.ndarray, ...]
    depot_out: np.ndarray
    depot_back: np.ndarray


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class TrajectoryPlan:
    """Per-UAV site sequences. Legs run depot -> epoch 1 -> ... -> epoch T -> depot."""
    routes: typing.Tuple[typing.Tuple[int, ...], ...]
    leg_distances: typing.Tuple[np.ndarray, ...]
    cumulative: typing.Tuple[np.ndarray, ...]
    total_distance: float
    transition_cost: float
    energy: typing.Tuple[EnergyLedger, ...]

    @property
    def feasible(self) -> bool:
        return all(e.feasible for e in self.energy)


def transition_costs(plan: PlacementPlan, layout: ScenarioLayout) -> TransitionCosts:
    m = plan.uavs
    epoch_sites = []
    for t, pairs in enumerate(plan.assignments, start=1):
        if len(pairs) != m:
            raise PlanValidationError('uav-count', f'epoch {t} has {len(pairs)} sites, expected {m}')
        epoch_sites.append(tuple(sorted(j for _, j in pairs)))

    sites = layout.candidate_sites
    transitions = tuple(
        np.linalg.norm(sites[list(a)][:, None, :] - sites[list(b)][None, :, :], axis=2).reshape(m, m)
        for a, b in zip(epoch_sites, epoch_sites[1:])
    )
    bs = layout.bs_position
    if epoch_sites:
        depot_out = np.linalg.norm(sites[list(epoch_sites[0])] - bs, axis=1).reshape(m)
        depot_back = np.linalg.norm(sites[list(epoch_sites[-1])] - bs, axis=1).reshape(m)
    else:
        depot_out = depot_back = np.zeros(0)
    return TransitionCosts(tuple(epoch_sites), transitions, depot_out, depot_back)


def solve_assignment(cost: np.ndarray) -> typing.Tuple[typing.Tuple[int, ...], float]:
    """Minimum-cost perfect matching; among optimal ones the lexicographically smallest permutation."""
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1]:
        raise InvalidArgumentError(f'assignment needs a square matrix, got shape {cost.shape}')
    n = cost.shape[0]
    if n == 0:
        return (), 0.0

    rows, cols = linear_sum_assignment(cost)
    best = float(cost[rows, cols].sum())
    tolerance = _TIE_TOLERANCE * max(1.0, abs(best))

    perm = []
    fixed = 0.0
    free_cols = list(range(n))
    for r in range(n):
        for c in free_cols:
            rest_cols = [k for k in free_cols if k != c]
            rest = cost[np.ix_(range(r + 1, n), rest_cols)]
            if rest.size:
                rr, rc = linear_sum_assignment(rest)
                remainder = float(rest[rr, rc].sum())
            else:
                remainder = 0.0
            if fixed + cost[r, c] + remainder <= best + tolerance:
                perm.append(c)
                fixed += cost[r, c]
                free_cols = rest_cols
                break
    return tuple(perm), float(cost[np.arange(n), perm].sum())


def solve_p2(plan: PlacementPlan, layout: ScenarioLayout, platform: PlatformParams) -> TrajectoryPlan:
    costs = transition_costs(plan, layout)
    m = plan.uavs
    if not costs.epoch_sites or m == 0:
        return TrajectoryPlan((), (), (), 0.0, 0.0, ())

    # UAV k starts at the k-th site of epoch 1 and keeps its row position in sorted order
    slot = list(range(m))
    routes = [[costs.epoch_sites[0][k]] for k in range(m)]
    legs = [[float(costs.depot_out[k])] for k in range(m)]
    transition_total = 0.0
    for t, matrix in enumerate(costs.transitions):
        perm, cost = solve_assignment(matrix)
        log.debug('Transition %d->%d: %.1f m', t + 1, t + 2, cost)
        transition_total += cost
        next_sites = costs.epoch_sites[t + 1]
        for k in range(m):
            row = slot[k]
            legs[k].append(float(matrix[row, perm[row]]))
            slot[k] = perm[row]
            routes[k].append(next_sites[slot[k]])
    for k in range(m):
        legs[k].append(float(costs.depot_back[slot[k]]))

    leg_arrays = tuple(np.asarray(leg) for leg in legs)
    total = float(sum(leg.sum() for leg in leg_arrays))
    energy = tuple(ledger(float(leg.sum()), platform) for leg in leg_arrays)
    for k, e in enumerate(energy):
        if not e.feasible:
            log.warning('UAV %d needs %.0f J beyond its battery', k, -e.residual)
    return TrajectoryPlan(
        routes=tuple(tuple(r) for r in routes),
        leg_distances=leg_arrays,
        cumulative=tuple(np.cumsum(leg) for leg in leg_arrays),
        total_distance=total,
        transition_cost=transition_total,
        energy=energy,
    )
