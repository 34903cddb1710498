"""Feasibility checks of placements and trajectories, independent of the solvers that produced them."""
import collections
import typing

import numpy as np

from rairs.errors import PlanValidationError
from rairs.model.solver import RANDOM, TERRESTRIAL

if typing.TYPE_CHECKING:
    from rairs.service.planner import GainTensor, PlacementPlan
    from rairs.service.routing import TrajectoryPlan

FIXED_STRATEGIES = (TERRESTRIAL, RANDOM)

_TOLERANCE = 1e-6


def validate_placement(plan: 'PlacementPlan', tensor: 'GainTensor', m: typing.Optional[int] = None) -> None:
    if len(plan.assignments) != tensor.epochs:
        raise PlanValidationError(
            'uav-count', f'plan covers {len(plan.assignments)} epochs, tensor has {tensor.epochs}')
    weak = set(tensor.weak_grids)
    expected = plan.uavs if m is None else m
    for t, pairs in enumerate(plan.assignments, start=1):
        if len(pairs) != expected:
            raise PlanValidationError('uav-count', f'epoch {t} places {len(pairs)} IRSs, expected {expected}')
        grids = [i for i, _ in pairs]
        sites = [j for _, j in pairs]
        if len(set(sites)) != len(sites):
            raise PlanValidationError('site-shared', f'epoch {t} anchors two IRSs at one site')
        if len(set(grids)) != len(grids):
            raise PlanValidationError('grid-shared', f'epoch {t} serves one grid twice')
        if not weak.issuperset(grids) or any(not 0 <= j < tensor.sites for j in sites):
            raise PlanValidationError('outside-support', f'epoch {t} uses an unknown site or a well covered grid')
    if plan.strategy in FIXED_STRATEGIES and len(set(plan.assignments)) > 1:
        raise PlanValidationError('fixed-moved', f'{plan.strategy} plan moves between epochs')


def validate_trajectory(trajectory: 'TrajectoryPlan', plan: 'PlacementPlan') -> None:
    epochs = len(plan.assignments)
    for route in trajectory.routes:
        if len(route) != epochs:
            raise PlanValidationError('route-length', f'route of length {len(route)} for {epochs} epochs')
    for t in range(epochs):
        occupied = [route[t] for route in trajectory.routes]
        if len(set(occupied)) != len(occupied):
            raise PlanValidationError('uav-collision', f'epoch {t + 1} has two UAVs at one site')
        planned = collections.Counter(j for _, j in plan.assignments[t])
        if collections.Counter(occupied) != planned:
            raise PlanValidationError('placement-mismatch',
                                      f'epoch {t + 1} visits sites that differ from the placement')

    legs = sum(float(np.sum(legs)) for legs in trajectory.leg_distances)
    if abs(legs - trajectory.total_distance) > _TOLERANCE * max(1.0, trajectory.total_distance):
        raise PlanValidationError('distance', f'leg sum {legs} differs from total {trajectory.total_distance}')
    for cumulative in trajectory.cumulative:
        if np.any(np.diff(cumulative) < -_TOLERANCE):
            raise PlanValidationError('distance', 'cumulative distance decreases')
