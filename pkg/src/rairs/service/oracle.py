"""Independent numerical checks of the closed forms and solvers.

Each check returns an :class:`OracleResult`; none of them raise on a mismatch.
"""
import itertools
import logging
import math
import typing

import attr
import numpy as np

from rairs.config import GeometryParams, Scenario
from rairs.model import PlatformParams, RadioParams
from rairs.model.channel import (NLOS_SET_BUILDER, cascade_amplification, draw_nlos_set, los_probability,
                                 sample_cascade_power, sample_direct_gain)
from rairs.model.energy import flight_range
from rairs.model.geometry import build_layout, compute_distances
from rairs.service.planner import ROBOTIC, PlacementPlan, solve_epoch
from rairs.service.routing import solve_assignment, solve_p2
from rairs.utils import chunks, substream

log = logging.getLogger(__name__)

MC_TOLERANCE = 0.02
NORMALIZATION_TOLERANCE = 0.01
EXACT_TOLERANCE = 1e-9
BATCH_ELEMENTS = 2_000_000

FAST_ELEMENTS = (16, 64, 256)
FULL_ELEMENTS = FAST_ELEMENTS + (2304,)
RICIAN_FACTORS = (0.0, 10.0)

FLIGHT_RANGE_BOUNDS = (12_900.0, 13_000.0)


@attr.s(frozen=True, slots=True, auto_attribs=True)
class OracleResult:
    name: str
    passed: bool
    detail: str


def empirical_cascade_power(n_elements: int, k_linear: float, draws: int, rng: np.random.Generator) -> float:
    batch = max(1, BATCH_ELEMENTS // n_elements)
    total = 0.0
    for size in chunks(draws, batch):
        total += float(np.sum(sample_cascade_power(n_elements, k_linear, size, rng)))
    return total / draws


def check_cascade(n_elements: int, k_linear: float, draws: int, rng: np.random.Generator) -> OracleResult:
    closed = cascade_amplification(n_elements, k_linear)
    empirical = empirical_cascade_power(n_elements, k_linear, draws, rng)
    error = abs(closed - empirical) / empirical
    return OracleResult(f'cascade N={n_elements} K={k_linear:g}', error <= MC_TOLERANCE,
                        f'closed form {closed:.6g}, Monte Carlo {empirical:.6g}, error {100 * error:.2f}%')


def check_literal_cascade(n_elements: int, k_linear: float) -> OracleResult:
    """The printed form must break the coherent-combining bound N^2 for K > 0."""
    literal = cascade_amplification(n_elements, k_linear, printed_form=True)
    bound = float(n_elements) ** 2
    return OracleResult(f'literal cascade N={n_elements} K={k_linear:g} exceeds N^2', literal > bound,
                        f'literal form {literal:.6g}, bound {bound:.6g}')


def check_direct_normalization(k_linear: float, draws: int, rng: np.random.Generator) -> OracleResult:
    mean = float(np.mean(sample_direct_gain(k_linear, draws, rng)))
    return OracleResult(f'direct E|h|^2 K={k_linear:g}', abs(mean - 1.0) <= NORMALIZATION_TOLERANCE,
                        f'empirical {mean:.5f}')


def check_los_formula() -> typing.List[OracleResult]:
    at_10 = los_probability(10.0)
    at_36 = los_probability(36.0)
    below = los_probability(np.nextafter(18.0, 0.0))
    at_18 = los_probability(18.0)
    return [
        OracleResult('LoS d=10', at_10 == 1.0, f'{at_10!r}'),
        OracleResult('LoS d=36', abs(at_36 - (0.5 + 0.5 * math.exp(-1.0))) < 1e-12 and abs(at_36 - 0.683940) < 1e-6,
                     f'{at_36:.9f}'),
        OracleResult('LoS continuity at 18 m', abs(at_18 - below) < 1e-12, f'gap {abs(at_18 - below):.3g}'),
    ]


def check_los_set_size(radio: RadioParams, geometry: GeometryParams, trials: int,
                       rng: np.random.Generator) -> OracleResult:
    distances = compute_distances(build_layout(geometry.rows, geometry.cols, geometry.cell_side, geometry.heights))
    p = los_probability(distances.d2_bs_ut)
    member = p if radio.nlos_rule == NLOS_SET_BUILDER else 1.0 - p
    expected = float(np.sum(member))
    sd = math.sqrt(float(np.sum(member * (1.0 - member))) / trials)
    sizes = [len(draw_nlos_set(distances, rng, radio.nlos_rule)[0]) for _ in range(trials)]
    mean = float(np.mean(sizes))
    return OracleResult(f'NLoS set size ({radio.nlos_rule})', abs(mean - expected) <= 3 * sd + 1e-12,
                        f'mean {mean:.4f}, expected {expected:.4f} +- {3 * sd:.4f}')


def check_flight_range(platform: PlatformParams) -> OracleResult:
    fr = flight_range(platform)
    low, high = FLIGHT_RANGE_BOUNDS
    return OracleResult('flight range', fr.feasible and low < fr.distance < high, f'{fr.distance:.1f} m')


def brute_force_epoch(gains: np.ndarray, m: int) -> float:
    rows, cols = gains.shape
    best = 0.0 if m == 0 else -math.inf
    for grids in itertools.combinations(range(rows), m):
        for sites in itertools.permutations(range(cols), m):
            best = max(best, float(sum(gains[i, j] - 1.0 for i, j in zip(grids, sites))))
    return best


def brute_force_assignment(cost: np.ndarray) -> float:
    n = cost.shape[0]
    perms = np.array(list(itertools.permutations(range(n))))
    return float(cost[np.arange(n), perms].sum(axis=1).min())


def _random_gains(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    gains = 1.0 + rng.exponential(1.0, size=(rows, cols))
    # gated cells carry exactly unit gain
    gains[rng.uniform(size=(rows, cols)) < 0.3] = 1.0
    return gains


def check_solve_epoch(instances: int, rng: np.random.Generator, max_side: int = 6, max_m: int = 3) -> OracleResult:
    worst = 0.0
    for _ in range(instances):
        rows, cols = rng.integers(1, max_side + 1, size=2)
        m = int(rng.integers(0, min(max_m, rows, cols) + 1))
        gains = _random_gains(rng, int(rows), int(cols))
        worst = max(worst, abs(solve_epoch(gains, m).weight - brute_force_epoch(gains, m)))
    return OracleResult(f'solve_epoch vs enumeration ({instances} instances)', worst <= EXACT_TOLERANCE,
                        f'largest gap {worst:.3g}')


def check_solve_assignment(instances: int, rng: np.random.Generator, n: int = 7) -> OracleResult:
    worst = 0.0
    for _ in range(instances):
        cost = rng.uniform(0.0, 100.0, size=(n, n))
        worst = max(worst, abs(solve_assignment(cost)[1] - brute_force_assignment(cost)))
    return OracleResult(f'solve_assignment vs permutations ({instances} {n}x{n})', worst <= EXACT_TOLERANCE,
                        f'largest gap {worst:.3g}')


def check_chained_routing(instances: int, geometry: GeometryParams, platform: PlatformParams,
                          rng: np.random.Generator, epochs: int = 3, uavs: int = 3) -> OracleResult:
    layout = build_layout(geometry.rows, geometry.cols, geometry.cell_side, geometry.heights)
    sites = layout.candidate_sites
    worst = 0.0
    for _ in range(instances):
        epoch_sites = [sorted(int(j) for j in rng.choice(layout.site_count, size=uavs, replace=False))
                       for _ in range(epochs)]
        plan = PlacementPlan(tuple(tuple(zip(range(uavs), s)) for s in epoch_sites), 1.0, 0.0, ROBOTIC)
        chained = solve_p2(plan, layout, platform).transition_cost

        best = math.inf
        for perms in itertools.product(itertools.permutations(range(uavs)), repeat=epochs - 1):
            total = 0.0
            slot = list(range(uavs))
            for t, perm in enumerate(perms):
                a, b = sites[epoch_sites[t]], sites[epoch_sites[t + 1]]
                for k in range(uavs):
                    total += float(np.linalg.norm(a[slot[k]] - b[perm[slot[k]]]))
                    slot[k] = perm[slot[k]]
            best = min(best, total)
        worst = max(worst, abs(chained - best))
    return OracleResult(f'chained routing vs joint enumeration ({instances} instances)', worst <= 1e-6,
                        f'largest gap {worst:.3g}')


class OracleSuite:
    """Runs every check; ``full`` adds the N=2304 cascade and the long Monte Carlo runs."""

    def __init__(self, scenario: Scenario):
        self._radio = scenario.radio
        self._platform = scenario.platform
        self._geometry = scenario.geometry
        self._seed = scenario.experiment.master_seed

    def _rng(self, key: int) -> np.random.Generator:
        return substream(self._seed, 1000 + key)

    def run(self, full: bool = False) -> typing.List[OracleResult]:
        draws = 100_000
        results = []
        for n, k in itertools.product(FULL_ELEMENTS if full else FAST_ELEMENTS, RICIAN_FACTORS):
            results.append(check_cascade(n, k, draws, self._rng(n * 100 + int(k))))
        results.append(check_literal_cascade(self._radio.n_elements, self._radio.k_c))
        for k in (0.0, self._radio.k_d):
            results.append(check_direct_normalization(k, 4 * draws, self._rng(int(k))))
        results.extend(check_los_formula())
        results.append(check_los_set_size(self._radio, self._geometry, 10_000 if full else 2_000, self._rng(42)))
        results.append(check_flight_range(self._platform))
        results.append(check_solve_epoch(200, self._rng(1)))
        results.append(check_solve_assignment(100, self._rng(2)))
        results.append(check_chained_routing(20, self._geometry, self._platform, self._rng(3)))

        for r in results:
            (log.info if r.passed else log.error)('%s %s: %s', 'PASS' if r.passed else 'FAIL', r.name, r.detail)
        return results
