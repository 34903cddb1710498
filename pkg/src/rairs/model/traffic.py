import logging
import math
import typing

import attr
import numpy as np

from rairs.errors import require

log = logging.getLogger(__name__)

PROFILE_LOW = 0.8
PROFILE_HIGH = 1.4


def default_profile(epochs: int) -> typing.Tuple[float, ...]:
    """Sinusoidal day profile spanning exactly [0.8, 1.4] around the mean."""
    return tuple(1.1 + 0.3 * math.sin(2.0 * math.pi * t / epochs) for t in range(epochs))


def _profile_converter(value) -> typing.Optional[typing.Tuple[float, ...]]:
    return None if value is None else tuple(float(v) for v in value)


@attr.s(frozen=True, slots=True, auto_attribs=True)
class TrafficModel:
    base_mean: float = attr.ib(converter=float)
    sigma_log: float = attr.ib(converter=float)
    threshold_fraction: float = attr.ib(converter=float)
    epochs: int = attr.ib(converter=int)
    epoch_profile: typing.Optional[typing.Tuple[float, ...]] = attr.ib(default=None, converter=_profile_converter)
    temporal_rho: float = attr.ib(default=0.0, converter=float)
    start_hour: int = attr.ib(default=8, converter=int)

    def __attrs_post_init__(self):
        if self.base_mean <= 0:
            raise ValueError(f'base_mean must be positive, got {self.base_mean}')
        if self.sigma_log <= 0:
            raise ValueError(f'sigma_log must be positive, got {self.sigma_log}')
        if not 0 < self.threshold_fraction < 1:
            raise ValueError(f'threshold_fraction must lie in (0, 1), got {self.threshold_fraction}')
        if self.epochs < 1:
            raise ValueError(f'epochs must be at least 1, got {self.epochs}')
        if not 0 <= self.temporal_rho < 1:
            raise ValueError(f'temporal_rho must lie in [0, 1), got {self.temporal_rho}')
        if self.epoch_profile is not None:
            if len(self.epoch_profile) != self.epochs:
                raise ValueError(f'epoch_profile has {len(self.epoch_profile)} entries for {self.epochs} epochs')
            if not all(PROFILE_LOW <= m <= PROFILE_HIGH for m in self.epoch_profile):
                raise ValueError(f'epoch_profile multipliers must lie in [{PROFILE_LOW}, {PROFILE_HIGH}]')

    @property
    def profile(self) -> typing.Tuple[float, ...]:
        return self.epoch_profile if self.epoch_profile is not None else default_profile(self.epochs)

    @property
    def epoch_means(self) -> np.ndarray:
        return self.base_mean * np.asarray(self.profile)

    def epoch_label(self, t: int) -> str:
        return f'{(self.start_hour + t) % 24:02d}:00'


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class TrafficField:
    demand: np.ndarray
    threshold: np.ndarray
    mean: np.ndarray

    @property
    def epochs(self) -> int:
        return self.demand.shape[0]


def standard_normals(model: TrafficModel, grids: int, rng: np.random.Generator) -> np.ndarray:
    """Underlying N(0, 1) field, AR(1)-correlated across epochs when temporal_rho > 0."""
    z = rng.standard_normal((model.epochs, grids))
    rho = model.temporal_rho
    for t in range(1, model.epochs):
        z[t] = rho * z[t - 1] + math.sqrt(1.0 - rho * rho) * z[t]
    return z


def field_from_normals(model: TrafficModel, z: np.ndarray) -> TrafficField:
    means = model.epoch_means
    mu = np.log(means) - model.sigma_log ** 2 / 2.0
    demand = np.exp(mu[:, None] + model.sigma_log * z)
    return TrafficField(demand=demand, threshold=model.threshold_fraction * means, mean=means)


def sample_traffic(model: TrafficModel, grids: int, rng: np.random.Generator) -> TrafficField:
    require(grids >= 0, f'grid count must be non-negative, got {grids}')
    result = field_from_normals(model, standard_normals(model, grids, rng))
    log.debug('Traffic field sigma=%.2f: %d epochs x %d grids, %.1f%% above threshold', model.sigma_log,
              result.epochs, grids, 100.0 * float(np.mean(result.demand >= result.threshold[:, None]))
              if grids else 0.0)
    return result


def gate_gain(g, demand, threshold):
    result = np.where(np.asarray(demand) >= np.asarray(threshold), g, 1.0)
    return float(result) if result.ndim == 0 else result
