import logging
import pathlib
import typing

import attr
import importlib_resources
import yaml

from rairs.errors import ConfigError
from rairs.model import PlatformParams, RadioParams, TrafficModel
from rairs.model.solver import STRATEGIES, SolverParams

log = logging.getLogger(__name__)

DEFAULT_RESOURCE = 'scenario.yaml'


@attr.s(frozen=True, slots=True, auto_attribs=True)
class GeometryParams:
    rows: int = attr.ib(converter=int)
    cols: int = attr.ib(converter=int)
    cell_side: float = attr.ib(converter=float)
    area_side: float = attr.ib(converter=float)
    h_bs_ut: float = attr.ib(converter=float)
    h_site_bs: float = attr.ib(converter=float)
    h_site_ut: float = attr.ib(converter=float)

    @property
    def heights(self) -> typing.Tuple[float, float, float]:
        return self.h_bs_ut, self.h_site_bs, self.h_site_ut


def _strategies(value) -> typing.Tuple[str, ...]:
    return tuple(str(v) for v in value)


def _sigmas(value) -> typing.Tuple[float, ...]:
    return tuple(float(v) for v in value)


@attr.s(frozen=True, slots=True, auto_attribs=True)
class ExperimentParams:
    strategies: typing.Tuple[str, ...] = attr.ib(converter=_strategies)
    sigmas: typing.Tuple[float, ...] = attr.ib(converter=_sigmas)
    trials: int = attr.ib(converter=int)
    master_seed: int = attr.ib(converter=int)
    workers: int = attr.ib(default=1, converter=int)

    def __attrs_post_init__(self):
        if not self.strategies or not set(self.strategies) <= set(STRATEGIES):
            raise ValueError(f'strategies must be a nonempty subset of {STRATEGIES}, got {self.strategies}')
        if not self.sigmas or min(self.sigmas) <= 0:
            raise ValueError(f'sigmas must be a nonempty list of positive values, got {self.sigmas}')
        if self.trials < 1:
            raise ValueError(f'trials must be at least 1, got {self.trials}')
        if not 0 <= self.master_seed < 2 ** 64:
            raise ValueError(f'master_seed must be a 64-bit unsigned integer, got {self.master_seed}')
        if self.workers < 1:
            raise ValueError(f'workers must be at least 1, got {self.workers}')


_SECTIONS = {
    'geometry': GeometryParams,
    'radio': RadioParams,
    'platform': PlatformParams,
    'traffic': TrafficModel,
    'solver': SolverParams,
    'experiment': ExperimentParams,
}


@attr.s(frozen=True, slots=True, auto_attribs=True)
class Scenario:
    geometry: GeometryParams
    radio: RadioParams
    platform: PlatformParams
    traffic: TrafficModel
    solver: SolverParams
    experiment: ExperimentParams

    def to_dict(self) -> dict:
        return {name: _plain(attr.asdict(getattr(self, name), recurse=False)) for name in _SECTIONS}


def _plain(section: dict) -> dict:
    return {k: list(v) if isinstance(v, tuple) else v for k, v in section.items()}


def _load_yaml(stream) -> dict:
    try:
        data = yaml.safe_load(stream) or {}
    except yaml.YAMLError as x:
        raise ConfigError(f'scenario file is not valid YAML: {x}') from x
    if not isinstance(data, dict):
        raise ConfigError('scenario file must be a mapping of sections')
    return data


def default_raw() -> dict:
    import rairs.config.resources
    with importlib_resources.open_text(rairs.config.resources, DEFAULT_RESOURCE) as f:
        return _load_yaml(f)


def merge(base: dict, override: dict) -> dict:
    result = {name: dict(values) for name, values in base.items()}
    for name, values in override.items():
        if name not in _SECTIONS:
            raise ConfigError(f'unknown section [{name}], expected one of {sorted(_SECTIONS)}')
        if not isinstance(values, dict):
            raise ConfigError(f'section [{name}] must be a mapping')
        fields = {a.name for a in attr.fields(_SECTIONS[name])}
        unknown = set(values) - fields
        if unknown:
            raise ConfigError(f'unknown key(s) {sorted(unknown)} in section [{name}]')
        result.setdefault(name, {}).update(values)
    return result


def build_scenario(raw: dict) -> Scenario:
    sections = {}
    for name, cls in _SECTIONS.items():
        try:
            sections[name] = cls(**raw.get(name, {}))
        except (TypeError, ValueError) as x:
            raise ConfigError(f'section [{name}]: {x}') from x
    return Scenario(**sections)


def load_scenario(path: typing.Optional[pathlib.Path] = None) -> Scenario:
    raw = merge({}, default_raw())
    if path is not None:
        log.info('Loading scenario %s', path)
        try:
            with open(path, 'rt') as f:
                raw = merge(raw, _load_yaml(f))
        except OSError as x:
            raise ConfigError(f'cannot read scenario file {path}: {x.strerror}') from x
    return build_scenario(raw)
