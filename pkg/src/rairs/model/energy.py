import logging
import math

import attr

from rairs.errors import SizingError, require

log = logging.getLogger(__name__)

SECONDS_PER_HOUR = 3600.0
ELEMENT_MULTIPLE = 4


def _positive(_, attribute, value):
    if not value > 0:
        raise ValueError(f'{attribute.name} must be positive, got {value}')


def _non_negative(_, attribute, value):
    if value < 0:
        raise ValueError(f'{attribute.name} must be non-negative, got {value}')


@attr.s(frozen=True, slots=True, auto_attribs=True)
class PlatformParams:
    mass_irs: float = attr.ib(converter=float, validator=_positive)
    mass_uav: float = attr.ib(converter=float, validator=_positive)
    mass_gripper: float = attr.ib(converter=float, validator=_positive)
    p_fly: float = attr.ib(converter=float, validator=_positive)
    v_fly: float = attr.ib(converter=float, validator=_positive)
    p_grasp: float = attr.ib(converter=float, validator=_positive)
    p_irs: float = attr.ib(converter=float, validator=_positive)
    battery: float = attr.ib(converter=float, validator=_positive)
    service_hours: float = attr.ib(converter=float, validator=_non_negative)

    @property
    def mass_total(self) -> float:
        return self.mass_irs + self.mass_uav + self.mass_gripper

    @property
    def service_seconds(self) -> float:
        return self.service_hours * SECONDS_PER_HOUR


@attr.s(frozen=True, slots=True, auto_attribs=True)
class EnergyLedger:
    e_fly: float
    e_grasp: float
    e_reflect: float
    residual: float
    feasible: bool


@attr.s(frozen=True, slots=True, auto_attribs=True)
class FlightRange:
    distance: float
    feasible: bool


@attr.s(frozen=True, slots=True, auto_attribs=True)
class IrsSizing:
    n_r: int
    n_elements: int
    fraunhofer: float


def fly_energy(distance: float, params: PlatformParams) -> float:
    require(distance >= 0, f'distance must be non-negative, got {distance}')
    return params.p_fly * distance / params.v_fly


def grasp_energy(params: PlatformParams) -> float:
    return params.p_grasp * params.service_seconds


def reflect_energy(params: PlatformParams) -> float:
    return params.p_irs * params.service_seconds


def ledger(distance: float, params: PlatformParams) -> EnergyLedger:
    e_fly = fly_energy(distance, params)
    e_grasp = grasp_energy(params)
    e_reflect = reflect_energy(params)
    residual = params.battery - e_fly - e_grasp - e_reflect
    return EnergyLedger(e_fly, e_grasp, e_reflect, residual, residual >= 0)


def flight_range(params: PlatformParams) -> FlightRange:
    budget = params.battery - grasp_energy(params) - reflect_energy(params)
    if budget < 0:
        log.warning('Grasping and reflecting alone need %.0f J more than the battery holds', -budget)
        return FlightRange(0.0, False)
    return FlightRange(budget / params.p_fly * params.v_fly, True)


def fraunhofer_distance(n_r: int, wavelength: float) -> float:
    require(n_r >= 1, f'N_r must be at least 1, got {n_r}')
    return wavelength / 2.0 * n_r * n_r


def size_irs(d_min: float, wavelength: float) -> IrsSizing:
    require(d_min > 0, f'minimum distance must be positive, got {d_min}')
    n_r = ELEMENT_MULTIPLE * int(math.sqrt(2.0 * d_min / wavelength) // ELEMENT_MULTIPLE)
    # correct float rounding at exact boundaries
    while fraunhofer_distance(n_r + ELEMENT_MULTIPLE, wavelength) <= d_min * (1 + 1e-12):
        n_r += ELEMENT_MULTIPLE
    while n_r > 0 and fraunhofer_distance(n_r, wavelength) > d_min * (1 + 1e-12):
        n_r -= ELEMENT_MULTIPLE
    if n_r < ELEMENT_MULTIPLE:
        raise SizingError(f'D_min={d_min} m is below the Fraunhofer distance of a '
                          f'{ELEMENT_MULTIPLE}x{ELEMENT_MULTIPLE} surface')
    return IrsSizing(n_r, n_r * n_r, fraunhofer_distance(n_r, wavelength))
