import logging
import math
import typing

import attr
import numpy as np
from scipy import special

from rairs.errors import require
from rairs.model.geometry import DistanceTables
from rairs.utils import ArrayLike, db_to_linear, linear_to_db

log = logging.getLogger(__name__)

SPEED_OF_LIGHT = 299_792_458.0

NLOS_CONVENTIONAL = 'conventional'
NLOS_SET_BUILDER = 'set-builder'
NLOS_RULES = (NLOS_CONVENTIONAL, NLOS_SET_BUILDER)

LOS_BREAKPOINT = 18.0
LOS_DECAY = 36.0


def _positive(_, attribute, value):
    if not value > 0:
        raise ValueError(f'{attribute.name} must be positive, got {value}')


def _square_of_multiple_of_4(_, attribute, value):
    n_r = math.isqrt(value)
    if n_r * n_r != value or n_r % 4 or n_r == 0:
        raise ValueError(f'{attribute.name} must be N_r^2 with N_r a positive multiple of 4, got {value}')


@attr.s(frozen=True, slots=True, auto_attribs=True)
class RadioParams:
    carrier_freq: float = attr.ib(converter=float, validator=_positive)
    tx_power_dbm: float = attr.ib(converter=float)
    noise_power_dbm: float = attr.ib(converter=float)
    a_d_db: float = attr.ib(converter=float)
    a_t_db: float = attr.ib(converter=float)
    a_r_db: float = attr.ib(converter=float)
    eta1: float = attr.ib(converter=float, validator=_positive)
    eta2: float = attr.ib(converter=float, validator=_positive)
    eta3: float = attr.ib(converter=float, validator=_positive)
    k_d_db: float = attr.ib(converter=float)
    k_c_db: float = attr.ib(converter=float)
    snr_threshold_db: float = attr.ib(converter=float)
    n_elements: int = attr.ib(converter=int, validator=_square_of_multiple_of_4)
    nlos_rule: str = attr.ib(default=NLOS_CONVENTIONAL, validator=attr.validators.in_(NLOS_RULES))
    printed_cascade_form: bool = attr.ib(default=False, converter=bool)

    @eta2.validator
    def _check_eta2(self, attribute, value):
        if self.eta1 > value:
            raise ValueError(f'LoS exponent eta1={self.eta1} exceeds NLoS exponent eta2={value}')

    @eta3.validator
    def _check_eta3(self, attribute, value):
        if not value < self.eta2:
            raise ValueError(f'cascaded exponent eta3={value} must be below eta2={self.eta2}')

    @property
    def wavelength(self) -> float:
        return SPEED_OF_LIGHT / self.carrier_freq

    @property
    def link_budget_db(self) -> float:
        return self.tx_power_dbm - self.noise_power_dbm

    @property
    def k_d(self) -> float:
        return float(db_to_linear(self.k_d_db))

    @property
    def k_c(self) -> float:
        return float(db_to_linear(self.k_c_db))


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class ChannelRealization:
    nlos_set: typing.FrozenSet[int]
    direct_snr_db: np.ndarray
    weak_set: typing.FrozenSet[int]
    los_draws: np.ndarray
    rician_k: np.ndarray

    @property
    def weak_grids(self) -> typing.List[int]:
        return sorted(self.weak_set)


def los_probability(d: ArrayLike) -> ArrayLike:
    d = np.asarray(d, dtype=float)
    require(bool(np.all(d >= 0)), 'distance must be non-negative')
    safe = np.maximum(d, LOS_BREAKPOINT)
    far = LOS_BREAKPOINT / safe + np.exp(-safe / LOS_DECAY) * (1.0 - LOS_BREAKPOINT / safe)
    p = np.where(d < LOS_BREAKPOINT, 1.0, far)
    return float(p) if p.ndim == 0 else p


def nlos_set(distances: DistanceTables, draws: np.ndarray, rule: str = NLOS_CONVENTIONAL) -> typing.FrozenSet[int]:
    p = los_probability(distances.d2_bs_ut)
    if rule == NLOS_SET_BUILDER:
        mask = p > draws
    elif rule == NLOS_CONVENTIONAL:
        mask = draws > p
    else:
        raise ValueError(rule)
    return frozenset(int(i) for i in np.flatnonzero(mask))


def draw_nlos_set(distances: DistanceTables, rng: np.random.Generator,
                  rule: str = NLOS_CONVENTIONAL) -> typing.Tuple[typing.FrozenSet[int], np.ndarray]:
    draws = rng.uniform(0.0, 1.0, size=distances.d2_bs_ut.shape)
    return nlos_set(distances, draws, rule), draws


def direct_path_loss_db(length: ArrayLike, nlos: ArrayLike, params: RadioParams) -> ArrayLike:
    length = np.asarray(length, dtype=float)
    require(bool(np.all(length > 0)), 'link length must be positive')
    eta = np.where(np.asarray(nlos, dtype=bool), params.eta2, params.eta1)
    pl = params.a_d_db - 10.0 * eta * np.log10(length)
    return float(pl) if pl.ndim == 0 else pl


def direct_snr_db(pl_db: ArrayLike, params: RadioParams) -> ArrayLike:
    return pl_db + params.link_budget_db


def weak_coverage_set(realization: ChannelRealization, params: RadioParams) -> typing.FrozenSet[int]:
    return frozenset(i for i in realization.nlos_set
                     if realization.direct_snr_db[i] < params.snr_threshold_db)


def realize_channel(distances: DistanceTables, params: RadioParams, rng: np.random.Generator) -> ChannelRealization:
    nlos, draws = draw_nlos_set(distances, rng, params.nlos_rule)
    mask = np.zeros(draws.shape, dtype=bool)
    mask[list(nlos)] = True
    snr = direct_snr_db(direct_path_loss_db(distances.l_bs_ut, mask, params), params)
    snr.setflags(write=False)
    draws.setflags(write=False)
    partial = ChannelRealization(nlos, snr, frozenset(), draws, np.where(mask, 0.0, params.k_d))
    weak = weak_coverage_set(partial, params)
    log.debug('Channel realization: %d NLoS grids, %d weakly covered', len(nlos), len(weak))
    return attr.evolve(partial, weak_set=weak)


def laguerre_half(x: float) -> float:
    """L_{1/2}(x) for x <= 0, via exponentially scaled Bessel functions."""
    k = -x
    return float((1.0 + k) * special.i0e(k / 2.0) + k * special.i1e(k / 2.0))


def rician_amplitude_mean(k_linear: float) -> float:
    require(k_linear >= 0, f'Rician factor must be non-negative, got {k_linear}')
    return math.sqrt(1.0 / (1.0 + k_linear)) * laguerre_half(-k_linear)


def cascade_amplification(n_elements: int, k_c_linear: float, printed_form: bool = False) -> float:
    require(n_elements >= 1, f'IRS needs at least one element, got {n_elements}')
    if printed_form:
        # printed form: the Laguerre term sits in the denominator
        require(k_c_linear >= 0, f'Rician factor must be non-negative, got {k_c_linear}')
        coherent = (laguerre_half(-k_c_linear) / math.sqrt(1.0 / (1.0 + k_c_linear))) ** 4
    else:
        coherent = rician_amplitude_mean(k_c_linear) ** 4
    n = float(n_elements)
    return n + (math.pi ** 2 / 16.0) * (n * n - n) * coherent


def cascaded_path_loss_db(r: ArrayLike, d: ArrayLike, params: RadioParams) -> ArrayLike:
    r = np.asarray(r, dtype=float)
    d = np.asarray(d, dtype=float)
    require(bool(np.all(r > 0) and np.all(d > 0)), 'link lengths must be positive')
    return (params.a_t_db - 10.0 * params.eta3 * np.log10(r)) + (params.a_r_db - 10.0 * params.eta3 * np.log10(d))


def cascaded_snr_db(r: ArrayLike, d: ArrayLike, params: RadioParams) -> ArrayLike:
    amplification = cascade_amplification(params.n_elements, params.k_c, params.printed_cascade_form)
    snr = cascaded_path_loss_db(r, d, params) + float(linear_to_db(amplification)) + params.link_budget_db
    return float(snr) if np.ndim(snr) == 0 else snr


def snr_ratio(gamma_d_db: ArrayLike, gamma_c_db: ArrayLike) -> ArrayLike:
    gd = db_to_linear(gamma_d_db)
    gc = db_to_linear(gamma_c_db)
    g = (gd + gc) / gd
    return float(g) if np.ndim(g) == 0 else g


def sample_rician(k_linear: float, size, rng: np.random.Generator) -> np.ndarray:
    """Unit-power Rician coefficients: sqrt(K/(K+1)) e^{j phi} plus a CN(0, 1/(K+1)) scattered part."""
    require(k_linear >= 0, f'Rician factor must be non-negative, got {k_linear}')
    phi = rng.uniform(0.0, 2.0 * math.pi, size=size)
    los = math.sqrt(k_linear / (k_linear + 1.0)) * np.exp(1j * phi)
    s = math.sqrt(1.0 / (2.0 * (k_linear + 1.0)))
    return los + s * (rng.standard_normal(size) + 1j * rng.standard_normal(size))


def sample_direct_gain(k_linear: float, draws: int, rng: np.random.Generator) -> np.ndarray:
    """|h_d|^2 for the direct channel, normalized so its expectation is 1 for every K."""
    return np.abs(sample_rician(k_linear, draws, rng)) ** 2


def sample_cascade_power(n_elements: int, k_linear: float, draws: int, rng: np.random.Generator) -> np.ndarray:
    """|sum_l alpha_l beta_l|^2 with the IRS phases aligned to the cascaded channel."""
    alpha = np.abs(sample_rician(k_linear, (draws, n_elements), rng))
    beta = np.abs(sample_rician(k_linear, (draws, n_elements), rng))
    return np.sum(alpha * beta, axis=1) ** 2
