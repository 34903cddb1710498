import logging
import math

from rairs.config import Scenario
from rairs.errors import SizingError
from rairs.model.energy import fraunhofer_distance, flight_range, grasp_energy, reflect_energy, size_irs
from rairs.model.geometry import build_layout, check_area, compute_distances, min_irs_distance

log = logging.getLogger(__name__)


class MissionService:
    """Energy budget and IRS sizing of one RA-IRS platform under the configured scenario."""

    def __init__(self, scenario: Scenario):
        self._scenario = scenario

    def report(self) -> dict:
        platform = self._scenario.platform
        radio = self._scenario.radio
        geometry = self._scenario.geometry

        layout = build_layout(geometry.rows, geometry.cols, geometry.cell_side, geometry.heights)
        check_area(layout, geometry.area_side)
        d_min = min_irs_distance(layout, compute_distances(layout))

        fr = flight_range(platform)
        configured_n_r = math.isqrt(radio.n_elements)
        configured_fraunhofer = fraunhofer_distance(configured_n_r, radio.wavelength)
        compliant = configured_fraunhofer <= d_min
        if not compliant:
            log.warning('N_IRS=%d has a Fraunhofer distance of %.2f m, beyond D_min=%.2f m', radio.n_elements,
                        configured_fraunhofer, d_min)

        result = {
            'mass_total_kg': platform.mass_total,
            'service_hours': platform.service_hours,
            'battery_J': platform.battery,
            'e_grasp_J': grasp_energy(platform),
            'e_reflect_J': reflect_energy(platform),
            'flight_range_m': fr.distance,
            'flight_feasible': fr.feasible,
            'd_min_m': d_min,
            'configured_n_irs': radio.n_elements,
            'configured_fraunhofer_m': configured_fraunhofer,
            'configured_compliant': compliant,
        }
        try:
            sizing = size_irs(d_min, radio.wavelength)
            result.update({'sized_n_r': sizing.n_r, 'sized_n_irs': sizing.n_elements,
                           'sized_fraunhofer_m': sizing.fraunhofer})
        except SizingError as x:
            log.warning('No admissible IRS size: %s', x)
        log.info('Flight range %.0f m with %.0f J left after grasping and reflecting', fr.distance,
                 fr.distance / platform.v_fly * platform.p_fly)
        return result
