import logging
import typing

import attr
import numpy as np

from rairs.errors import require

log = logging.getLogger(__name__)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.setflags(write=False)
    return a


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class ScenarioLayout:
    """Manhattan-grid microcell: cell centers, lattice-vertex anchor sites and the base station.

    Coordinates are planar meters with the origin at a corner of the covered area. Grid ``i``
    sits at ``(row, col) = divmod(i, grid_cols)``, site ``j`` at ``divmod(j, grid_cols + 1)``.
    """
    grid_rows: int
    grid_cols: int
    cell_side: float
    bs_position: np.ndarray
    cell_centers: np.ndarray
    candidate_sites: np.ndarray
    h1: float
    h2: float
    h3: float

    @property
    def grid_count(self) -> int:
        return self.grid_rows * self.grid_cols

    @property
    def site_count(self) -> int:
        return (self.grid_rows + 1) * (self.grid_cols + 1)

    def grid_cell(self, i: int) -> typing.Tuple[int, int]:
        return divmod(int(i), self.grid_cols)

    def site_vertex(self, j: int) -> typing.Tuple[int, int]:
        return divmod(int(j), self.grid_cols + 1)


@attr.s(frozen=True, slots=True, auto_attribs=True, eq=False)
class DistanceTables:
    l_bs_ut: np.ndarray
    r_bs_site: np.ndarray
    d_site_ut: np.ndarray
    d2_bs_ut: np.ndarray


def build_layout(rows: int, cols: int, cell_side: float,
                 heights: typing.Tuple[float, float, float]) -> ScenarioLayout:
    require(rows >= 1 and cols >= 1, f'grid must have at least one row and column, got {rows}x{cols}')
    require(cell_side > 0, f'cell side must be positive, got {cell_side}')
    h1, h2, h3 = heights
    require(min(h1, h2, h3) > 0, f'height differences must be positive, got {heights}')

    r, c = np.meshgrid(np.arange(rows), np.arange(cols), indexing='ij')
    centers = np.stack([(c.ravel() + 0.5) * cell_side, (r.ravel() + 0.5) * cell_side], axis=1)

    vr, vc = np.meshgrid(np.arange(rows + 1), np.arange(cols + 1), indexing='ij')
    sites = np.stack([vc.ravel() * cell_side, vr.ravel() * cell_side], axis=1)

    bs = np.array([cols * cell_side / 2.0, rows * cell_side / 2.0])

    log.debug('Layout %dx%d cells of %.1f m, %d candidate sites, BS at %s', rows, cols, cell_side, len(sites), bs)
    return ScenarioLayout(rows, cols, float(cell_side), _frozen(bs), _frozen(centers), _frozen(sites),
                          float(h1), float(h2), float(h3))


def compute_distances(layout: ScenarioLayout) -> DistanceTables:
    bs = layout.bs_position
    d2_bs_ut = np.linalg.norm(layout.cell_centers - bs, axis=1)
    d2_bs_site = np.linalg.norm(layout.candidate_sites - bs, axis=1)
    d2_site_ut = np.linalg.norm(layout.cell_centers[:, None, :] - layout.candidate_sites[None, :, :], axis=2)

    return DistanceTables(
        l_bs_ut=_frozen(np.sqrt(d2_bs_ut ** 2 + layout.h1 ** 2)),
        r_bs_site=_frozen(np.sqrt(d2_bs_site ** 2 + layout.h2 ** 2)),
        d_site_ut=_frozen(np.sqrt(d2_site_ut ** 2 + layout.h3 ** 2)),
        d2_bs_ut=_frozen(d2_bs_ut),
    )


def min_irs_distance(layout: ScenarioLayout, distances: DistanceTables) -> float:
    """Smallest IRS-to-transceiver distance: a user right below the anchor, or the nearest site to the BS."""
    return float(min(layout.h3, distances.r_bs_site.min()))


def check_area(layout: ScenarioLayout, area_side: float) -> None:
    span = (layout.grid_cols * layout.cell_side, layout.grid_rows * layout.cell_side)
    if not np.allclose(span, area_side):
        log.warning('Stated area side %.1f m differs from the grid span %.1f x %.1f m; the grid is used',
                    area_side, *span)
