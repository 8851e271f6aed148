"""Direct-component illuminance on the useful plane, point by point.

Luminaires are treated as points aimed straight down; each grid value is
the inverse-square-cosine sum over the placed fittings divided by the
maintenance coefficient. Interreflection is not modeled here; it enters
the design only through the utilization coefficient of the lumen method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadSpacing, EmptyGrid
from .lumen_method import RoomGeometry
from .photometry import Luminaire, intensity_at

DEFAULT_SPACING = 0.25


@dataclass(frozen=True)
class LuminairePlacement:
    """One fitting at plan position (x, y), ``mount_height`` above the
    useful plane, rotated ``orientation`` degrees about the vertical axis."""

    luminaire: Luminaire
    x: float
    y: float
    mount_height: float
    orientation: float = 0.0

    def __post_init__(self) -> None:
        if self.mount_height <= 0.0:
            raise ValueError("mount height must be positive")
        if self.luminaire.distribution is None:
            raise ValueError("placement needs a luminaire with photometric data")


@dataclass(frozen=True)
class IlluminanceGrid:
    """Lux sampled at cell centers of a lattice covering the room plan.

    ``values`` is indexed ``[iy][ix]`` matching ``ys`` and ``xs``.
    """

    xs: tuple[float, ...]
    ys: tuple[float, ...]
    values: tuple[tuple[float, ...], ...]
    spacing: float
    plane_height: float

    @property
    def nx(self) -> int:
        return len(self.xs)

    @property
    def ny(self) -> int:
        return len(self.ys)


@dataclass(frozen=True)
class GridStatistics:
    minimum: float
    average: float
    maximum: float
    uniformity: float


def direct_illuminance_at(
    point: tuple[float, float],
    placements: list[LuminairePlacement] | tuple[LuminairePlacement, ...],
    maintenance: float = 1.0,
) -> float:
    """Horizontal illuminance (lx) at a plan point on the useful plane.

    E = (1/K) * sum I(theta, phi) * cos(theta) / r^2 over placements,
    with r the slant distance and theta the angle off nadir. An empty
    placement list yields 0.
    """
    if maintenance < 1.0:
        raise ValueError("maintenance coefficient must be >= 1")
    x, y = point
    total = 0.0
    for placement in placements:
        dx = x - placement.x
        dy = y - placement.y
        h = placement.mount_height
        horizontal_sq = dx * dx + dy * dy
        r_sq = h * h + horizontal_sq
        theta = math.degrees(math.atan2(math.sqrt(horizontal_sq), h))
        bearing = math.degrees(math.atan2(dy, dx)) % 360.0
        phi = (bearing - placement.orientation) % 360.0
        intensity = intensity_at(placement.luminaire.distribution, theta, phi)
        cos_theta = h / math.sqrt(r_sq)
        total += intensity * cos_theta / r_sq
    return total / maintenance


def _centers(extent: float, spacing: float) -> tuple[float, ...]:
    count = max(2, math.ceil(extent / spacing - 1e-9))
    step = extent / count
    return tuple((i + 0.5) * step for i in range(count))


def compute_grid(
    room: RoomGeometry,
    placements: list[LuminairePlacement] | tuple[LuminairePlacement, ...],
    spacing: float = DEFAULT_SPACING,
    maintenance: float = 1.0,
) -> IlluminanceGrid:
    """Evaluate the plane over [0, length] x [0, width] at cell centers.

    Cells are at most ``spacing`` wide and tile the room exactly (the
    effective step divides the extent). Values come from
    direct_illuminance_at in a fixed row-major order, so output is
    bit-stable for identical inputs.
    """
    if not 0.0 < spacing <= min(room.length, room.width):
        raise BadSpacing(
            f"spacing must lie in (0, {min(room.length, room.width)}], got {spacing}"
        )
    xs = _centers(room.length, spacing)
    ys = _centers(room.width, spacing)
    values = tuple(
        tuple(direct_illuminance_at((x, y), placements, maintenance) for x in xs)
        for y in ys
    )
    return IlluminanceGrid(
        xs=xs,
        ys=ys,
        values=values,
        spacing=spacing,
        plane_height=room.useful_plane_height,
    )


def grid_statistics(grid: IlluminanceGrid) -> GridStatistics:
    """Min/avg/max over all grid values plus uniformity = min/avg."""
    flat = [v for row in grid.values for v in row]
    if not flat:
        raise EmptyGrid("grid has no values")
    minimum = min(flat)
    maximum = max(flat)
    average = sum(flat) / len(flat)
    uniformity = minimum / average if average > 0.0 else 0.0
    return GridStatistics(minimum, average, maximum, uniformity)


def suggest_layout(room: RoomGeometry, count: int) -> list[tuple[float, float]]:
    """Plan positions for ``count`` fittings on a symmetric r x c lattice.

    r*c = count with r <= c and |r - c| minimal; the c columns run along
    the longer room axis. Positions are the cell centers of the
    partition, so the layout is invariant under the room's mirror axes.
    """
    if count < 1:
        raise ValueError("need at least one luminaire")
    rows = 1
    for candidate in range(1, math.isqrt(count) + 1):
        if count % candidate == 0:
            rows = candidate
    cols = count // rows
    if room.length < room.width:
        rows, cols = cols, rows
    return [
        ((j + 0.5) * room.length / cols, (i + 0.5) * room.width / rows)
        for i in range(rows)
        for j in range(cols)
    ]
