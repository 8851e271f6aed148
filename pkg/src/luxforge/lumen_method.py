"""Average-illuminance dimensioning by the coefficient-of-utilization method.

Given room geometry, surface reflectances, a required average illuminance
and a luminaire, computes the minimal number of fittings whose useful flux
sustains that level on the useful plane, allowing for depreciation over
maintenance intervals.
"""

from __future__ import annotations

import hashlib
import math
import os
from bisect import bisect_right
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import (
    DegenerateLuminaire,
    FluxDomain,
    GeometryContradiction,
    NonPositiveArea,
    NonPositiveDimension,
    NonPositiveIndex,
)
from .photometry import Luminaire

CU_TABLE_ENV = "LUXFORGE_CU_TABLE"

DEFAULT_MAINTENANCE = 1.25
DEFAULT_FLUX_PER_LAMP = 550.0
DEFAULT_USEFUL_PLANE = 1.6


@dataclass(frozen=True)
class RoomGeometry:
    """Rectangular room, meters.

    ``useful_plane_height`` is where the illuminance requirement applies
    (roughly eye level); ``suspension_drop`` is how far fittings hang
    below the ceiling. The combination must leave headroom above the
    useful plane; that is checked where it matters (mounting_height,
    project validation) so that a loaded project can still report the
    contradiction instead of failing to construct.
    """

    length: float
    width: float
    height: float
    useful_plane_height: float = DEFAULT_USEFUL_PLANE
    suspension_drop: float = 0.0

    def __post_init__(self) -> None:
        if self.length <= 0.0 or self.width <= 0.0 or self.height <= 0.0:
            raise NonPositiveDimension("room dimensions must be positive")
        if self.useful_plane_height < 0.0 or self.suspension_drop < 0.0:
            raise NonPositiveDimension("plane height and suspension drop must be >= 0")


@dataclass(frozen=True)
class Reflectances:
    ceiling: float = 0.5
    walls: float = 0.5

    def __post_init__(self) -> None:
        for value in (self.ceiling, self.walls):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"reflectance {value} outside [0, 1]")


@dataclass(frozen=True)
class LumenMethodInput:
    """Everything dimensioning needs for one room.

    ``utilization`` forces the coefficient instead of looking it up in
    the table (used by fixtures and tests; None means look it up).
    """

    geometry: RoomGeometry
    reflectances: Reflectances
    required_lux: float
    maintenance: float = DEFAULT_MAINTENANCE
    luminaire: Luminaire = Luminaire(None)
    utilization: float | None = None

    def __post_init__(self) -> None:
        if self.required_lux <= 0.0:
            raise ValueError("required illuminance must be positive")
        if self.maintenance < 1.0:
            raise ValueError("maintenance coefficient must be >= 1")
        if self.utilization is not None and not 0.0 < self.utilization <= 1.0:
            raise ValueError("forced utilization must lie in (0, 1]")


@dataclass(frozen=True)
class DimensioningResult:
    luminaire_count: int
    utilization: float
    useful_area: float
    mounting_height: float
    room_index: float
    total_flux: float
    useful_flux: float
    achieved_lux: float


def useful_area(length: float, width: float) -> float:
    """Horizontal area of the useful plane, m^2."""
    if length <= 0.0 or width <= 0.0:
        raise NonPositiveDimension("area factors must be positive")
    return length * width


def mounting_height(geometry: RoomGeometry) -> float:
    """Height of the fittings over the useful plane, m."""
    drop = geometry.useful_plane_height + geometry.suspension_drop
    if drop >= geometry.height:
        raise GeometryContradiction(
            f"useful plane ({geometry.useful_plane_height}) plus suspension "
            f"({geometry.suspension_drop}) reaches the ceiling ({geometry.height})"
        )
    return geometry.height - drop


def room_index(length: float, width: float, height_over_plane: float) -> float:
    """Geometric index length*width / (h*(length+width)) used by CU tables."""
    if length <= 0.0 or width <= 0.0 or height_over_plane <= 0.0:
        raise NonPositiveDimension("room index factors must be positive")
    return (length * width) / (height_over_plane * (length + width))


class UtilizationTable:
    """Utilization coefficients over room index x reflectance pairs.

    Columns are keyed by combined reflectance (ceiling + walls); lookups
    interpolate bilinearly and clamp outside the grid.
    """

    def __init__(
        self,
        indices: tuple[float, ...],
        columns: tuple[tuple[float, float], ...],
        values: tuple[tuple[float, ...], ...],
        fingerprint: str = "builtin",
    ):
        if len(values) != len(indices):
            raise ValueError("one value row per room index required")
        for row in values:
            if len(row) != len(columns):
                raise ValueError("one value per reflectance column required")
            for v in row:
                if not 0.0 < v <= 1.0:
                    raise ValueError(f"utilization {v} outside (0, 1]")
        self.indices = indices
        self.columns = columns
        self.fingerprint = fingerprint
        # re-order columns by ascending combined reflectance for interpolation
        keyed = sorted(
            range(len(columns)), key=lambda i: columns[i][0] + columns[i][1]
        )
        self._keys = tuple(columns[i][0] + columns[i][1] for i in keyed)
        if len(set(self._keys)) != len(self._keys):
            raise ValueError("combined reflectances must be distinct per column")
        self._values = tuple(tuple(row[i] for i in keyed) for row in values)

    def lookup(self, index: float, reflectances: Reflectances) -> float:
        if index <= 0.0:
            raise NonPositiveIndex("room index must be positive")
        r_lo, r_hi, tr = _bracket(self.indices, index)
        c_lo, c_hi, tc = _bracket(
            self._keys, reflectances.ceiling + reflectances.walls
        )
        low = self._values[r_lo][c_lo] + (self._values[r_lo][c_hi] - self._values[r_lo][c_lo]) * tc
        high = self._values[r_hi][c_lo] + (self._values[r_hi][c_hi] - self._values[r_hi][c_lo]) * tc
        return low + (high - low) * tr


def _bracket(grid: tuple[float, ...], x: float) -> tuple[int, int, float]:
    if x <= grid[0]:
        return 0, 0, 0.0
    if x >= grid[-1]:
        last = len(grid) - 1
        return last, last, 0.0
    hi = bisect_right(grid, x)
    lo = hi - 1
    return lo, hi, (x - grid[lo]) / (grid[hi] - grid[lo])


def parse_cu_table(text: str, fingerprint: str = "builtin") -> UtilizationTable:
    """Parse the plain-text CU matrix (header row of ceiling/walls pairs)."""
    rows = [
        line.split()
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows or rows[0][0] != "index":
        raise ValueError("CU table must start with an 'index' header row")
    columns = tuple(
        (float(pair.split("/")[0]), float(pair.split("/")[1])) for pair in rows[0][1:]
    )
    indices = tuple(float(r[0]) for r in rows[1:])
    values = tuple(tuple(float(v) for v in r[1:]) for r in rows[1:])
    if any(a >= b for a, b in zip(indices, indices[1:])):
        raise ValueError("room index rows must ascend")
    return UtilizationTable(indices, columns, values, fingerprint)


def load_cu_table(path: str | Path | None = None) -> UtilizationTable:
    """Load the CU table from ``path``, $LUXFORGE_CU_TABLE, or the bundled file."""
    if path is None:
        override = os.environ.get(CU_TABLE_ENV)
        if override:
            path = override
    if path is not None:
        data = Path(path).read_bytes()
    else:
        data = (resources.files("luxforge") / "data" / "cu_table.txt").read_bytes()
    fingerprint = hashlib.sha256(data).hexdigest()[:16]
    return parse_cu_table(data.decode("utf-8"), fingerprint)


_default_table: UtilizationTable | None = None
_default_table_env: str | None = None


def default_cu_table() -> UtilizationTable:
    """Process-wide CU table, reloaded if $LUXFORGE_CU_TABLE changes."""
    global _default_table, _default_table_env
    env = os.environ.get(CU_TABLE_ENV)
    if _default_table is None or env != _default_table_env:
        _default_table = load_cu_table()
        _default_table_env = env
    return _default_table


def utilization_coefficient(
    index: float,
    reflectances: Reflectances,
    table: UtilizationTable | None = None,
) -> float:
    """Fraction of emitted flux reaching the useful plane, from the table."""
    return (table or default_cu_table()).lookup(index, reflectances)


def utilization_from_flux(useful_flux: float, total_flux: float) -> float:
    """Utilization as the ratio of useful to total flux."""
    if total_flux <= 0.0:
        raise FluxDomain("total flux must be positive")
    if useful_flux < 0.0 or useful_flux > total_flux:
        raise FluxDomain("useful flux must lie in [0, total flux]")
    return useful_flux / total_flux


def achieved_illuminance(
    luminaire_count: int,
    luminaire: Luminaire,
    utilization: float,
    area: float,
    maintenance: float,
) -> float:
    """Average lux delivered on the useful plane by ``luminaire_count`` fittings."""
    if area <= 0.0:
        raise NonPositiveArea("useful area must be positive")
    if maintenance <= 0.0:
        raise NonPositiveArea("maintenance coefficient must be positive")
    return luminaire_count * luminaire.flux * utilization / (area * maintenance)


def dimension_luminaires(
    inp: LumenMethodInput, table: UtilizationTable | None = None
) -> DimensioningResult:
    """Minimal luminaire count meeting the required average illuminance.

    The count is minimal against achieved_illuminance: one fewer fitting
    would fall short of the requirement (unless the count is already 1).
    """
    geometry = inp.geometry
    area = useful_area(geometry.length, geometry.width)
    height = mounting_height(geometry)
    index = room_index(geometry.length, geometry.width, height)
    if inp.utilization is not None:
        utilization = inp.utilization
    else:
        utilization = utilization_coefficient(index, inp.reflectances, table)
    flux = inp.luminaire.flux
    if flux <= 0.0:
        raise DegenerateLuminaire("luminaire emits no flux")

    needed = inp.required_lux * area * inp.maintenance / (utilization * flux)
    count = max(1, math.ceil(needed))
    # settle ties against the same predicate the count is defined by
    while count > 1 and achieved_illuminance(
        count - 1, inp.luminaire, utilization, area, inp.maintenance
    ) >= inp.required_lux:
        count -= 1
    while achieved_illuminance(
        count, inp.luminaire, utilization, area, inp.maintenance
    ) < inp.required_lux:
        count += 1

    total = count * flux
    return DimensioningResult(
        luminaire_count=count,
        utilization=utilization,
        useful_area=area,
        mounting_height=height,
        room_index=index,
        total_flux=total,
        useful_flux=utilization * total,
        achieved_lux=achieved_illuminance(
            count, inp.luminaire, utilization, area, inp.maintenance
        ),
    )
