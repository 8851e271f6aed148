"""Report assembly: per-room dimensioning rows and the project CSV.

Output is deterministic: room order follows the project, floats are
fixed at 4 decimal places, separators are commas with LF line endings.
Grid CSV export uses 6 decimal places per the grid interface.
"""

from __future__ import annotations

import io
from dataclasses import dataclass

from .circuits import CircuitSizing, size_circuit
from .lumen_method import DimensioningResult, LumenMethodInput, dimension_luminaires
from .point_grid import (
    DEFAULT_SPACING,
    GridStatistics,
    IlluminanceGrid,
    compute_grid,
    grid_statistics,
)
from .project import ProjectContext, RoomSpec, required_illuminance


@dataclass(frozen=True)
class ReportRow:
    room: str
    category: str
    required_lux: float
    useful_area: float | None = None
    luminaire_count: int | None = None
    utilization: float | None = None
    achieved_lux: float | None = None
    grid_min: float | None = None
    grid_avg: float | None = None
    grid_max: float | None = None
    compliant: bool | None = None


def dimension_room(ctx: ProjectContext, room: RoomSpec) -> DimensioningResult:
    """Run the lumen method for one room of the project."""
    if room.geometry is None:
        raise ValueError(f"room {room.name!r} has no geometry to dimension")
    return dimension_luminaires(
        LumenMethodInput(
            geometry=room.geometry,
            reflectances=room.reflectances,
            required_lux=required_illuminance(room.category),
            maintenance=ctx.project.k_dep,
            luminaire=ctx.luminaire_for(room),
            utilization=room.utilization,
        )
    )


def grid_for_room(
    ctx: ProjectContext, room: RoomSpec, spacing: float = DEFAULT_SPACING
) -> tuple[IlluminanceGrid, GridStatistics]:
    """Point-by-point grid for one room, maintenance per the project."""
    if room.geometry is None:
        raise ValueError(f"room {room.name!r} has no geometry for a grid")
    grid = compute_grid(
        room.geometry,
        ctx.placements_for(room),
        spacing=spacing,
        maintenance=ctx.project.k_dep,
    )
    return grid, grid_statistics(grid)


def report_row(ctx: ProjectContext, room: RoomSpec) -> ReportRow:
    required = required_illuminance(room.category)
    if room.geometry is None:
        return ReportRow(room=room.name, category=room.category.value, required_lux=required)
    result = dimension_room(ctx, room)
    row = ReportRow(
        room=room.name,
        category=room.category.value,
        required_lux=required,
        useful_area=result.useful_area,
        luminaire_count=result.luminaire_count,
        utilization=result.utilization,
        achieved_lux=result.achieved_lux,
        compliant=result.achieved_lux >= required,
    )
    if room.placements:
        _, stats = grid_for_room(ctx, room)
        row = ReportRow(
            **{
                **row.__dict__,
                "grid_min": stats.minimum,
                "grid_avg": stats.average,
                "grid_max": stats.maximum,
            }
        )
    return row


def build_report_rows(ctx: ProjectContext) -> list[ReportRow]:
    return [report_row(ctx, room) for room in ctx.project.rooms]


def size_circuits(ctx: ProjectContext) -> list[CircuitSizing]:
    return [size_circuit(circuit) for circuit in ctx.project.circuits]


def _cell(value: float | int | bool | None) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return f"{value:.4f}"


ROOM_HEADER = (
    "room,category,required_lux,useful_area_m2,luminaires,utilization,"
    "achieved_lux,grid_min_lux,grid_avg_lux,grid_max_lux,compliant"
)
CIRCUIT_HEADER = (
    "circuit,phase,load_w,current_a,conductor,cross_section_mm2,"
    "voltage_drop_pct,drop_limit_pct,within_limit"
)


def format_room_row(row: ReportRow) -> str:
    return ",".join(
        [
            _escape(row.room),
            row.category,
            _cell(row.required_lux),
            _cell(row.useful_area),
            _cell(row.luminaire_count),
            _cell(row.utilization),
            _cell(row.achieved_lux),
            _cell(row.grid_min),
            _cell(row.grid_avg),
            _cell(row.grid_max),
            _cell(row.compliant),
        ]
    )


def format_circuit_row(sizing: CircuitSizing) -> str:
    return ",".join(
        [
            _escape(sizing.circuit.name),
            sizing.circuit.phase,
            _cell(sizing.load_watts),
            _cell(sizing.current),
            sizing.conductor.designation,
            _cell(sizing.conductor.cross_section),
            _cell(sizing.drop_percent),
            _cell(sizing.drop_limit),
            _cell(sizing.within_limit),
        ]
    )


def project_report(ctx: ProjectContext) -> str:
    """Full CSV report: one row per room, then the circuit section."""
    out = io.StringIO()
    out.write(ROOM_HEADER + "\n")
    for row in build_report_rows(ctx):
        out.write(format_room_row(row) + "\n")
    out.write("\n")
    out.write(CIRCUIT_HEADER + "\n")
    for sizing in size_circuits(ctx):
        out.write(format_circuit_row(sizing) + "\n")
    return out.getvalue()


def grid_csv(grid: IlluminanceGrid) -> str:
    """Grid export: header ``x,y,lux``, one row per point, 6 decimals."""
    out = io.StringIO()
    out.write("x,y,lux\n")
    for iy, y in enumerate(grid.ys):
        for ix, x in enumerate(grid.xs):
            out.write(f"{x:.6f},{y:.6f},{grid.values[iy][ix]:.6f}\n")
    return out.getvalue()


def _escape(text: str) -> str:
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text
