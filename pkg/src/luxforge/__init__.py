"""luxforge: interior lighting dimensioning and branch-circuit sizing engine."""

__version__ = "0.1.0"

from .circuits import (
    CircuitSpec,
    ConductorChoice,
    ExplicitLoad,
    LightingLoad,
    SocketLoad,
    circuit_current,
    circuit_load,
    select_conductor,
    size_circuit,
    voltage_drop,
)
from .lumen_method import (
    DimensioningResult,
    LumenMethodInput,
    Reflectances,
    RoomGeometry,
    achieved_illuminance,
    dimension_luminaires,
    mounting_height,
    room_index,
    useful_area,
    utilization_coefficient,
    utilization_from_flux,
)
from .photometry import (
    Luminaire,
    PhotometricDistribution,
    intensity_at,
    parse_photometry,
    serialize_photometry,
    total_flux,
)
from .point_grid import (
    GridStatistics,
    IlluminanceGrid,
    LuminairePlacement,
    compute_grid,
    direct_illuminance_at,
    grid_statistics,
    suggest_layout,
)
from .project import (
    DeviceCounts,
    Project,
    ProjectContext,
    RoomCategory,
    RoomSpec,
    device_totals,
    load_project,
    required_illuminance,
    save_project,
    validate_project,
)

__all__ = [name for name in dir() if not name.startswith("_")]
