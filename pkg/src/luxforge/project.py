"""Building model: rooms, categories, device inventories, persistence.

Project documents are UTF-8 JSON with this shape (unknown fields are
rejected, paths below are the ones reported by SchemaViolation):

    {
      "name": str,
      "k_dep": number >= 1,              # depreciation coefficient, default 1.25
      "default_phi_l": number > 0,       # lamp flux fallback (lm), default 550
      "photometry": {name: relative file path},
      "rooms": [
        {
          "name": str,                   # unique within the project
          "label": str | null,           # verbatim source inventory label
          "category": "living_space" | "hallway" | "main_space" | "annex_office",
          "geometry": null | {
            "length": m, "width": m, "height": m,
            "useful_plane_height": m,    # default 1.6
            "suspension_drop": m         # default 0
          },
          "reflectances": {"ceiling": 0..1, "walls": 0..1},
          "devices": {
            "lamps": n, "monopolar_switches": n, "bipolar_switches": n,
            "staircase_switches": n, "monophasic_sockets": n
          },
          "placements": [
            {"photometry": name, "x": m, "y": m, "mount_height": m,
             "orientation": deg, "lamps": n, "flux_per_lamp": lm}
          ],
          "utilization": null | 0..1     # forces the coefficient when set
        }
      ],
      "circuits": [
        {
          "name": str, "phase": "single" | "three", "cos_phi": 0..1,
          "length_m": m,
          "loads": [
            {"kind": "explicit", "watts": W} |
            {"kind": "socket", "count": n} |
            {"kind": "lighting", "points": n, "lamps_per_point": n,
             "flux_per_lamp": lm}
          ]
        }
      ]
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Mapping

from . import circuits as circuits_mod
from .circuits import CircuitSpec, ExplicitLoad, LightingLoad, Load, SocketLoad
from .errors import (
    DuplicateRoomName,
    GeometryContradiction,
    SchemaViolation,
    UnknownPhotometryRef,
)
from .lumen_method import (
    DEFAULT_FLUX_PER_LAMP,
    DEFAULT_MAINTENANCE,
    Reflectances,
    RoomGeometry,
    mounting_height,
)
from .photometry import Luminaire, PhotometricDistribution, parse_photometry
from .point_grid import LuminairePlacement, compute_grid, grid_statistics


class RoomCategory(Enum):
    LIVING_SPACE = "living_space"
    HALLWAY = "hallway"
    MAIN_SPACE = "main_space"
    ANNEX_OFFICE = "annex_office"


_REQUIRED_LUX = {
    RoomCategory.LIVING_SPACE: 50.0,
    RoomCategory.HALLWAY: 75.0,
    RoomCategory.MAIN_SPACE: 20.0,
    RoomCategory.ANNEX_OFFICE: 100.0,
}


def required_illuminance(category: RoomCategory) -> float:
    """Normative average illuminance (lx) for a room category."""
    return _REQUIRED_LUX[category]


@dataclass(frozen=True)
class DeviceCounts:
    lamps: int = 0
    monopolar_switches: int = 0
    bipolar_switches: int = 0
    staircase_switches: int = 0
    monophasic_sockets: int = 0

    def __post_init__(self) -> None:
        for name, value in self.__dict__.items():
            if value < 0:
                raise ValueError(f"{name} must be >= 0")

    def __add__(self, other: "DeviceCounts") -> "DeviceCounts":
        return DeviceCounts(
            self.lamps + other.lamps,
            self.monopolar_switches + other.monopolar_switches,
            self.bipolar_switches + other.bipolar_switches,
            self.staircase_switches + other.staircase_switches,
            self.monophasic_sockets + other.monophasic_sockets,
        )


@dataclass(frozen=True)
class PlacementSpec:
    """Serialized placement: references a photometry entry by name."""

    photometry: str
    x: float
    y: float
    mount_height: float
    orientation: float = 0.0
    lamps: int = 1
    flux_per_lamp: float = DEFAULT_FLUX_PER_LAMP

    def resolve(
        self, distributions: Mapping[str, PhotometricDistribution]
    ) -> LuminairePlacement:
        if self.photometry not in distributions:
            raise UnknownPhotometryRef(
                "placements", f"unknown photometry entry {self.photometry!r}"
            )
        return LuminairePlacement(
            luminaire=Luminaire(
                distribution=distributions[self.photometry],
                lamps=self.lamps,
                flux_per_lamp=self.flux_per_lamp,
            ),
            x=self.x,
            y=self.y,
            mount_height=self.mount_height,
            orientation=self.orientation,
        )


@dataclass(frozen=True)
class RoomSpec:
    name: str
    category: RoomCategory
    geometry: RoomGeometry | None = None
    reflectances: Reflectances = Reflectances()
    devices: DeviceCounts = DeviceCounts()
    placements: tuple[PlacementSpec, ...] = ()
    utilization: float | None = None
    label: str | None = None


@dataclass(frozen=True)
class Project:
    name: str
    k_dep: float = DEFAULT_MAINTENANCE
    default_flux_per_lamp: float = DEFAULT_FLUX_PER_LAMP
    photometry: Mapping[str, str] = field(default_factory=dict)
    rooms: tuple[RoomSpec, ...] = ()
    circuits: tuple[CircuitSpec, ...] = ()

    def room(self, name: str) -> RoomSpec | None:
        for room in self.rooms:
            if room.name == name:
                return room
        return None


# --- schema walking -----------------------------------------------------------


def _expect_object(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise SchemaViolation(path, f"expected object, got {type(value).__name__}")
    return value


def _expect_list(value: Any, path: str) -> list:
    if not isinstance(value, list):
        raise SchemaViolation(path, f"expected array, got {type(value).__name__}")
    return value


def _expect_str(value: Any, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaViolation(path, f"expected string, got {type(value).__name__}")
    return value


def _expect_number(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaViolation(path, f"expected number, got {type(value).__name__}")
    return float(value)


def _expect_int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaViolation(path, f"expected integer, got {type(value).__name__}")
    return value


class _Fields:
    """Tracks consumed keys so unknown fields are rejected with a path."""

    def __init__(self, data: dict, path: str):
        self.data = data
        self.path = path
        self.seen: set[str] = set()

    def get(self, key: str, default: Any = None) -> Any:
        self.seen.add(key)
        return self.data.get(key, default)

    def require(self, key: str) -> Any:
        self.seen.add(key)
        if key not in self.data:
            raise SchemaViolation(self._sub(key), "required field missing")
        return self.data[key]

    def _sub(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def finish(self) -> None:
        unknown = sorted(set(self.data) - self.seen)
        if unknown:
            raise SchemaViolation(self._sub(unknown[0]), "unknown field")


def _parse_geometry(data: Any, path: str) -> RoomGeometry | None:
    if data is None:
        return None
    fields = _Fields(_expect_object(data, path), path)
    geometry_kwargs = dict(
        length=_expect_number(fields.require("length"), f"{path}.length"),
        width=_expect_number(fields.require("width"), f"{path}.width"),
        height=_expect_number(fields.require("height"), f"{path}.height"),
    )
    if fields.get("useful_plane_height") is not None:
        geometry_kwargs["useful_plane_height"] = _expect_number(
            fields.data["useful_plane_height"], f"{path}.useful_plane_height"
        )
    if fields.get("suspension_drop") is not None:
        geometry_kwargs["suspension_drop"] = _expect_number(
            fields.data["suspension_drop"], f"{path}.suspension_drop"
        )
    fields.finish()
    try:
        return RoomGeometry(**geometry_kwargs)
    except ValueError as exc:
        raise SchemaViolation(path, str(exc)) from exc


def _parse_reflectances(data: Any, path: str) -> Reflectances:
    fields = _Fields(_expect_object(data, path), path)
    ceiling = _expect_number(fields.get("ceiling", 0.5), f"{path}.ceiling")
    walls = _expect_number(fields.get("walls", 0.5), f"{path}.walls")
    fields.finish()
    try:
        return Reflectances(ceiling=ceiling, walls=walls)
    except ValueError as exc:
        raise SchemaViolation(path, str(exc)) from exc


def _parse_devices(data: Any, path: str) -> DeviceCounts:
    fields = _Fields(_expect_object(data, path), path)
    kwargs = {}
    for key in (
        "lamps",
        "monopolar_switches",
        "bipolar_switches",
        "staircase_switches",
        "monophasic_sockets",
    ):
        value = fields.get(key, 0)
        kwargs[key] = _expect_int(value, f"{path}.{key}")
    fields.finish()
    try:
        return DeviceCounts(**kwargs)
    except ValueError as exc:
        raise SchemaViolation(path, str(exc)) from exc


def _parse_placement(
    data: Any, path: str, default_flux: float, photometry: Mapping[str, str]
) -> PlacementSpec:
    fields = _Fields(_expect_object(data, path), path)
    name = _expect_str(fields.require("photometry"), f"{path}.photometry")
    if name not in photometry:
        raise UnknownPhotometryRef(
            f"{path}.photometry", f"unknown photometry entry {name!r}"
        )
    spec_kwargs = dict(
        photometry=name,
        x=_expect_number(fields.require("x"), f"{path}.x"),
        y=_expect_number(fields.require("y"), f"{path}.y"),
        mount_height=_expect_number(fields.require("mount_height"), f"{path}.mount_height"),
        orientation=_expect_number(fields.get("orientation", 0.0), f"{path}.orientation"),
        lamps=_expect_int(fields.get("lamps", 1), f"{path}.lamps"),
        flux_per_lamp=_expect_number(
            fields.get("flux_per_lamp", default_flux), f"{path}.flux_per_lamp"
        ),
    )
    fields.finish()
    if spec_kwargs["mount_height"] <= 0.0:
        raise SchemaViolation(f"{path}.mount_height", "must be positive")
    if spec_kwargs["lamps"] < 1:
        raise SchemaViolation(f"{path}.lamps", "must be >= 1")
    if spec_kwargs["flux_per_lamp"] <= 0.0:
        raise SchemaViolation(f"{path}.flux_per_lamp", "must be positive")
    return PlacementSpec(**spec_kwargs)


def _parse_room(
    data: Any, path: str, default_flux: float, photometry: Mapping[str, str]
) -> RoomSpec:
    fields = _Fields(_expect_object(data, path), path)
    name = _expect_str(fields.require("name"), f"{path}.name")
    category_raw = _expect_str(fields.require("category"), f"{path}.category")
    try:
        category = RoomCategory(category_raw)
    except ValueError:
        raise SchemaViolation(
            f"{path}.category",
            f"unknown category {category_raw!r}; expected one of "
            + ", ".join(c.value for c in RoomCategory),
        ) from None
    geometry = _parse_geometry(fields.get("geometry"), f"{path}.geometry")
    reflectances_raw = fields.get("reflectances")
    reflectances = (
        _parse_reflectances(reflectances_raw, f"{path}.reflectances")
        if reflectances_raw is not None
        else Reflectances()
    )
    devices_raw = fields.get("devices")
    devices = (
        _parse_devices(devices_raw, f"{path}.devices")
        if devices_raw is not None
        else DeviceCounts()
    )
    placements = tuple(
        _parse_placement(p, f"{path}.placements[{i}]", default_flux, photometry)
        for i, p in enumerate(_expect_list(fields.get("placements", []), f"{path}.placements"))
    )
    utilization_raw = fields.get("utilization")
    utilization = None
    if utilization_raw is not None:
        utilization = _expect_number(utilization_raw, f"{path}.utilization")
        if not 0.0 < utilization <= 1.0:
            raise SchemaViolation(f"{path}.utilization", "must lie in (0, 1]")
    label_raw = fields.get("label")
    label = _expect_str(label_raw, f"{path}.label") if label_raw is not None else None
    fields.finish()
    return RoomSpec(
        name=name,
        category=category,
        geometry=geometry,
        reflectances=reflectances,
        devices=devices,
        placements=placements,
        utilization=utilization,
        label=label,
    )


def _parse_load(data: Any, path: str, default_flux: float) -> Load:
    fields = _Fields(_expect_object(data, path), path)
    kind = _expect_str(fields.require("kind"), f"{path}.kind")
    try:
        if kind == "explicit":
            load: Load = ExplicitLoad(
                watts=_expect_number(fields.require("watts"), f"{path}.watts")
            )
        elif kind == "socket":
            load = SocketLoad(count=_expect_int(fields.get("count", 1), f"{path}.count"))
        elif kind == "lighting":
            load = LightingLoad(
                points=_expect_int(fields.get("points", 1), f"{path}.points"),
                lamps_per_point=_expect_int(
                    fields.get("lamps_per_point", 1), f"{path}.lamps_per_point"
                ),
                flux_per_lamp=_expect_number(
                    fields.get("flux_per_lamp", default_flux), f"{path}.flux_per_lamp"
                ),
            )
        else:
            raise SchemaViolation(
                f"{path}.kind", f"unknown load kind {kind!r}"
            )
    except ValueError as exc:
        if isinstance(exc, SchemaViolation):
            raise
        raise SchemaViolation(path, str(exc)) from exc
    fields.finish()
    return load


def _parse_circuit(data: Any, path: str, default_flux: float) -> CircuitSpec:
    fields = _Fields(_expect_object(data, path), path)
    kwargs = dict(
        name=_expect_str(fields.require("name"), f"{path}.name"),
        phase=_expect_str(fields.get("phase", circuits_mod.PHASE_SINGLE), f"{path}.phase"),
        cos_phi=_expect_number(fields.get("cos_phi", 1.0), f"{path}.cos_phi"),
        length=_expect_number(fields.require("length_m"), f"{path}.length_m"),
        loads=tuple(
            _parse_load(entry, f"{path}.loads[{i}]", default_flux)
            for i, entry in enumerate(_expect_list(fields.require("loads"), f"{path}.loads"))
        ),
    )
    fields.finish()
    try:
        return CircuitSpec(**kwargs)
    except ValueError as exc:
        raise SchemaViolation(path, str(exc)) from exc


def load_project(text: str) -> Project:
    """Parse and validate a project document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("", f"invalid JSON: {exc}") from exc
    fields = _Fields(_expect_object(data, ""), "")
    name = _expect_str(fields.require("name"), "name")
    k_dep = _expect_number(fields.get("k_dep", DEFAULT_MAINTENANCE), "k_dep")
    if k_dep < 1.0:
        raise SchemaViolation("k_dep", "must be >= 1")
    default_flux = _expect_number(
        fields.get("default_phi_l", DEFAULT_FLUX_PER_LAMP), "default_phi_l"
    )
    if default_flux <= 0.0:
        raise SchemaViolation("default_phi_l", "must be positive")
    photometry_raw = _expect_object(fields.get("photometry", {}), "photometry")
    photometry: dict[str, str] = {}
    for key, value in photometry_raw.items():
        photometry[key] = _expect_str(value, f"photometry.{key}")
    rooms = tuple(
        _parse_room(entry, f"rooms[{i}]", default_flux, photometry)
        for i, entry in enumerate(_expect_list(fields.get("rooms", []), "rooms"))
    )
    seen: set[str] = set()
    for i, room in enumerate(rooms):
        if room.name in seen:
            raise DuplicateRoomName(f"rooms[{i}].name", f"duplicate room {room.name!r}")
        seen.add(room.name)
    circuits = tuple(
        _parse_circuit(entry, f"circuits[{i}]", default_flux)
        for i, entry in enumerate(_expect_list(fields.get("circuits", []), "circuits"))
    )
    fields.finish()
    return Project(
        name=name,
        k_dep=k_dep,
        default_flux_per_lamp=default_flux,
        photometry=photometry,
        rooms=rooms,
        circuits=circuits,
    )


def _geometry_doc(geometry: RoomGeometry | None) -> dict | None:
    if geometry is None:
        return None
    return {
        "length": geometry.length,
        "width": geometry.width,
        "height": geometry.height,
        "useful_plane_height": geometry.useful_plane_height,
        "suspension_drop": geometry.suspension_drop,
    }


def _load_doc(load: Load) -> dict:
    if isinstance(load, ExplicitLoad):
        return {"kind": "explicit", "watts": load.watts}
    if isinstance(load, SocketLoad):
        return {"kind": "socket", "count": load.count}
    return {
        "kind": "lighting",
        "points": load.points,
        "lamps_per_point": load.lamps_per_point,
        "flux_per_lamp": load.flux_per_lamp,
    }


def project_document(project: Project) -> dict:
    """Canonical plain-dict form of a project (JSON-ready)."""
    return {
        "name": project.name,
        "k_dep": project.k_dep,
        "default_phi_l": project.default_flux_per_lamp,
        "photometry": dict(project.photometry),
        "rooms": [
            {
                "name": room.name,
                "label": room.label,
                "category": room.category.value,
                "geometry": _geometry_doc(room.geometry),
                "reflectances": {
                    "ceiling": room.reflectances.ceiling,
                    "walls": room.reflectances.walls,
                },
                "devices": {
                    "lamps": room.devices.lamps,
                    "monopolar_switches": room.devices.monopolar_switches,
                    "bipolar_switches": room.devices.bipolar_switches,
                    "staircase_switches": room.devices.staircase_switches,
                    "monophasic_sockets": room.devices.monophasic_sockets,
                },
                "placements": [
                    {
                        "photometry": p.photometry,
                        "x": p.x,
                        "y": p.y,
                        "mount_height": p.mount_height,
                        "orientation": p.orientation,
                        "lamps": p.lamps,
                        "flux_per_lamp": p.flux_per_lamp,
                    }
                    for p in room.placements
                ],
                "utilization": room.utilization,
            }
            for room in project.rooms
        ],
        "circuits": [
            {
                "name": c.name,
                "phase": c.phase,
                "cos_phi": c.cos_phi,
                "length_m": c.length,
                "loads": [_load_doc(load) for load in c.loads],
            }
            for c in project.circuits
        ],
    }


def save_project(project: Project) -> str:
    """Serialize to the canonical document form (stable key order, LF)."""
    return json.dumps(project_document(project), indent=2) + "\n"


def device_totals(project: Project) -> DeviceCounts:
    """Component-wise device sums over all rooms."""
    total = DeviceCounts()
    for room in project.rooms:
        total = total + room.devices
    return total


@dataclass(frozen=True)
class ValidationIssue:
    severity: str  # "error" | "warning"
    room: str | None
    code: str
    message: str


def validate_project(
    project: Project,
    distributions: Mapping[str, PhotometricDistribution] | None = None,
    for_dimensioning: bool = False,
) -> list[ValidationIssue]:
    """Check per-room consistency; issues are data, not exceptions.

    Missing geometry is only reported when ``for_dimensioning`` is set,
    since inventory-only rooms are legitimate. With ``distributions``
    given, rooms whose placements underperform the category requirement
    get a warning.
    """
    issues: list[ValidationIssue] = []
    for room in project.rooms:
        required = required_illuminance(room.category)
        if room.geometry is None:
            if for_dimensioning:
                issues.append(
                    ValidationIssue(
                        "error", room.name, "missing-geometry",
                        "dimensioning requested but the room has no geometry",
                    )
                )
            if room.placements:
                issues.append(
                    ValidationIssue(
                        "error", room.name, "placements-without-geometry",
                        "placements present but the room has no geometry",
                    )
                )
        else:
            try:
                mounting_height(room.geometry)
            except GeometryContradiction as exc:
                issues.append(
                    ValidationIssue("error", room.name, "geometry-contradiction", str(exc))
                )
            else:
                issues.extend(_placement_issues(project, room, distributions, required))
        if room.devices.lamps == 0 and required > 0.0:
            issues.append(
                ValidationIssue(
                    "warning", room.name, "no-lamps",
                    f"no lamps inventoried but {required:g} lx is required",
                )
            )
    for name in sorted(
        {p.photometry for room in project.rooms for p in room.placements}
        - set(project.photometry)
    ):
        issues.append(
            ValidationIssue(
                "error", None, "unknown-photometry",
                f"placements reference undeclared photometry {name!r}",
            )
        )
    return issues


def _placement_issues(
    project: Project,
    room: RoomSpec,
    distributions: Mapping[str, PhotometricDistribution] | None,
    required: float,
) -> list[ValidationIssue]:
    issues: list[ValidationIssue] = []
    geometry = room.geometry
    assert geometry is not None
    for i, placement in enumerate(room.placements):
        if not (0.0 <= placement.x <= geometry.length and 0.0 <= placement.y <= geometry.width):
            issues.append(
                ValidationIssue(
                    "error", room.name, "placement-out-of-bounds",
                    f"placement {i} at ({placement.x}, {placement.y}) lies outside "
                    f"the {geometry.length} x {geometry.width} plan",
                )
            )
    if (
        distributions is not None
        and room.placements
        and all(p.photometry in distributions for p in room.placements)
    ):
        resolved = [p.resolve(distributions) for p in room.placements]
        stats = grid_statistics(
            compute_grid(geometry, resolved, maintenance=project.k_dep)
        )
        if stats.average < required:
            issues.append(
                ValidationIssue(
                    "warning", room.name, "under-lit",
                    f"placed fittings average {stats.average:.1f} lx, "
                    f"below the required {required:g} lx",
                )
            )
    return issues


# --- filesystem context ---------------------------------------------------


@dataclass(frozen=True)
class ProjectContext:
    """A project plus its resolved photometric distributions."""

    project: Project
    distributions: Mapping[str, PhotometricDistribution]
    base_dir: Path

    @classmethod
    def open(cls, path: str | Path) -> "ProjectContext":
        path = Path(path)
        project = load_project(path.read_text(encoding="utf-8"))
        return cls.attach(project, path.parent)

    @classmethod
    def attach(cls, project: Project, base_dir: str | Path) -> "ProjectContext":
        base_dir = Path(base_dir)
        distributions = {
            name: parse_photometry((base_dir / rel).read_text(encoding="utf-8"))
            for name, rel in project.photometry.items()
        }
        return cls(project=project, distributions=distributions, base_dir=base_dir)

    def with_project(self, project: Project) -> "ProjectContext":
        return ProjectContext.attach(project, self.base_dir)

    def placements_for(self, room: RoomSpec) -> list[LuminairePlacement]:
        return [p.resolve(self.distributions) for p in room.placements]

    def luminaire_for(self, room: RoomSpec) -> Luminaire:
        """Fitting used for dimensioning: first placement's, else defaults."""
        if room.placements:
            first = room.placements[0]
            return Luminaire(
                distribution=self.distributions.get(first.photometry),
                lamps=first.lamps,
                flux_per_lamp=first.flux_per_lamp,
            )
        return Luminaire(
            distribution=None,
            lamps=1,
            flux_per_lamp=self.project.default_flux_per_lamp,
        )
