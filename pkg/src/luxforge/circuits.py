"""Branch-circuit load aggregation, conductor selection, voltage drop.

Loads are either explicit wattages or device-derived: sockets carry a
rated wattage with a diversity factor beyond the first socket on the
circuit, lighting points derive watts from lamp flux via a nominal
luminous efficacy. All electrical constants live in a committed data
file, not in code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import EmptyCircuit, OverAmpacity

VOLTAGE_SINGLE = 230.0
VOLTAGE_THREE = 400.0

PHASE_SINGLE = "single"
PHASE_THREE = "three"


@dataclass(frozen=True)
class ExplicitLoad:
    """Fixed appliance rating in watts."""

    watts: float

    def __post_init__(self) -> None:
        if self.watts < 0.0:
            raise ValueError("load watts must be >= 0")


@dataclass(frozen=True)
class SocketLoad:
    """Monophasic socket outlets; rating and diversity come from defaults."""

    count: int = 1

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError("socket count must be >= 1")


@dataclass(frozen=True)
class LightingLoad:
    """Lighting points whose wattage derives from lamp flux / efficacy."""

    points: int = 1
    lamps_per_point: int = 1
    flux_per_lamp: float = 550.0

    def __post_init__(self) -> None:
        if self.points < 1 or self.lamps_per_point < 1:
            raise ValueError("lighting points and lamps must be >= 1")
        if self.flux_per_lamp <= 0.0:
            raise ValueError("flux per lamp must be positive")


Load = ExplicitLoad | SocketLoad | LightingLoad


@dataclass(frozen=True)
class CircuitSpec:
    """One branch circuit: phase, power factor, one-way length, loads."""

    name: str
    phase: str = PHASE_SINGLE
    cos_phi: float = 1.0
    length: float = 10.0
    loads: tuple[Load, ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.phase not in (PHASE_SINGLE, PHASE_THREE):
            raise ValueError(f"phase must be 'single' or 'three', got {self.phase!r}")
        if not 0.0 < self.cos_phi <= 1.0:
            raise ValueError("cos phi must lie in (0, 1]")
        if self.length <= 0.0:
            raise ValueError("circuit length must be positive")
        if not self.loads:
            raise EmptyCircuit(f"circuit {self.name!r} has no loads")

    @property
    def lighting_only(self) -> bool:
        return all(isinstance(load, LightingLoad) for load in self.loads)


@dataclass(frozen=True)
class ConductorChoice:
    designation: str
    cross_section: float
    ampacity: float
    material: str = "copper"


@dataclass(frozen=True)
class ElectricalDefaults:
    """Catalogue plus scalar constants parsed from the defaults file."""

    conductors: tuple[ConductorChoice, ...]
    socket_watts: float
    socket_diversity: float
    lighting_efficacy: float
    copper_resistivity: float
    drop_limit_lighting: float
    drop_limit_power: float


def parse_defaults(text: str) -> ElectricalDefaults:
    conductors: list[ConductorChoice] = []
    scalars: dict[str, float] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "conductor":
            conductors.append(
                ConductorChoice(parts[1], float(parts[2]), float(parts[3]))
            )
        else:
            scalars[parts[0]] = float(parts[1])
    conductors.sort(key=lambda c: c.cross_section)
    return ElectricalDefaults(
        conductors=tuple(conductors),
        socket_watts=scalars["socket_watts"],
        socket_diversity=scalars["socket_diversity"],
        lighting_efficacy=scalars["lighting_efficacy_lm_per_w"],
        copper_resistivity=scalars["copper_resistivity_ohm_mm2_m"],
        drop_limit_lighting=scalars["drop_limit_lighting_pct"],
        drop_limit_power=scalars["drop_limit_power_pct"],
    )


def load_defaults(path: str | Path | None = None) -> ElectricalDefaults:
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
    else:
        text = (resources.files("luxforge") / "data" / "conductors.txt").read_text(
            encoding="utf-8"
        )
    return parse_defaults(text)


_defaults: ElectricalDefaults | None = None


def default_electrical() -> ElectricalDefaults:
    global _defaults
    if _defaults is None:
        _defaults = load_defaults()
    return _defaults


def circuit_load(circuit: CircuitSpec, defaults: ElectricalDefaults | None = None) -> float:
    """Total connected load in watts, diversity applied across all sockets."""
    defaults = defaults or default_electrical()
    if not circuit.loads:
        raise EmptyCircuit(f"circuit {circuit.name!r} has no loads")
    total = 0.0
    sockets = 0
    for load in circuit.loads:
        if isinstance(load, ExplicitLoad):
            total += load.watts
        elif isinstance(load, SocketLoad):
            sockets += load.count
        else:
            total += (
                load.points * load.lamps_per_point * load.flux_per_lamp
                / defaults.lighting_efficacy
            )
    if sockets:
        total += defaults.socket_watts * (
            1.0 + defaults.socket_diversity * (sockets - 1)
        )
    return total


def circuit_current(power: float, circuit: CircuitSpec) -> float:
    """Line current in amperes for the given power on this circuit."""
    if power < 0.0:
        raise ValueError("power must be >= 0")
    if circuit.phase == PHASE_THREE:
        return power / (math.sqrt(3.0) * VOLTAGE_THREE * circuit.cos_phi)
    return power / (VOLTAGE_SINGLE * circuit.cos_phi)


def select_conductor(
    current: float, defaults: ElectricalDefaults | None = None
) -> ConductorChoice:
    """Smallest catalogue conductor whose ampacity covers the current."""
    defaults = defaults or default_electrical()
    if current < 0.0:
        raise ValueError("current must be >= 0")
    for choice in defaults.conductors:
        if choice.ampacity >= current:
            return choice
    raise OverAmpacity(
        f"{current:.1f} A exceeds the largest catalogue conductor "
        f"({defaults.conductors[-1].designation})"
    )


def voltage_drop(
    current: float,
    circuit: CircuitSpec,
    choice: ConductorChoice,
    defaults: ElectricalDefaults | None = None,
) -> float:
    """Voltage drop along the run as a percentage of nominal voltage."""
    defaults = defaults or default_electrical()
    rho = defaults.copper_resistivity
    if circuit.phase == PHASE_THREE:
        drop = math.sqrt(3.0) * rho * circuit.length * current / choice.cross_section
        nominal = VOLTAGE_THREE
    else:
        drop = 2.0 * rho * circuit.length * current / choice.cross_section
        nominal = VOLTAGE_SINGLE
    return 100.0 * drop / nominal


def drop_limit(circuit: CircuitSpec, defaults: ElectricalDefaults | None = None) -> float:
    """Allowed drop percentage: lighting-only circuits get the tighter limit."""
    defaults = defaults or default_electrical()
    return (
        defaults.drop_limit_lighting if circuit.lighting_only else defaults.drop_limit_power
    )


@dataclass(frozen=True)
class CircuitSizing:
    """Full sizing pipeline result for one circuit."""

    circuit: CircuitSpec
    load_watts: float
    current: float
    conductor: ConductorChoice
    drop_percent: float
    drop_limit: float

    @property
    def within_limit(self) -> bool:
        return self.drop_percent <= self.drop_limit


def size_circuit(
    circuit: CircuitSpec, defaults: ElectricalDefaults | None = None
) -> CircuitSizing:
    defaults = defaults or default_electrical()
    power = circuit_load(circuit, defaults)
    current = circuit_current(power, circuit)
    choice = select_conductor(current, defaults)
    drop = voltage_drop(current, circuit, choice, defaults)
    return CircuitSizing(
        circuit=circuit,
        load_watts=power,
        current=current,
        conductor=choice,
        drop_percent=drop,
        drop_limit=drop_limit(circuit, defaults),
    )
