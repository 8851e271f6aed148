"""Photometric intensity distributions: parse, serialize, interpolate, integrate.

File format (UTF-8, whitespace/newline delimited):

1. Zero or more keyword lines, each starting with ``[`` (kept verbatim as
   opaque metadata), followed by a line that is exactly ``TILT=NONE``.
   Any other TILT value is rejected.
2. Ten numeric fields: lamp count, rated lumens per lamp, candela
   multiplier, number of vertical angles, number of horizontal angles,
   photometric type (must be 1 = type C), units type (1 = feet,
   2 = meters), luminous width, length, height.
3. Three numeric fields: ballast factor, a reserved field, input watts.
4. The vertical angles (ascending), the horizontal angles (ascending),
   then one block of candela values per horizontal angle, each block
   holding one value per vertical angle.

Dimensions given in feet are converted to meters at parse time. The
candela multiplier is stored, never baked into the matrix, so
serialization is lossless.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, replace
from typing import Iterable, Iterator

from .errors import (
    BadCount,
    BadResolution,
    DegenerateLuminaire,
    MissingTilt,
    NegativeCandela,
    NonAscendingAngles,
    PhotometryError,
    UnsupportedPhotometricType,
)

FEET_TO_METERS = 0.3048

_TYPE_C = 1
_UNITS_FEET = 1
_UNITS_METERS = 2


def _strictly_ascending(values: Iterable[float]) -> bool:
    seq = list(values)
    return all(a < b for a, b in zip(seq, seq[1:]))


@dataclass(frozen=True)
class PhotometricDistribution:
    """Tabulated luminous intensity over vertical/horizontal angles.

    ``candela`` is indexed ``[horizontal][vertical]`` and stores raw file
    values; queries through :func:`intensity_at` apply ``multiplier``.
    A single horizontal angle means the distribution is axially symmetric.
    Tables spanning the full 0-360 horizontal range describe the same
    physical plane at both ends, so the last candela block is expected to
    repeat the first. Immutable after construction and safe to share
    across tasks.
    """

    vertical_angles: tuple[float, ...]
    horizontal_angles: tuple[float, ...]
    candela: tuple[tuple[float, ...], ...]
    multiplier: float = 1.0
    rated_lumens_per_lamp: float = 0.0
    lamp_count: int = 1
    input_watts: float = 0.0
    ballast_factor: float = 1.0
    luminous_width: float = 0.0
    luminous_length: float = 0.0
    luminous_height: float = 0.0
    keywords: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.vertical_angles:
            raise BadCount("no vertical angles")
        if not self.horizontal_angles:
            raise BadCount("no horizontal angles")
        if not _strictly_ascending(self.vertical_angles):
            raise NonAscendingAngles("vertical angles must be strictly ascending")
        if not _strictly_ascending(self.horizontal_angles):
            raise NonAscendingAngles("horizontal angles must be strictly ascending")
        if self.vertical_angles[0] < 0.0 or self.vertical_angles[-1] > 180.0:
            raise PhotometryError("vertical angles must lie in [0, 180]")
        if self.horizontal_angles[0] < 0.0 or self.horizontal_angles[-1] > 360.0:
            raise PhotometryError("horizontal angles must lie in [0, 360]")
        if len(self.candela) != len(self.horizontal_angles):
            raise BadCount(
                f"candela has {len(self.candela)} horizontal blocks, "
                f"expected {len(self.horizontal_angles)}"
            )
        for block in self.candela:
            if len(block) != len(self.vertical_angles):
                raise BadCount(
                    f"candela block has {len(block)} values, "
                    f"expected {len(self.vertical_angles)}"
                )
            for value in block:
                if value < 0.0:
                    raise NegativeCandela(f"negative candela value {value}")
        if not self.multiplier > 0.0:
            raise PhotometryError("multiplier must be positive")
        if self.lamp_count < 1:
            raise PhotometryError("lamp count must be at least 1")
        if self.rated_lumens_per_lamp < 0.0:
            raise PhotometryError("rated lumens per lamp must be >= 0")
        if self.input_watts < 0.0:
            raise PhotometryError("input watts must be >= 0")
        for dim in (self.luminous_width, self.luminous_length, self.luminous_height):
            if dim < 0.0:
                raise PhotometryError("luminous dimensions must be >= 0")

    @property
    def axially_symmetric(self) -> bool:
        return len(self.horizontal_angles) == 1

    def scaled(self, factor: float) -> "PhotometricDistribution":
        """Copy with the candela multiplier scaled by ``factor`` > 0."""
        return replace(self, multiplier=self.multiplier * factor)


@dataclass(frozen=True)
class Luminaire:
    """A fitting: a photometric distribution plus its lamp complement."""

    distribution: PhotometricDistribution | None
    lamps: int = 1
    flux_per_lamp: float = 550.0

    def __post_init__(self) -> None:
        if self.lamps < 1:
            raise DegenerateLuminaire("luminaire needs at least one lamp")
        if not self.flux_per_lamp > 0.0:
            raise DegenerateLuminaire("flux per lamp must be positive")

    @property
    def flux(self) -> float:
        """Total lamp flux of the fitting, lumens."""
        return self.lamps * self.flux_per_lamp


def _tokens_with_lines(lines: list[str], start: int) -> Iterator[str]:
    for line in lines[start:]:
        yield from line.split()


def _to_number(token: str, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise PhotometryError(f"{what}: {token!r} is not a number") from None


def _to_int(value: float, what: str) -> int:
    if value != int(value):
        raise PhotometryError(f"{what} must be an integer, got {value}")
    return int(value)


def parse_photometry(text: str) -> PhotometricDistribution:
    """Parse a photometric document into a distribution.

    Raises MissingTilt, BadCount, NonAscendingAngles, NegativeCandela,
    UnsupportedPhotometricType, or PhotometryError for malformed numerics.
    """
    lines = text.splitlines()
    keywords: list[str] = []
    body_start = None
    for i, line in enumerate(lines):
        if not line.strip():
            continue
        if line.startswith("["):
            keywords.append(line)  # opaque metadata, kept verbatim
            continue
        if line == "TILT=NONE":
            body_start = i + 1
            break
        if line.strip().startswith("TILT="):
            raise MissingTilt(f"unsupported tilt specification {line.strip()!r}")
        raise MissingTilt("expected keyword lines or TILT=NONE before data")
    if body_start is None:
        raise MissingTilt("no TILT=NONE line")

    tokens = list(_tokens_with_lines(lines, body_start))
    if len(tokens) < 13:
        raise BadCount("header truncated: need 13 numeric fields after TILT=NONE")

    header = [_to_number(t, f"header field {k + 1}") for k, t in enumerate(tokens[:13])]
    lamp_count = _to_int(header[0], "lamp count")
    rated_lumens = header[1]
    multiplier = header[2]
    n_vertical = _to_int(header[3], "vertical angle count")
    n_horizontal = _to_int(header[4], "horizontal angle count")
    photometric_type = _to_int(header[5], "photometric type")
    units_type = _to_int(header[6], "units type")
    width, length, height = header[7], header[8], header[9]
    ballast_factor = header[10]
    input_watts = header[12]

    if photometric_type != _TYPE_C:
        raise UnsupportedPhotometricType(
            f"photometric type {photometric_type} not supported (need 1 = type C)"
        )
    if units_type == _UNITS_FEET:
        width *= FEET_TO_METERS
        length *= FEET_TO_METERS
        height *= FEET_TO_METERS
    elif units_type != _UNITS_METERS:
        raise PhotometryError(f"unknown units type {units_type}")
    if n_vertical < 1 or n_horizontal < 1:
        raise BadCount("angle counts must be at least 1")

    expected = 13 + n_vertical + n_horizontal + n_horizontal * n_vertical
    if len(tokens) != expected:
        raise BadCount(
            f"expected {expected} numeric fields for the declared counts, "
            f"found {len(tokens)}"
        )

    values = [_to_number(t, "data value") for t in tokens[13:]]
    vertical = tuple(values[:n_vertical])
    horizontal = tuple(values[n_vertical:n_vertical + n_horizontal])
    flat = values[n_vertical + n_horizontal:]
    candela = tuple(
        tuple(flat[h * n_vertical:(h + 1) * n_vertical]) for h in range(n_horizontal)
    )

    return PhotometricDistribution(
        vertical_angles=vertical,
        horizontal_angles=horizontal,
        candela=candela,
        multiplier=multiplier,
        rated_lumens_per_lamp=rated_lumens,
        lamp_count=lamp_count,
        input_watts=input_watts,
        ballast_factor=ballast_factor,
        luminous_width=width,
        luminous_length=length,
        luminous_height=height,
        keywords=tuple(keywords),
    )


def _fmt(value: float) -> str:
    # repr of a float round-trips exactly; integers stay compact
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _wrap(values: Iterable[float], per_line: int = 10) -> list[str]:
    out: list[str] = []
    row: list[str] = []
    for v in values:
        row.append(_fmt(v))
        if len(row) == per_line:
            out.append(" ".join(row))
            row = []
    if row:
        out.append(" ".join(row))
    return out


def serialize_photometry(dist: PhotometricDistribution) -> str:
    """Emit a document that parses back to an equal distribution.

    Dimensions are always written in meters (units type 2); the reserved
    header field is written as 1.
    """
    lines = list(dist.keywords)
    lines.append("TILT=NONE")
    lines.append(
        " ".join(
            [
                str(dist.lamp_count),
                _fmt(dist.rated_lumens_per_lamp),
                _fmt(dist.multiplier),
                str(len(dist.vertical_angles)),
                str(len(dist.horizontal_angles)),
                str(_TYPE_C),
                str(_UNITS_METERS),
                _fmt(dist.luminous_width),
                _fmt(dist.luminous_length),
                _fmt(dist.luminous_height),
            ]
        )
    )
    lines.append(" ".join([_fmt(dist.ballast_factor), "1", _fmt(dist.input_watts)]))
    lines.extend(_wrap(dist.vertical_angles))
    lines.extend(_wrap(dist.horizontal_angles))
    for block in dist.candela:
        lines.extend(_wrap(block))
    return "\n".join(lines) + "\n"


def _interp_weight(grid: tuple[float, ...], x: float) -> tuple[int, int, float]:
    """Bracketing indices and blend weight for x clamped onto grid."""
    if x <= grid[0]:
        return 0, 0, 0.0
    if x >= grid[-1]:
        last = len(grid) - 1
        return last, last, 0.0
    hi = bisect_right(grid, x)
    lo = hi - 1
    t = (x - grid[lo]) / (grid[hi] - grid[lo])
    return lo, hi, t


def _reduce_horizontal(dist: PhotometricDistribution, phi: float) -> float:
    angles = dist.horizontal_angles
    first, last = angles[0], angles[-1]
    span = last - first
    if span >= 360.0 - 1e-9:
        # full table: wrap into its range
        return first + ((phi - first) % 360.0)
    # partial table: mirror into [first, last] by repeated reflection
    folded = math.fmod(phi - first, 2.0 * span)
    if folded < 0.0:
        folded += 2.0 * span
    if folded > span:
        folded = 2.0 * span - folded
    reduced = first + folded
    return min(max(reduced, first), last)


def intensity_at(dist: PhotometricDistribution, theta: float, phi: float) -> float:
    """Luminous intensity (cd) toward vertical angle theta, horizontal phi.

    Bilinear interpolation of the candela table times the multiplier.
    theta clamps to the tabulated vertical range; phi is ignored for
    axially symmetric tables, wrapped modulo 360 for full tables, and
    mirrored then clamped for partial ones.
    """
    v_lo, v_hi, tv = _interp_weight(dist.vertical_angles, theta)
    if dist.axially_symmetric:
        block = dist.candela[0]
        value = block[v_lo] + (block[v_hi] - block[v_lo]) * tv
        return dist.multiplier * value
    phi_r = _reduce_horizontal(dist, phi)
    h_lo, h_hi, th = _interp_weight(dist.horizontal_angles, phi_r)
    lo_block = dist.candela[h_lo]
    hi_block = dist.candela[h_hi]
    low = lo_block[v_lo] + (lo_block[v_hi] - lo_block[v_lo]) * tv
    high = hi_block[v_lo] + (hi_block[v_hi] - hi_block[v_lo]) * tv
    return dist.multiplier * (low + (high - low) * th)


def _cells(extent: float, step: float) -> list[tuple[float, float]]:
    """(midpoint, width) cells tiling [0, extent]; the last may be short."""
    cells = []
    edge = 0.0
    while edge < extent - 1e-12:
        width = min(step, extent - edge)
        cells.append((edge + width / 2.0, width))
        edge += width
    return cells


def total_flux(dist: PhotometricDistribution, resolution: float = 1.0) -> float:
    """Total emitted flux (lm) by midpoint-rule integration over the sphere.

    Flux = sum of I(theta, phi) * sin(theta) dtheta dphi with cells of at
    most ``resolution`` degrees per side.
    """
    if not 0.0 < resolution <= 10.0:
        raise BadResolution(f"resolution must be in (0, 10], got {resolution}")
    theta_cells = _cells(180.0, resolution)
    if dist.axially_symmetric:
        # the integrand has no phi dependence; the phi integral is exactly 2*pi
        acc = 0.0
        for theta_mid, d_theta in theta_cells:
            intensity = intensity_at(dist, theta_mid, 0.0)
            acc += intensity * math.sin(math.radians(theta_mid)) * math.radians(d_theta)
        return acc * 2.0 * math.pi
    phi_cells = _cells(360.0, resolution)
    acc = 0.0
    for theta_mid, d_theta in theta_cells:
        sin_dtheta = math.sin(math.radians(theta_mid)) * math.radians(d_theta)
        ring = 0.0
        for phi_mid, d_phi in phi_cells:
            ring += intensity_at(dist, theta_mid, phi_mid) * math.radians(d_phi)
        acc += ring * sin_dtheta
    return acc


def isotropic(candela: float, lumens: float = 0.0) -> PhotometricDistribution:
    """Uniform distribution of ``candela`` in every direction (test helper)."""
    return PhotometricDistribution(
        vertical_angles=(0.0, 90.0, 180.0),
        horizontal_angles=(0.0,),
        candela=((candela, candela, candela),),
        rated_lumens_per_lamp=lumens,
    )
