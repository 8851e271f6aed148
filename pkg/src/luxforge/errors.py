"""Engine exception hierarchy.

Every domain failure raised by luxforge derives from EngineError so the
CLI and the HTTP service can map them to exit code 2 / 4xx responses in
one place. Parse-type errors also derive from ValueError for callers
that treat bad input generically.
"""


class EngineError(Exception):
    """Base class for all luxforge domain errors."""


# --- photometric file parsing -------------------------------------------------

class PhotometryError(EngineError, ValueError):
    """Malformed photometric file or invalid distribution data."""


class MissingTilt(PhotometryError):
    """No ``TILT=NONE`` line found (absent, or a different TILT value)."""


class BadCount(PhotometryError):
    """Declared angle/candela counts disagree with the values present."""


class NonAscendingAngles(PhotometryError):
    """An angle list is not strictly ascending."""


class NegativeCandela(PhotometryError):
    """A candela value is negative."""


class UnsupportedPhotometricType(PhotometryError):
    """Photometric type other than type C (code 1)."""


class BadResolution(EngineError, ValueError):
    """Sphere-integration resolution outside (0, 10] degrees."""


# --- lumen method -------------------------------------------------------------

class NonPositiveDimension(EngineError, ValueError):
    """A room dimension that must be positive is zero or negative."""


class GeometryContradiction(EngineError, ValueError):
    """Useful-plane height plus suspension drop reaches the ceiling."""


class NonPositiveIndex(EngineError, ValueError):
    """Room index must be positive for a utilization lookup."""


class FluxDomain(EngineError, ValueError):
    """Useful flux exceeds total flux, or total flux is not positive."""


class DegenerateLuminaire(EngineError, ValueError):
    """Luminaire with no light output (lamps x flux per lamp <= 0)."""


class NonPositiveArea(EngineError, ValueError):
    """Useful area must be positive to evaluate illuminance."""


# --- point grid ---------------------------------------------------------------

class BadSpacing(EngineError, ValueError):
    """Grid spacing outside (0, min(length, width)]."""


class EmptyGrid(EngineError, ValueError):
    """Statistics requested for a grid with no values."""


# --- project model ------------------------------------------------------------

class SchemaViolation(EngineError, ValueError):
    """Project document does not conform to the schema.

    ``path`` is a dotted/indexed locator such as ``rooms[3].geometry.width``.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


class DuplicateRoomName(SchemaViolation):
    """Two rooms share one name."""


class UnknownPhotometryRef(SchemaViolation):
    """A placement references a photometry entry the project does not declare."""


# --- circuit sizing -----------------------------------------------------------

class EmptyCircuit(EngineError, ValueError):
    """Circuit with no attached loads."""


class OverAmpacity(EngineError, ValueError):
    """Current exceeds the largest conductor in the catalogue."""
