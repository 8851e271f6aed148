"""HTTP facade over the engine for interactive clients.

The service owns one project snapshot guarded by optimistic concurrency:
every accepted PUT bumps an integer revision, and writers must present
the revision they based their edit on. Reads and calculations always see
a complete snapshot; calculation results are identical to the library
(and therefore the CLI) for the same snapshot.

Every response carries ``X-Engine-Version`` and ``X-CU-Fingerprint``
headers so results can be traced to an engine and utilization table.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from fastapi import FastAPI, Header, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__
from .errors import BadSpacing, EngineError, GeometryContradiction, SchemaViolation
from .lumen_method import default_cu_table
from .point_grid import DEFAULT_SPACING
from .project import ProjectContext, load_project, project_document
from .reports import dimension_room, grid_for_room

REVISION_HEADER = "X-Revision"
IF_REVISION_HEADER = "X-If-Revision"


class LumenRequest(BaseModel):
    room: str


class GridRequest(BaseModel):
    room: str
    spacing: float | None = None


class DimensioningResponse(BaseModel):
    room: str
    luminaire_count: int
    utilization: float
    useful_area: float
    mounting_height: float
    room_index: float
    total_flux: float
    useful_flux: float
    achieved_lux: float


class GridPayload(BaseModel):
    xs: list[float]
    ys: list[float]
    values: list[list[float]]
    spacing: float
    plane_height: float


class StatisticsPayload(BaseModel):
    minimum: float
    average: float
    maximum: float
    uniformity: float


class GridResponse(BaseModel):
    room: str
    grid: GridPayload
    statistics: StatisticsPayload


class RevisionResponse(BaseModel):
    revision: int


@dataclass(frozen=True)
class _Snapshot:
    ctx: ProjectContext
    revision: int


class SessionState:
    """Single-writer, many-reader snapshot holder."""

    def __init__(self, ctx: ProjectContext):
        self._snapshot = _Snapshot(ctx, 0)
        self._write_lock = threading.Lock()

    def read(self) -> _Snapshot:
        return self._snapshot

    def replace(self, ctx: ProjectContext, expected_revision: int) -> int:
        with self._write_lock:
            current = self._snapshot
            if current.revision != expected_revision:
                raise RevisionConflict(current.revision)
            self._snapshot = _Snapshot(ctx, current.revision + 1)
            return self._snapshot.revision


class RevisionConflict(Exception):
    def __init__(self, current: int):
        self.current = current
        super().__init__(f"revision conflict; current revision is {current}")


def create_app(ctx: ProjectContext) -> FastAPI:
    app = FastAPI(title="luxforge design service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=[REVISION_HEADER, "X-Engine-Version", "X-CU-Fingerprint"],
    )
    state = SessionState(ctx)
    cu_fingerprint = default_cu_table().fingerprint

    @app.middleware("http")
    async def stamp_headers(request: Request, call_next):
        response = await call_next(request)
        response.headers["X-Engine-Version"] = __version__
        response.headers["X-CU-Fingerprint"] = cu_fingerprint
        return response

    @app.get("/api/project")
    def get_project() -> Response:
        snapshot = state.read()
        return JSONResponse(
            project_document(snapshot.ctx.project),
            headers={REVISION_HEADER: str(snapshot.revision)},
        )

    @app.put("/api/project", response_model=RevisionResponse)
    async def put_project(
        request: Request,
        if_revision: int | None = Header(default=None, alias=IF_REVISION_HEADER),
    ) -> JSONResponse:
        if if_revision is None:
            raise HTTPException(
                status_code=400, detail=f"missing {IF_REVISION_HEADER} header"
            )
        body = await request.body()
        try:
            project = load_project(body.decode("utf-8"))
            new_ctx = state.read().ctx.with_project(project)
        except SchemaViolation as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except (EngineError, OSError, UnicodeDecodeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        try:
            revision = state.replace(new_ctx, if_revision)
        except RevisionConflict as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return JSONResponse(
            {"revision": revision}, headers={REVISION_HEADER: str(revision)}
        )

    @app.post("/api/calc/lumen", response_model=DimensioningResponse)
    def calc_lumen(req: LumenRequest) -> DimensioningResponse:
        snapshot = state.read()
        room = snapshot.ctx.project.room(req.room)
        if room is None:
            raise HTTPException(status_code=404, detail=f"unknown room {req.room!r}")
        if room.geometry is None:
            raise HTTPException(
                status_code=422, detail=f"room {req.room!r} has no geometry"
            )
        try:
            result = dimension_room(snapshot.ctx, room)
        except GeometryContradiction as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return DimensioningResponse(
            room=room.name,
            luminaire_count=result.luminaire_count,
            utilization=result.utilization,
            useful_area=result.useful_area,
            mounting_height=result.mounting_height,
            room_index=result.room_index,
            total_flux=result.total_flux,
            useful_flux=result.useful_flux,
            achieved_lux=result.achieved_lux,
        )

    @app.post("/api/calc/grid", response_model=GridResponse)
    def calc_grid(req: GridRequest) -> GridResponse:
        snapshot = state.read()
        room = snapshot.ctx.project.room(req.room)
        if room is None:
            raise HTTPException(status_code=404, detail=f"unknown room {req.room!r}")
        if room.geometry is None:
            raise HTTPException(
                status_code=422, detail=f"room {req.room!r} has no geometry"
            )
        spacing = req.spacing if req.spacing is not None else DEFAULT_SPACING
        try:
            grid, stats = grid_for_room(snapshot.ctx, room, spacing)
        except BadSpacing as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return GridResponse(
            room=room.name,
            grid=GridPayload(
                xs=list(grid.xs),
                ys=list(grid.ys),
                values=[list(row) for row in grid.values],
                spacing=grid.spacing,
                plane_height=grid.plane_height,
            ),
            statistics=StatisticsPayload(
                minimum=stats.minimum,
                average=stats.average,
                maximum=stats.maximum,
                uniformity=stats.uniformity,
            ),
        )

    return app
