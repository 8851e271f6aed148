"""Command-line front door for project work and reports.

Exit codes: 0 success, 1 usage error, 2 validation or compute error.
Output files are written atomically (temp file + rename), never partial.
"""

from __future__ import annotations

import os
import sys
import tempfile
from pathlib import Path

import click

from .errors import EngineError
from .lumen_method import default_cu_table
from .point_grid import DEFAULT_SPACING
from .project import Project, ProjectContext, save_project, validate_project
from .reports import (
    CIRCUIT_HEADER,
    ROOM_HEADER,
    format_circuit_row,
    format_room_row,
    grid_csv,
    grid_for_room,
    project_report,
    report_row,
    size_circuits,
)


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        _atomic_write(out, text)


def _positive_spacing(ctx, param, value):
    if value is not None and value <= 0.0:
        raise click.BadParameter("spacing must be positive")
    return value


@click.group()
def cli() -> None:
    """Lighting dimensioning, point grids, circuit sizing, reports."""


@cli.command("new")
@click.argument("path", type=click.Path(path_type=Path))
def cmd_new(path: Path) -> int:
    """Scaffold an empty project file at PATH."""
    if path.exists():
        raise click.ClickException(f"{path} already exists; refusing to overwrite")
    _atomic_write(path, save_project(Project(name=path.stem)))
    click.echo(f"created {path}")
    return 0


@cli.command("validate")
@click.argument("project", type=click.Path(exists=True, dir_okay=False, path_type=Path))
def cmd_validate(project: Path) -> int:
    """Check a project file; exit 0 when free of errors."""
    ctx = ProjectContext.open(project)
    issues = validate_project(ctx.project, ctx.distributions)
    for issue in issues:
        where = f" [{issue.room}]" if issue.room else ""
        click.echo(f"{issue.severity}{where} {issue.code}: {issue.message}")
    if any(issue.severity == "error" for issue in issues):
        return 2
    if not issues:
        click.echo("ok")
    return 0


@cli.command("dimension")
@click.argument("project", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--room", "room_name", default=None, help="Dimension a single room.")
def cmd_dimension(project: Path, room_name: str | None) -> int:
    """Lumen-method dimensioning per room (rooms with geometry)."""
    ctx = ProjectContext.open(project)
    if room_name is not None:
        room = ctx.project.room(room_name)
        if room is None:
            raise click.ClickException(f"unknown room {room_name!r}")
        if room.geometry is None:
            raise click.ClickException(f"room {room_name!r} has no geometry")
        rooms = [room]
    else:
        rooms = [room for room in ctx.project.rooms if room.geometry is not None]
    click.echo(ROOM_HEADER)
    for room in rooms:
        click.echo(format_room_row(report_row(ctx, room)))
    return 0


@cli.command("grid")
@click.argument("project", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--room", "room_name", required=True, help="Room to compute.")
@click.option(
    "--spacing",
    type=float,
    default=DEFAULT_SPACING,
    show_default=True,
    callback=_positive_spacing,
    help="Grid cell size in meters.",
)
@click.option("--out", type=click.Path(path_type=Path), default=None, help="CSV output file.")
def cmd_grid(project: Path, room_name: str, spacing: float, out: Path | None) -> int:
    """Point-by-point illuminance grid as x,y,lux CSV."""
    ctx = ProjectContext.open(project)
    room = ctx.project.room(room_name)
    if room is None:
        raise click.ClickException(f"unknown room {room_name!r}")
    if room.geometry is None:
        raise click.ClickException(f"room {room_name!r} has no geometry")
    grid, _ = grid_for_room(ctx, room, spacing)
    _emit(grid_csv(grid), out)
    return 0


@cli.command("circuits")
@click.argument("project", type=click.Path(exists=True, dir_okay=False, path_type=Path))
def cmd_circuits(project: Path) -> int:
    """Size every circuit and print the sizing table."""
    ctx = ProjectContext.open(project)
    click.echo(CIRCUIT_HEADER)
    for sizing in size_circuits(ctx):
        click.echo(format_circuit_row(sizing))
    return 0


@cli.command("report")
@click.argument("project", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", type=click.Path(path_type=Path), default=None, help="CSV output file.")
def cmd_report(project: Path, out: Path | None) -> int:
    """Full CSV report: room rows plus the circuit section."""
    ctx = ProjectContext.open(project)
    _emit(project_report(ctx), out)
    return 0


@cli.command("serve")
@click.argument("project", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--port", type=int, default=8080, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
def cmd_serve(project: Path, port: int, host: str) -> int:
    """Start the HTTP service on the given project."""
    import uvicorn

    from .service import create_app

    ctx = ProjectContext.open(project)
    default_cu_table()  # fail early if the configured table is unreadable
    uvicorn.run(create_app(ctx), host=host, port=port)
    return 0


def main(argv: list[str] | None = None) -> int:
    """Dispatch argv and map failures onto the exit-code contract."""
    try:
        result = cli.main(args=argv, prog_name="luxforge", standalone_mode=False)
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 2
    except click.exceptions.Abort:
        return 1
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except EngineError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return result if isinstance(result, int) else 0


def entrypoint() -> None:
    sys.exit(main())
