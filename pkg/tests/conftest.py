from importlib import resources
from pathlib import Path

import pytest

from luxforge.project import ProjectContext


def data_path(name: str) -> Path:
    return Path(str(resources.files("luxforge").joinpath("data").joinpath(name)))


@pytest.fixture(scope="session")
def duplex_path() -> Path:
    return data_path("duplex.project.json")


@pytest.fixture(scope="session")
def duplex_ctx(duplex_path) -> ProjectContext:
    return ProjectContext.open(duplex_path)
