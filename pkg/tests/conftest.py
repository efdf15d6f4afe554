import time

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from limitzeros import raster as rz

import acceptance_log

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def figure_grid():
    """The default 600x400 raster at default orbit settings, with its wall time."""
    t0 = time.perf_counter()
    grid = rz.raster(rz.RasterConfig())
    return grid, time.perf_counter() - t0


def pytest_terminal_summary(terminalreporter):
    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(acceptance_log.LINES):
            terminalreporter.write_line(line)
