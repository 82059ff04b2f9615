"""Test fixtures and configuration."""

import numpy as np
import pytest

from bjq.config import Settings
from bjq.models.grid import Grid, PhaseGrid, Signal
from bjq.services.phase_grid import hermite


@pytest.fixture(scope="session")
def test_settings() -> Settings:
    """Get test settings."""
    return Settings(environment="test", otel_enabled=False, threads=1)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so random symbols are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def signal_grid() -> Grid:
    """Default signal grid N=256, dx=0.125."""
    return Grid(256, 0.125)


@pytest.fixture(scope="session")
def small_grid() -> Grid:
    """Grid for dense operator tests."""
    return Grid(64, 0.3)


@pytest.fixture(scope="session")
def symbol_grid(small_grid) -> PhaseGrid:
    """Phase grid whose xi axis is the dual of the small grid."""
    return PhaseGrid.from_grid(small_grid)


@pytest.fixture(scope="session")
def hermite_signals(signal_grid) -> list[Signal]:
    """psi_0 .. psi_5 on the default grid."""
    return [hermite(n, signal_grid) for n in range(6)]

