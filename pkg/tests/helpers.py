"""Symbol builders shared by unit and integration tests."""

import numpy as np

from bjq.models.gabor import GaborCoefficients
from bjq.models.grid import PhaseGrid, PhaseSpaceArray
from bjq.services.gabor import GaborSystem, gabor_synthesize


def gaussian_symbol(
    grid: PhaseGrid, x0: float = 0.0, xi0: float = 0.0, width: float = 1.0
) -> PhaseSpaceArray:
    """exp(-|X - X0|^2 / (2 width^2)) on a phase grid."""
    return grid.sample(
        lambda x, xi: np.exp(-((x - x0) ** 2 + (xi - xi0) ** 2) / (2.0 * width**2))
    )


def random_symbol(grid: PhaseGrid, rng: np.random.Generator, bumps: int = 3) -> PhaseSpaceArray:
    """Real band-limited symbol: a few Gaussian bumps with random centers, widths and weights."""
    values = np.zeros(grid.shape)
    x, xi = grid.mesh()
    for _ in range(bumps):
        x0, xi0 = rng.uniform(-1.0, 1.0, size=2)
        width = rng.uniform(0.9, 1.3)
        values += rng.normal() * np.exp(-((x - x0) ** 2 + (xi - xi0) ** 2) / (2.0 * width**2))
    return PhaseSpaceArray(grid, values)


def gabor_symbol(system: GaborSystem, rng: np.random.Generator, atoms: int = 4) -> PhaseSpaceArray:
    """Synthesis of a few random complex Gabor coefficients near the center of the lattice."""
    c = GaborCoefficients.zeros(system.lattice)
    values = c.values.astype(np.complex128)
    center = system.lattice.size // 2
    for _ in range(atoms):
        jx, jxi, kx, kxi = rng.integers(center - 2, center + 3, size=4)
        values[jx, jxi, kx, kxi] += rng.normal() + 1j * rng.normal()
    return gabor_synthesize(c.with_values(values), system)
