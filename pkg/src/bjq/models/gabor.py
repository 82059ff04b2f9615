"""Gabor lattice, coefficient arrays and polynomial weights."""

from dataclasses import dataclass

import numpy as np

from bjq.core.errors import InputError


@dataclass(frozen=True)
class WeightSpec:
    """Polynomial weight (1 + |eta|^2 + |y|^2)^(s/2) on the modulation variables."""

    s: float = 0.0

    def __post_init__(self):
        if not np.isfinite(self.s):
            raise InputError("weight order s must be finite")

    def __call__(self, eta, y):
        return (1.0 + np.abs(eta) ** 2 + np.abs(y) ** 2) ** (0.5 * self.s)


@dataclass(frozen=True)
class Lattice:
    """
    Square lattice eps*(m - K/2), m = 0..K-1, on each phase-plane axis.

    The lattice step is `step` base-grid cells, so eps = step * spacing.
    """

    size: int
    step: int
    spacing: float

    @property
    def eps(self) -> float:
        return self.step * self.spacing

    @property
    def points(self) -> np.ndarray:
        return self.eps * (np.arange(self.size) - self.size // 2)

    @property
    def grid_indices(self) -> np.ndarray:
        """Base-grid sample indices that carry lattice points."""
        return np.arange(self.size) * self.step

    @property
    def redundancy(self) -> float:
        """Lattice density per phase plane, 2*pi / eps^2."""
        return 2.0 * np.pi / self.eps**2


@dataclass(frozen=True, eq=False)
class GaborCoefficients:
    """c[jx, jxi, kx, kxi]: translations (jx, jxi) and modulations (kx, kxi) on a Lattice."""

    values: np.ndarray
    lattice: Lattice

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128, copy=True)
        expected = (self.lattice.size,) * 4
        if values.shape != expected:
            raise InputError(f"coefficients have shape {values.shape}, lattice expects {expected}")
        if not np.all(np.isfinite(values)):
            raise InputError("Gabor coefficients contain non-finite values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, lattice: Lattice) -> "GaborCoefficients":
        return cls(np.zeros((lattice.size,) * 4), lattice)

    def with_values(self, values: np.ndarray) -> "GaborCoefficients":
        return GaborCoefficients(values, self.lattice)
