"""Sampling grids and the sampled-function containers built on them."""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from bjq.core.errors import GridMismatchError, InputError

TWO_PI = 2.0 * np.pi


def _freeze(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=np.complex128, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True)
class Grid:
    """Uniform grid x_j = origin + j*spacing, centered at zero."""

    n_points: int
    spacing: float
    origin: float = field(init=False)

    def __post_init__(self):
        if self.n_points < 8 or self.n_points % 2:
            raise InputError(f"grid needs an even number of points >= 8, got {self.n_points}")
        if not (np.isfinite(self.spacing) and self.spacing > 0):
            raise InputError(f"grid spacing must be positive and finite, got {self.spacing}")
        object.__setattr__(self, "n_points", int(self.n_points))
        object.__setattr__(self, "spacing", float(self.spacing))
        object.__setattr__(self, "origin", -(self.n_points // 2) * self.spacing)

    @cached_property
    def points(self) -> np.ndarray:
        """Sample positions (read-only)."""
        pts = (np.arange(self.n_points) - self.n_points // 2) * self.spacing
        pts.setflags(write=False)
        return pts

    @property
    def half_width(self) -> float:
        return 0.5 * self.n_points * self.spacing

    @property
    def dual_spacing(self) -> float:
        return TWO_PI / (self.n_points * self.spacing)

    def dual(self) -> "Grid":
        """Frequency grid paired with this one by the discrete Fourier transform."""
        return Grid(self.n_points, self.dual_spacing)

    def matches(self, other: "Grid") -> bool:
        return self.n_points == other.n_points and bool(
            np.isclose(self.spacing, other.spacing, rtol=1e-12, atol=0.0)
        )

    def require_match(self, other: "Grid", what: str = "operands") -> None:
        if not self.matches(other):
            raise GridMismatchError(
                f"{what} live on different grids: "
                f"(N={self.n_points}, dx={self.spacing}) vs (N={other.n_points}, dx={other.spacing})"
            )

    def interior_mask(self, fraction: float = 0.5) -> np.ndarray:
        """Mask of the innermost `fraction` of the axis."""
        return np.abs(self.points) <= fraction * self.half_width


@dataclass(frozen=True, eq=False)
class Signal:
    """Complex samples of a function on a Grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = _freeze(self.values)
        if values.shape != (self.grid.n_points,):
            raise InputError(
                f"signal has shape {values.shape}, grid expects ({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(values)):
            raise InputError("signal contains non-finite samples")
        object.__setattr__(self, "values", values)

    def with_values(self, values: np.ndarray) -> "Signal":
        return Signal(self.grid, values)

    def inner(self, other: "Signal") -> complex:
        """Riemann-sum inner product, conjugate-linear in `other`."""
        self.grid.require_match(other.grid, "signals")
        return complex(self.grid.spacing * np.vdot(other.values, self.values))

    def norm(self) -> float:
        return float(np.sqrt(self.grid.spacing) * np.linalg.norm(self.values))


@dataclass(frozen=True)
class PhaseGrid:
    """Product grid on phase space: rows follow x, columns follow xi."""

    x_grid: Grid
    xi_grid: Grid

    @classmethod
    def from_grid(cls, grid: Grid) -> "PhaseGrid":
        """Phase space of signals on `grid`: position axis plus its dual frequency axis."""
        return cls(grid, grid.dual())

    @classmethod
    def symmetric(cls, n_points: int) -> "PhaseGrid":
        """Self-dual grid with equal spacing sqrt(2*pi/N) on both axes."""
        spacing = float(np.sqrt(TWO_PI / n_points))
        return cls(Grid(n_points, spacing), Grid(n_points, spacing))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.x_grid.n_points, self.xi_grid.n_points)

    @property
    def cell_area(self) -> float:
        return self.x_grid.spacing * self.xi_grid.spacing

    def dual(self) -> "PhaseGrid":
        """Fourier-domain grid (eta dual to x, y dual to xi)."""
        return PhaseGrid(self.x_grid.dual(), self.xi_grid.dual())

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x_grid.points, self.xi_grid.points, indexing="ij")

    def matches(self, other: "PhaseGrid") -> bool:
        return self.x_grid.matches(other.x_grid) and self.xi_grid.matches(other.xi_grid)

    def require_match(self, other: "PhaseGrid", what: str = "arrays") -> None:
        if not self.matches(other):
            raise GridMismatchError(f"{what} live on different phase grids")

    def interior_mask(self, fraction: float = 0.5) -> np.ndarray:
        return np.outer(self.x_grid.interior_mask(fraction), self.xi_grid.interior_mask(fraction))

    def sample(self, func) -> "PhaseSpaceArray":
        """Evaluate a vectorized func(x, xi) on the grid."""
        x, xi = self.mesh()
        return PhaseSpaceArray(self, np.broadcast_to(func(x, xi), self.shape))


@dataclass(frozen=True, eq=False)
class PhaseSpaceArray:
    """Complex samples on a PhaseGrid (symbols, distributions, STFTs)."""

    grid: PhaseGrid
    values: np.ndarray

    def __post_init__(self):
        values = _freeze(self.values)
        if values.shape != self.grid.shape:
            raise InputError(f"array has shape {values.shape}, grid expects {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise InputError("phase-space array contains non-finite values")
        object.__setattr__(self, "values", values)

    def with_values(self, values: np.ndarray) -> "PhaseSpaceArray":
        return PhaseSpaceArray(self.grid, values)

    def __add__(self, other: "PhaseSpaceArray") -> "PhaseSpaceArray":
        self.grid.require_match(other.grid)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "PhaseSpaceArray") -> "PhaseSpaceArray":
        self.grid.require_match(other.grid)
        return self.with_values(self.values - other.values)

    def __mul__(self, other) -> "PhaseSpaceArray":
        if isinstance(other, PhaseSpaceArray):
            self.grid.require_match(other.grid)
            return self.with_values(self.values * other.values)
        return self.with_values(self.values * other)

    __rmul__ = __mul__

    def conj(self) -> "PhaseSpaceArray":
        return self.with_values(np.conj(self.values))

    def inner(self, other: "PhaseSpaceArray") -> complex:
        """Riemann-sum inner product, conjugate-linear in `other`."""
        self.grid.require_match(other.grid)
        return complex(self.grid.cell_area * np.vdot(other.values, self.values))

    def norm(self) -> float:
        return float(np.sqrt(self.grid.cell_area) * np.linalg.norm(self.values))

    def max_abs(self, mask: np.ndarray | None = None) -> float:
        values = np.abs(self.values)
        if mask is not None:
            values = values[mask]
        return float(values.max()) if values.size else 0.0
